// Copyright 2026 The Geopart Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS-IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "geopart/partition.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <random>

#include "geopart/cells.h"
#include "geopart/errors.h"
#include "geopart/hash.h"
#include "geopart/simd/kernels.h"

namespace geopart {

using nlohmann::json;

namespace {

bool InUnit(double x) { return std::isfinite(x) && x >= 0.0 && x <= 1.0; }

// Live node during generation.  Features are already projected onto the
// selected axes.
struct WorkNode {
  NodeCounts counts;
  std::vector<double> feature;
  Vec3 location_sum;
  Vec3 cell_center_sum;
  GeoPoint center;
  double score = 0.0;
  std::vector<int32_t> adjacency;  // sorted
  std::vector<int32_t> members;    // base-graph node ids
  bool alive = true;
};

double WorkEdgeWeight(const WorkNode& u, const WorkNode& v,
                      const std::array<double, 2>& beta) {
  double w = 0.0;
  if (beta[0] > 0.0) {
    w += beta[0] * VisualDistance(u.feature, u.counts.image_count > 0,
                                  v.feature, v.counts.image_count > 0);
  }
  if (beta[1] > 0.0) w += beta[1] * GeoDistance(u.center, v.center);
  return w;
}

std::vector<double> Project(std::span<const double> f,
                            std::span<const int> dims) {
  std::vector<double> out;
  if (f.empty()) return out;
  out.reserve(dims.size());
  for (int d : dims) out.push_back(f[static_cast<size_t>(d)]);
  return out;
}

json DimsToJson(const GenParams& p) {
  if (p.feature_dims) return *p.feature_dims;
  if (p.feature_dim_count) return *p.feature_dim_count;
  return "all";
}

}  // namespace

void GenParams::Validate() const {
  const std::string where = "set '" + set_id + "': ";
  if (target_classes < 1) {
    Fail(ErrorKind::kInvalidInput, where + "num_geoclasses must be >= 1");
  }
  for (double a : alpha) {
    if (!InUnit(a)) Fail(ErrorKind::kInvalidInput, where + "alpha outside [0,1]");
  }
  for (double b : beta) {
    if (!InUnit(b)) Fail(ErrorKind::kInvalidInput, where + "beta outside [0,1]");
  }
  if (alpha[0] + alpha[1] + alpha[2] <= 0.0) {
    Fail(ErrorKind::kInvalidInput, where + "at least one alpha must be > 0");
  }
  if (beta[0] + beta[1] <= 0.0) {
    Fail(ErrorKind::kInvalidInput, where + "at least one beta must be > 0");
  }
  if (feature_dim_count && *feature_dim_count < 0) {
    Fail(ErrorKind::kInvalidInput, where + "image_feature_dims must be >= 0");
  }
}

std::vector<int> ResolveFeatureDims(const GenParams& p, int dim) {
  std::vector<int> dims;
  if (p.feature_dims) {
    dims = *p.feature_dims;
    for (int d : dims) {
      if (d < 0 || d >= dim) {
        Fail(ErrorKind::kInvalidInput,
             "feature axis " + std::to_string(d) + " outside [0, " +
                 std::to_string(dim) + ")");
      }
    }
    std::sort(dims.begin(), dims.end());
    dims.erase(std::unique(dims.begin(), dims.end()), dims.end());
    return dims;
  }
  dims.resize(static_cast<size_t>(dim));
  std::iota(dims.begin(), dims.end(), 0);
  if (!p.feature_dim_count || *p.feature_dim_count >= dim) return dims;
  // Fisher-Yates with mt19937_64 so the subset is the same on every platform.
  std::mt19937_64 rng(p.seed ^ 0x9e3779b97f4a7c15ULL);
  for (size_t i = dims.size(); i > 1; --i) {
    const auto j = static_cast<size_t>(rng() % i);
    std::swap(dims[i - 1], dims[j]);
  }
  dims.resize(static_cast<size_t>(std::max(0, *p.feature_dim_count)));
  std::sort(dims.begin(), dims.end());
  return dims;
}

json ParamsToJson(const GenParams& p) {
  return {
      {"set_id", p.set_id},
      {"num_geoclasses", p.target_classes},
      {"image_feature_dims", DimsToJson(p)},
      {"alpha", p.alpha},
      {"beta", p.beta},
      {"seed", p.seed},
  };
}

namespace {

GenParams ParamsFromJson(const json& s, size_t index) {
  GenParams p;
  try {
    p.set_id = s.contains("set_id") ? s.at("set_id").get<std::string>()
                                    : "set" + std::to_string(index + 1);
    p.target_classes = s.at("num_geoclasses").get<int32_t>();
    const json& a = s.at("alpha");
    const json& b = s.at("beta");
    if (!a.is_array() || a.size() != 3 || !b.is_array() || b.size() != 2) {
      Fail(ErrorKind::kInvalidInput, "alpha needs 3 values and beta 2");
    }
    for (size_t i = 0; i < 3; ++i) p.alpha[i] = a[i].get<double>();
    for (size_t i = 0; i < 2; ++i) p.beta[i] = b[i].get<double>();
    p.seed = s.value("seed", uint64_t{0});
    if (s.contains("image_feature_dims")) {
      const json& d = s["image_feature_dims"];
      if (d.is_number_integer()) {
        p.feature_dim_count = d.get<int>();
      } else if (d.is_array()) {
        p.feature_dims = d.get<std::vector<int>>();
      } else if (!(d.is_string() && d.get<std::string>() == "all")) {
        Fail(ErrorKind::kInvalidInput,
             "image_feature_dims must be a count, \"all\" or an array");
      }
    }
  } catch (const json::exception& e) {
    Fail(ErrorKind::kInvalidInput,
         "params set " + std::to_string(index + 1) + ": " + e.what());
  }
  p.Validate();
  return p;
}

}  // namespace

std::vector<GenParams> ParseParamsFile(const json& doc) {
  if (!doc.is_object() || !doc.contains("sets") || !doc["sets"].is_array()) {
    Fail(ErrorKind::kInvalidInput, "params file needs a \"sets\" array");
  }
  std::vector<GenParams> out;
  for (size_t i = 0; i < doc["sets"].size(); ++i) {
    out.push_back(ParamsFromJson(doc["sets"][i], i));
    for (size_t j = 0; j + 1 < out.size(); ++j) {
      if (out[j].set_id == out.back().set_id) {
        Fail(ErrorKind::kInvalidInput,
             "duplicate set_id '" + out.back().set_id + "'");
      }
    }
  }
  if (out.empty()) Fail(ErrorKind::kInvalidInput, "params file has no sets");
  return out;
}

double NodeScore(const NodeCounts& n, const std::array<double, 3>& alpha) {
  return alpha[0] * static_cast<double>(n.image_count) +
         alpha[1] * static_cast<double>(n.nonempty_cell_count) +
         alpha[2] * static_cast<double>(n.cell_count);
}

double VisualDistance(std::span<const double> a, bool a_has_images,
                      std::span<const double> b, bool b_has_images) {
  if (!a_has_images || !b_has_images) return 1.0;
  const double ab = simd::Dot(a, b);
  const double aa = simd::Dot(a, a);
  const double bb = simd::Dot(b, b);
  double cosine = 0.0;
  if (aa > 0.0 && bb > 0.0) cosine = ab / (std::sqrt(aa) * std::sqrt(bb));
  cosine = std::clamp(cosine, -1.0, 1.0);
  return 0.5 * (1.0 - cosine);
}

double GeoDistance(const GeoPoint& a, const GeoPoint& b) {
  return std::min(1.0, GeodesicKm(a, b) / kHalfCircumferenceKm);
}

double EdgeWeight(const RegionNode& u, const RegionNode& v,
                  const std::array<double, 2>& beta,
                  std::span<const int> feature_dims) {
  const std::vector<double> fu = Project(u.feature, feature_dims);
  const std::vector<double> fv = Project(v.feature, feature_dims);
  const double vis = VisualDistance(fu, u.image_count > 0, fv, v.image_count > 0);
  const double geo = GeoDistance(NodeCenter(u), NodeCenter(v));
  return beta[0] * vis + beta[1] * geo;
}

GeoclassSet::GeoclassSet(std::string set_id, int level, GenParams params,
                         std::vector<std::vector<int64_t>> classes,
                         std::string dataset_hash)
    : set_id_(std::move(set_id)),
      level_(level),
      params_(std::move(params)),
      classes_(std::move(classes)),
      dataset_hash_(std::move(dataset_hash)) {
  CheckLevel(level);
  const int64_t cell_count = CellId::CellCount(level);
  cell_to_class_.assign(static_cast<size_t>(cell_count), -1);
  for (size_t c = 0; c < classes_.size(); ++c) {
    auto& cells = classes_[c];
    if (cells.empty()) {
      Fail(ErrorKind::kInvalidInput, "set '" + set_id_ + "': empty class");
    }
    std::sort(cells.begin(), cells.end());
    for (int64_t cell : cells) {
      if (cell < 0 || cell >= cell_count) {
        Fail(ErrorKind::kInvalidInput, "set '" + set_id_ + "': cell out of range");
      }
      int32_t& slot = cell_to_class_[static_cast<size_t>(cell)];
      if (slot >= 0) {
        Fail(ErrorKind::kInvalidInput,
             "set '" + set_id_ + "': cell " +
                 CellId::FromLinearIndex(level, cell).ToString() +
                 " belongs to two classes");
      }
      slot = static_cast<int32_t>(c);
    }
  }
  for (int32_t slot : cell_to_class_) {
    if (slot < 0) {
      Fail(ErrorKind::kInvalidInput,
           "set '" + set_id_ + "': classes do not cover every cell");
    }
  }
}

bool GeoclassSet::ClassesConnected() const {
  for (const auto& cells : classes_) {
    if (!CellsEdgeConnected(level_, cells)) return false;
  }
  return true;
}

json GeoclassSet::ToJson() const {
  json classes = json::array();
  for (const auto& cells : classes_) {
    json ids = json::array();
    for (int64_t c : cells) {
      ids.push_back(CellId::FromLinearIndex(level_, c).ToString());
    }
    classes.push_back(std::move(ids));
  }
  json doc = {
      {"format", "geopart-geoclass-set"},
      {"set_id", set_id_},
      {"level", level_},
      {"params", ParamsToJson(params_)},
      {"classes", std::move(classes)},
      {"dataset_hash", dataset_hash_},
  };
  StampContentHash(doc);
  return doc;
}

GeoclassSet GeoclassSet::FromJson(const json& doc) {
  VerifyContentHash(doc, "geoclass set");
  try {
    const int level = doc.at("level").get<int>();
    GenParams params = ParamsFromJson(doc.at("params"), 0);
    std::vector<std::vector<int64_t>> classes;
    for (const json& cls : doc.at("classes")) {
      std::vector<int64_t> cells;
      for (const json& id : cls) {
        const CellId c = CellId::Parse(id.get<std::string>());
        if (c.level() != level) {
          Fail(ErrorKind::kInvalidInput, "cell " + c.ToString() +
                                             " does not match set level");
        }
        cells.push_back(c.linear_index());
      }
      classes.push_back(std::move(cells));
    }
    return GeoclassSet(doc.at("set_id").get<std::string>(), level,
                       std::move(params), std::move(classes),
                       doc.value("dataset_hash", std::string()));
  } catch (const json::exception& e) {
    Fail(ErrorKind::kInvalidInput, "bad geoclass set: " + std::string(e.what()));
  }
}

GeoclassSet GenerateGeoclassSet(const RegionGraph& g, const GenParams& p,
                                const GenerationOptions& options) {
  p.Validate();
  const int32_t n = g.node_count();
  if (p.target_classes > n) {
    Fail(ErrorKind::kInvalidInput,
         "set '" + p.set_id + "': target of " + std::to_string(p.target_classes) +
             " classes exceeds the " + std::to_string(n) + " graph nodes");
  }
  const int32_t components = g.ConnectedComponentCount();
  if (components > p.target_classes) {
    Fail(ErrorKind::kInfeasible,
         "set '" + p.set_id + "': graph has " + std::to_string(components) +
             " connected components, cannot merge down to " +
             std::to_string(p.target_classes) + " classes");
  }
  const std::vector<int> dims = ResolveFeatureDims(p, g.feature_dim());
  if (p.beta[0] > 0.0 && dims.empty()) {
    Fail(ErrorKind::kInvalidInput,
         "set '" + p.set_id + "': visual weight > 0 needs at least one feature axis");
  }

  std::vector<WorkNode> work;
  work.reserve(static_cast<size_t>(2 * n));
  for (int32_t id = 0; id < n; ++id) {
    const RegionNode& src = g.node(id);
    WorkNode w;
    w.counts = {src.image_count, src.nonempty_cell_count, src.cell_count};
    w.feature = Project(src.feature, dims);
    w.location_sum = src.location_sum;
    w.cell_center_sum = src.cell_center_sum;
    w.center = NodeCenter(src);
    w.score = NodeScore(w.counts, p.alpha);
    const auto adj = g.adjacency(id);
    w.adjacency.assign(adj.begin(), adj.end());
    w.members = {id};
    work.push_back(std::move(w));
  }

  using Entry = std::pair<double, int32_t>;  // (score, id): ties -> smaller id
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  for (int32_t id = 0; id < n; ++id) heap.emplace(work[static_cast<size_t>(id)].score, id);

  int32_t live = n;
  while (live > p.target_classes) {
    const int32_t a = heap.top().second;
    heap.pop();
    WorkNode& na = work[static_cast<size_t>(a)];
    if (!na.alive) continue;  // stale entry
    // A node with no neighbors is a whole component; it can only stay as is.
    if (na.adjacency.empty()) continue;

    int32_t b = -1;
    double best = 0.0;
    for (int32_t cand : na.adjacency) {
      const double w = WorkEdgeWeight(na, work[static_cast<size_t>(cand)], p.beta);
      if (b < 0 || w < best) {  // adjacency is sorted: ties keep smaller id
        b = cand;
        best = w;
      }
    }
    WorkNode& nb = work[static_cast<size_t>(b)];

    WorkNode m;
    m.counts = {na.counts.image_count + nb.counts.image_count,
                na.counts.nonempty_cell_count + nb.counts.nonempty_cell_count,
                na.counts.cell_count + nb.counts.cell_count};
    if (na.counts.image_count == 0) {
      m.feature = nb.feature;
    } else if (nb.counts.image_count == 0) {
      m.feature = na.feature;
    } else {
      const double total = static_cast<double>(m.counts.image_count);
      const double wa = static_cast<double>(na.counts.image_count) / total;
      const double wb = static_cast<double>(nb.counts.image_count) / total;
      m.feature.resize(na.feature.size());
      for (size_t i = 0; i < m.feature.size(); ++i) {
        m.feature[i] = wa * na.feature[i] + wb * nb.feature[i];
      }
    }
    m.location_sum = na.location_sum + nb.location_sum;
    m.cell_center_sum = na.cell_center_sum + nb.cell_center_sum;
    m.center = RegionCenter(m.counts.image_count, m.location_sum, m.cell_center_sum);
    m.score = na.score + nb.score;
    m.members = std::move(na.members);
    m.members.insert(m.members.end(), nb.members.begin(), nb.members.end());
    std::set_union(na.adjacency.begin(), na.adjacency.end(), nb.adjacency.begin(),
                   nb.adjacency.end(), std::back_inserter(m.adjacency));
    std::erase_if(m.adjacency, [&](int32_t x) { return x == a || x == b; });

    const auto merged = static_cast<int32_t>(work.size());
    // The new id is the largest, so appending keeps neighbor lists sorted.
    for (int32_t w : m.adjacency) {
      auto& adj = work[static_cast<size_t>(w)].adjacency;
      std::erase_if(adj, [&](int32_t x) { return x == a || x == b; });
      adj.push_back(merged);
    }
    const MergeEvent event{a, b, merged, na.score, nb.score, best};
    na.alive = false;
    nb.alive = false;
    na.adjacency.clear();
    nb.adjacency.clear();
    heap.emplace(m.score, merged);
    work.push_back(std::move(m));
    --live;

    if (options.on_merge) {
      double sum = 0.0;
      for (const WorkNode& w : work) {
        if (w.alive) sum += w.score;
      }
      options.on_merge(event, sum);
    }
  }

  std::vector<std::vector<int64_t>> classes;
  for (const WorkNode& w : work) {
    if (!w.alive) continue;
    std::vector<int64_t> cells;
    for (int32_t member : w.members) {
      const auto mc = g.node(member).cells;
      cells.insert(cells.end(), mc.begin(), mc.end());
    }
    std::sort(cells.begin(), cells.end());
    classes.push_back(std::move(cells));
  }
  std::sort(classes.begin(), classes.end(),
            [](const auto& x, const auto& y) { return x.front() < y.front(); });

  GenParams resolved = p;
  resolved.feature_dims = dims;
  return GeoclassSet(p.set_id, g.level(), std::move(resolved), std::move(classes),
                     options.dataset_hash);
}

}  // namespace geopart
