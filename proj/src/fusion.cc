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

#include "geopart/fusion.h"

#include <algorithm>
#include <map>
#include <numeric>

#include "geopart/cells.h"
#include "geopart/errors.h"
#include "geopart/hash.h"
#include "geopart/simd/kernels.h"

namespace geopart {

using nlohmann::json;

FinePartitionIndex FinePartitionIndex::Build(std::span<const GeoclassSet> sets) {
  if (sets.empty()) {
    Fail(ErrorKind::kInvalidInput, "fine partition index needs at least one set");
  }
  FinePartitionIndex idx;
  idx.level_ = sets.front().level();
  for (const GeoclassSet& s : sets) {
    if (s.level() != idx.level_) {
      Fail(ErrorKind::kInvalidInput,
           "set '" + s.set_id() + "' is at level " + std::to_string(s.level()) +
               ", expected " + std::to_string(idx.level_));
    }
    idx.set_ids_.push_back(s.set_id());
    idx.set_hashes_.push_back(JsonContentHash(s.ToJson()));
  }
  const int64_t cell_count = CellId::CellCount(idx.level_);
  idx.partition_class_.resize(sets.size());
  idx.cell_to_partition_.resize(static_cast<size_t>(cell_count));

  std::map<std::vector<int32_t>, int32_t> partition_of;
  std::vector<int32_t> tuple(sets.size());
  for (int64_t c = 0; c < cell_count; ++c) {
    for (size_t i = 0; i < sets.size(); ++i) tuple[i] = sets[i].ClassOf(c);
    auto [it, inserted] =
        partition_of.emplace(tuple, static_cast<int32_t>(idx.partition_cells_.size()));
    if (inserted) {
      idx.partition_cells_.emplace_back();
      for (size_t i = 0; i < sets.size(); ++i) idx.partition_class_[i].push_back(tuple[i]);
    }
    idx.partition_cells_[static_cast<size_t>(it->second)].push_back(c);
    idx.cell_to_partition_[static_cast<size_t>(c)] = it->second;
  }
  idx.class_cell_counts_.resize(sets.size());
  for (size_t i = 0; i < sets.size(); ++i) {
    idx.class_cell_counts_[i].assign(static_cast<size_t>(sets[i].class_count()), 0.0);
  }
  idx.BuildDerived();
  return idx;
}

void FinePartitionIndex::BuildDerived() {
  const size_t n_sets = set_ids_.size();
  class_partitions_.assign(n_sets, {});
  for (size_t i = 0; i < n_sets; ++i) {
    auto& counts = class_cell_counts_[i];
    std::fill(counts.begin(), counts.end(), 0.0);
    class_partitions_[i].assign(counts.size(), {});
    for (size_t p = 0; p < partition_cells_.size(); ++p) {
      const auto c = static_cast<size_t>(partition_class_[i][p]);
      counts[c] += static_cast<double>(partition_cells_[p].size());
      class_partitions_[i][c].push_back(static_cast<int32_t>(p));
    }
  }
}

std::vector<int32_t> FinePartitionIndex::PartitionTuple(int32_t partition) const {
  std::vector<int32_t> t;
  t.reserve(partition_class_.size());
  for (const auto& column : partition_class_) {
    t.push_back(column[static_cast<size_t>(partition)]);
  }
  return t;
}

json FinePartitionIndex::ToJson() const {
  json sets = json::array();
  for (size_t i = 0; i < set_ids_.size(); ++i) {
    sets.push_back({{"set_id", set_ids_[i]},
                    {"set_hash", set_hashes_[i]},
                    {"class_count", class_cell_counts_[i].size()}});
  }
  json partitions = json::array();
  for (int32_t p = 0; p < partition_count(); ++p) {
    json cells = json::array();
    for (int64_t c : partition_cells(p)) {
      cells.push_back(CellId::FromLinearIndex(level_, c).ToString());
    }
    partitions.push_back({{"tuple", PartitionTuple(p)}, {"cells", std::move(cells)}});
  }
  json doc = {{"format", "geopart-fine-index"},
              {"level", level_},
              {"sets", std::move(sets)},
              {"partitions", std::move(partitions)}};
  StampContentHash(doc);
  return doc;
}

FinePartitionIndex FinePartitionIndex::FromJson(const json& doc) {
  VerifyContentHash(doc, "fine partition index");
  FinePartitionIndex idx;
  try {
    idx.level_ = doc.at("level").get<int>();
    CheckLevel(idx.level_);
    for (const json& s : doc.at("sets")) {
      idx.set_ids_.push_back(s.at("set_id").get<std::string>());
      idx.set_hashes_.push_back(s.at("set_hash").get<std::string>());
      idx.class_cell_counts_.emplace_back(s.at("class_count").get<size_t>(), 0.0);
    }
    const size_t n_sets = idx.set_ids_.size();
    idx.partition_class_.resize(n_sets);
    const int64_t cell_count = CellId::CellCount(idx.level_);
    idx.cell_to_partition_.assign(static_cast<size_t>(cell_count), -1);
    for (const json& p : doc.at("partitions")) {
      const auto tuple = p.at("tuple").get<std::vector<int32_t>>();
      if (tuple.size() != n_sets) {
        Fail(ErrorKind::kInvalidInput, "index tuple length != set count");
      }
      const auto pid = static_cast<int32_t>(idx.partition_cells_.size());
      for (size_t i = 0; i < n_sets; ++i) {
        if (tuple[i] < 0 ||
            tuple[i] >= static_cast<int32_t>(idx.class_cell_counts_[i].size())) {
          Fail(ErrorKind::kInvalidInput, "index tuple class out of range");
        }
        idx.partition_class_[i].push_back(tuple[i]);
      }
      std::vector<int64_t> cells;
      for (const json& id : p.at("cells")) {
        const CellId c = CellId::Parse(id.get<std::string>());
        if (c.level() != idx.level_) {
          Fail(ErrorKind::kInvalidInput, "index cell level mismatch");
        }
        int32_t& slot = idx.cell_to_partition_[static_cast<size_t>(c.linear_index())];
        if (slot >= 0) Fail(ErrorKind::kInvalidInput, "index cell listed twice");
        slot = pid;
        cells.push_back(c.linear_index());
      }
      idx.partition_cells_.push_back(std::move(cells));
    }
  } catch (const json::exception& e) {
    Fail(ErrorKind::kInvalidInput, "bad fine partition index: " + std::string(e.what()));
  }
  for (int32_t slot : idx.cell_to_partition_) {
    if (slot < 0) Fail(ErrorKind::kInvalidInput, "index does not cover every cell");
  }
  idx.BuildDerived();
  return idx;
}

std::string_view FusionModeName(FusionMode m) {
  return m == FusionMode::kNormalized ? "normalized" : "simple";
}

FusionMode ParseFusionMode(std::string_view name) {
  if (name == "normalized") return FusionMode::kNormalized;
  if (name == "simple") return FusionMode::kSimple;
  Fail(ErrorKind::kInvalidInput,
       "fusion mode must be 'normalized' or 'simple', got '" + std::string(name) + "'");
}

std::vector<double> CellScoreField::CellScores() const {
  const auto owner = index_->cell_to_partition();
  std::vector<double> out(owner.size());
  for (size_t c = 0; c < owner.size(); ++c) {
    out[c] = partition_scores_[static_cast<size_t>(owner[c])];
  }
  return out;
}

double CellScoreField::Total() const {
  double total = 0.0;
  for (int32_t p = 0; p < index_->partition_count(); ++p) {
    total += partition_scores_[static_cast<size_t>(p)] *
             static_cast<double>(index_->partition_cells(p).size());
  }
  return total;
}

CellScoreField FuseScores(std::span<const ScoreVector> vectors,
                          const FinePartitionIndex& index, FusionMode mode) {
  if (static_cast<int32_t>(vectors.size()) != index.set_count()) {
    Fail(ErrorKind::kInvalidInput,
         "expected " + std::to_string(index.set_count()) + " score vectors, got " +
             std::to_string(vectors.size()));
  }
  std::vector<double> scores(static_cast<size_t>(index.partition_count()), 0.0);
  std::vector<double> table;
  for (int32_t i = 0; i < index.set_count(); ++i) {
    const ScoreVector& v = vectors[static_cast<size_t>(i)];
    if (v.set_id != index.set_id(i)) {
      Fail(ErrorKind::kInvalidInput, "score vector " + std::to_string(i) +
                                         " is for set '" + v.set_id +
                                         "', expected '" + index.set_id(i) + "'");
    }
    if (static_cast<int32_t>(v.scores.size()) != index.class_count(i)) {
      Fail(ErrorKind::kInvalidInput,
           "set '" + v.set_id + "': expected " + std::to_string(index.class_count(i)) +
               " scores, got " + std::to_string(v.scores.size()));
    }
    table = v.scores;
    if (mode == FusionMode::kNormalized) {
      const double denom = simd::Dot(v.scores, index.class_cell_counts(i));
      if (!(denom > 0.0)) {
        Fail(ErrorKind::kInvalidInput,
             "set '" + v.set_id + "': score mass is zero, cannot normalize");
      }
      for (double& t : table) t /= denom;
    }
    simd::GatherAccumulate(table, index.partition_class_column(i), scores);
  }
  return CellScoreField(&index, std::move(scores));
}

Prediction PredictLocation(const CellScoreField& field, const Dataset& d) {
  const FinePartitionIndex& idx = field.index();
  if (idx.level() != d.level()) {
    Fail(ErrorKind::kInvalidInput, "score field level " + std::to_string(idx.level()) +
                                       " != dataset level " + std::to_string(d.level()));
  }
  const auto scores = field.partition_scores();
  if (scores.empty()) Fail(ErrorKind::kInvalidInput, "empty score field");

  std::vector<int32_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int32_t a, int32_t b) {
    return scores[static_cast<size_t>(a)] > scores[static_cast<size_t>(b)];
  });

  Prediction out;
  out.score_max = scores[static_cast<size_t>(order.front())];
  const auto aggs = d.aggregates();
  Vec3 sum;
  size_t taken = 0;
  auto take = [&](int32_t p) {
    for (int64_t c : idx.partition_cells(p)) {
      const CellAggregate& a = aggs[static_cast<size_t>(c)];
      out.argmax_cells.push_back(c);
      out.image_count += a.image_count;
      sum += a.location_sum;
    }
    ++taken;
  };
  while (taken < order.size() &&
         scores[static_cast<size_t>(order[taken])] >= out.score_max - kArgmaxTolerance) {
    take(order[taken]);
  }
  out.argmax_partitions = static_cast<int32_t>(taken);
  while (out.image_count == 0 && taken < order.size()) {
    out.expanded = true;
    take(order[taken]);
  }
  if (out.image_count == 0) {
    Fail(ErrorKind::kDegenerate, "dataset holds no training images");
  }
  std::sort(out.argmax_cells.begin(), out.argmax_cells.end());
  out.location = FromCartesian(sum);
  return out;
}

}  // namespace geopart
