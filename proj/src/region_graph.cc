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

#include "geopart/region_graph.h"

#include <algorithm>
#include <deque>
#include <random>
#include <unordered_set>

#include "geopart/cells.h"
#include "geopart/errors.h"

namespace geopart {

using nlohmann::json;

GeoPoint NodeCenter(const RegionNode& n) {
  return RegionCenter(n.image_count, n.location_sum, n.cell_center_sum);
}

GeoPoint RegionCenter(int64_t image_count, const Vec3& location_sum,
                      const Vec3& cell_center_sum) {
  if (image_count > 0) {
    try {
      return FromCartesian(location_sum);
    } catch (const Error&) {
      // Antipodal image mass; fall through to the cell-center mean.
    }
  }
  try {
    return FromCartesian(cell_center_sum);
  } catch (const Error&) {
    // Cells symmetric about the origin (e.g. the whole sphere).
    return CellCenter(CellId::FromLinearIndex(0, 0));
  }
}

bool CellsEdgeConnected(int level, std::span<const int64_t> cells) {
  if (cells.empty()) return false;
  std::unordered_set<int64_t> members(cells.begin(), cells.end());
  std::unordered_set<int64_t> seen{cells.front()};
  std::deque<int64_t> queue{cells.front()};
  while (!queue.empty()) {
    const int64_t c = queue.front();
    queue.pop_front();
    for (const CellId& n : Neighbors(CellId::FromLinearIndex(level, c))) {
      const int64_t k = n.linear_index();
      if (members.contains(k) && seen.insert(k).second) queue.push_back(k);
    }
  }
  return seen.size() == members.size();
}

RegionGraph RegionGraph::FromAssignment(const Dataset& d,
                                        std::span<const int32_t> owner) {
  const int level = d.level();
  const int64_t cell_count = CellId::CellCount(level);
  if (static_cast<int64_t>(owner.size()) != cell_count) {
    Fail(ErrorKind::kInvalidInput, "owner assignment must cover every cell");
  }
  int32_t max_id = -1;
  for (int32_t o : owner) {
    if (o < 0) Fail(ErrorKind::kInvalidInput, "negative node id in assignment");
    max_id = std::max(max_id, o);
  }

  RegionGraph g;
  g.level_ = level;
  g.feature_dim_ = d.feature_dim();
  g.owner_.assign(owner.begin(), owner.end());
  g.nodes_.resize(static_cast<size_t>(max_id + 1));
  g.adjacency_.resize(g.nodes_.size());

  const auto aggs = d.aggregates();
  for (int64_t c = 0; c < cell_count; ++c) {
    RegionNode& n = g.nodes_[static_cast<size_t>(owner[static_cast<size_t>(c)])];
    const CellAggregate& a = aggs[static_cast<size_t>(c)];
    n.cells.push_back(c);
    ++n.cell_count;
    n.cell_center_sum +=
        ToCartesian(CellCenter(CellId::FromLinearIndex(level, c))).vec();
    if (a.image_count == 0) continue;
    ++n.nonempty_cell_count;
    if (n.feature.empty()) n.feature.assign(a.mean_feature.size(), 0.0);
    const double total = static_cast<double>(n.image_count + a.image_count);
    const double w_old = static_cast<double>(n.image_count) / total;
    const double w_new = static_cast<double>(a.image_count) / total;
    for (size_t i = 0; i < n.feature.size(); ++i) {
      n.feature[i] = w_old * n.feature[i] + w_new * a.mean_feature[i];
    }
    n.image_count += a.image_count;
    n.location_sum += a.location_sum;
  }

  for (size_t id = 0; id < g.nodes_.size(); ++id) {
    const RegionNode& n = g.nodes_[id];
    if (n.cells.empty()) {
      Fail(ErrorKind::kInvalidInput,
           "node " + std::to_string(id) + " owns no cells");
    }
    if (!CellsEdgeConnected(level, n.cells)) {
      Fail(ErrorKind::kInvalidInput,
           "node " + std::to_string(id) + " is not edge-connected");
    }
  }

  for (int64_t c = 0; c < cell_count; ++c) {
    const int32_t a = owner[static_cast<size_t>(c)];
    for (const CellId& nb : Neighbors(CellId::FromLinearIndex(level, c))) {
      const int32_t b = owner[static_cast<size_t>(nb.linear_index())];
      if (a != b) g.adjacency_[static_cast<size_t>(a)].push_back(b);
    }
  }
  for (auto& adj : g.adjacency_) {
    std::sort(adj.begin(), adj.end());
    adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
  }
  return g;
}

int64_t RegionGraph::edge_count() const {
  int64_t twice = 0;
  for (const auto& adj : adjacency_) twice += static_cast<int64_t>(adj.size());
  return twice / 2;
}

int32_t RegionGraph::ConnectedComponentCount() const {
  std::vector<char> seen(nodes_.size(), 0);
  int32_t components = 0;
  std::vector<int32_t> stack;
  for (size_t start = 0; start < nodes_.size(); ++start) {
    if (seen[start]) continue;
    ++components;
    seen[start] = 1;
    stack.push_back(static_cast<int32_t>(start));
    while (!stack.empty()) {
      const int32_t v = stack.back();
      stack.pop_back();
      for (int32_t w : adjacency_[static_cast<size_t>(v)]) {
        if (!seen[static_cast<size_t>(w)]) {
          seen[static_cast<size_t>(w)] = 1;
          stack.push_back(w);
        }
      }
    }
  }
  return components;
}

json RegionGraph::ToJson() const {
  json nodes = json::array();
  for (size_t id = 0; id < nodes_.size(); ++id) {
    const RegionNode& n = nodes_[id];
    nodes.push_back({
        {"id", id},
        {"cells", n.cells},
        {"image_count", n.image_count},
        {"nonempty_cell_count", n.nonempty_cell_count},
        {"cell_count", n.cell_count},
        {"neighbors", adjacency_[id]},
    });
  }
  return {{"level", level_}, {"feature_dim", feature_dim_}, {"nodes", nodes}};
}

RegionGraph BuildBaseGraph(const Dataset& d, uint64_t seed) {
  if (d.records().empty()) {
    Fail(ErrorKind::kInvalidInput, "cannot build a region graph from zero records");
  }
  const int level = d.level();
  const int64_t cell_count = CellId::CellCount(level);
  const auto aggs = d.aggregates();

  std::vector<int32_t> owner(static_cast<size_t>(cell_count), -1);
  int32_t next_id = 0;
  for (int64_t c = 0; c < cell_count; ++c) {
    if (aggs[static_cast<size_t>(c)].image_count > 0) {
      owner[static_cast<size_t>(c)] = next_id++;
    }
  }

  // mt19937_64's output sequence is fixed by the standard, so the modulo
  // pick below is reproducible across standard libraries.
  std::mt19937_64 rng(seed);
  std::vector<int64_t> pending;
  for (int64_t c = 0; c < cell_count; ++c) {
    if (owner[static_cast<size_t>(c)] < 0) pending.push_back(c);
  }
  std::vector<std::pair<int64_t, int32_t>> joins;
  std::vector<int32_t> candidates;
  while (!pending.empty()) {
    joins.clear();
    std::vector<int64_t> still_pending;
    for (int64_t c : pending) {
      candidates.clear();
      for (const CellId& nb : Neighbors(CellId::FromLinearIndex(level, c))) {
        const int32_t o = owner[static_cast<size_t>(nb.linear_index())];
        if (o >= 0) candidates.push_back(o);
      }
      if (candidates.empty()) {
        still_pending.push_back(c);
        continue;
      }
      const auto pick = static_cast<size_t>(rng() % candidates.size());
      joins.emplace_back(c, candidates[pick]);
    }
    // Joins take effect after the round so a round only sees prior owners.
    for (const auto& [c, o] : joins) owner[static_cast<size_t>(c)] = o;
    pending.swap(still_pending);
  }
  return RegionGraph::FromAssignment(d, owner);
}

}  // namespace geopart
