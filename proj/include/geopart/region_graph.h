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

// Region adjacency graph over the cells of one level.  Nodes own disjoint,
// edge-connected sets of cells that together cover the whole sphere; edges
// join nodes that own adjacent cells.

#ifndef GEOPART_REGION_GRAPH_H_
#define GEOPART_REGION_GRAPH_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "geopart/dataset.h"
#include "geopart/geo.h"

namespace geopart {

struct RegionNode {
  std::vector<int64_t> cells;  // sorted linear cell indices
  int64_t image_count = 0;
  int64_t nonempty_cell_count = 0;
  int64_t cell_count = 0;
  // Image-count-weighted mean feature; empty iff image_count == 0.
  std::vector<double> feature;
  Vec3 location_sum;
  // Sum of unit vectors of owned cell centers (image-free fallback center).
  Vec3 cell_center_sum;
};

// Center used for geographic distances: the mean image location when the
// node holds images, otherwise the spherical mean of its cell centers.
GeoPoint NodeCenter(const RegionNode& n);
GeoPoint RegionCenter(int64_t image_count, const Vec3& location_sum,
                      const Vec3& cell_center_sum);

class RegionGraph {
 public:
  // Builds nodes from an arbitrary cell -> node assignment over all cells of
  // d.level().  Node ids must be dense in [0, max].  Aggregates come from d.
  // Throws kInvalidInput if an owner is out of range, a node is empty, or a
  // node's cells are not edge-connected.
  static RegionGraph FromAssignment(const Dataset& d,
                                    std::span<const int32_t> owner);

  int level() const { return level_; }
  int feature_dim() const { return feature_dim_; }
  int32_t node_count() const { return static_cast<int32_t>(nodes_.size()); }
  int64_t edge_count() const;

  const RegionNode& node(int32_t id) const { return nodes_[static_cast<size_t>(id)]; }
  std::span<const RegionNode> nodes() const { return nodes_; }
  // Sorted neighbor ids.
  std::span<const int32_t> adjacency(int32_t id) const {
    return adjacency_[static_cast<size_t>(id)];
  }
  // Node owning each cell, by linear index.
  std::span<const int32_t> owner() const { return owner_; }

  int32_t ConnectedComponentCount() const;

  nlohmann::json ToJson() const;

 private:
  int level_ = 0;
  int feature_dim_ = 0;
  std::vector<RegionNode> nodes_;
  std::vector<std::vector<int32_t>> adjacency_;
  std::vector<int32_t> owner_;
};

// One node per non-empty cell (ordered by linear cell index).  Empty cells are
// then absorbed in rounds: each round, every unassigned cell with at least one
// assigned neighbor joins the node of a uniformly chosen assigned neighbor
// cell, using a generator seeded with `seed`.  Throws kInvalidInput when the
// dataset has no records.
RegionGraph BuildBaseGraph(const Dataset& d, uint64_t seed);

// True iff `cells` (linear indices at `level`) form one edge-connected piece.
bool CellsEdgeConnected(int level, std::span<const int64_t> cells);

}  // namespace geopart

#endif  // GEOPART_REGION_GRAPH_H_
