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

// Geoclass-set generation: greedy hierarchical merging of a region graph.
//
// Starting from the base graph, the live node with the lowest score is merged
// into its adjacent node with the smallest edge weight, and the result becomes
// a new node whose score is the sum of the two.  This repeats until exactly
// `target_classes` nodes remain; those nodes are the classes.

#ifndef GEOPART_PARTITION_H_
#define GEOPART_PARTITION_H_

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "geopart/region_graph.h"

namespace geopart {

struct GenParams {
  std::string set_id;
  int32_t target_classes = 1;
  // Weights for image count, non-empty cell count and total cell count.
  std::array<double, 3> alpha = {1.0, 0.0, 0.0};
  // Weights for visual and geographic distance.
  std::array<double, 2> beta = {1.0, 0.0};
  // Number of feature axes used for the visual distance.  Unset means all of
  // them; otherwise a random axis-aligned subset of this size is drawn from
  // `seed`.  Ignored when `feature_dims` is given explicitly.
  std::optional<int> feature_dim_count;
  std::optional<std::vector<int>> feature_dims;
  uint64_t seed = 0;

  // Throws kInvalidInput when a weight leaves [0, 1], all weights of a group
  // are zero, or target_classes < 1.
  void Validate() const;
};

// Sorted feature axes selected by `p` for a feature space of dimension `dim`.
std::vector<int> ResolveFeatureDims(const GenParams& p, int dim);

// Reads a params file: {"sets": [{"set_id", "num_geoclasses",
// "image_feature_dims", "alpha": [a1,a2,a3], "beta": [b1,b2], "seed"}, ...]}.
// "image_feature_dims" may be an integer count, "all", or an explicit array.
std::vector<GenParams> ParseParamsFile(const nlohmann::json& doc);
nlohmann::json ParamsToJson(const GenParams& p);

struct NodeCounts {
  int64_t image_count = 0;
  int64_t nonempty_cell_count = 0;
  int64_t cell_count = 0;
};

double NodeScore(const NodeCounts& n, const std::array<double, 3>& alpha);

// (1 - cosine similarity) / 2, in [0, 1].  1.0 when either side has no
// images; a zero-norm feature counts as cosine 0.
double VisualDistance(std::span<const double> a, bool a_has_images,
                      std::span<const double> b, bool b_has_images);

// Great-circle distance between centers divided by half the circumference.
double GeoDistance(const GeoPoint& a, const GeoPoint& b);

// beta[0] * visual + beta[1] * geographic, with features restricted to
// `feature_dims`.
double EdgeWeight(const RegionNode& u, const RegionNode& v,
                  const std::array<double, 2>& beta,
                  std::span<const int> feature_dims);

class GeoclassSet {
 public:
  GeoclassSet(std::string set_id, int level, GenParams params,
              std::vector<std::vector<int64_t>> classes,
              std::string dataset_hash = {});

  const std::string& set_id() const { return set_id_; }
  int level() const { return level_; }
  const GenParams& params() const { return params_; }
  int32_t class_count() const { return static_cast<int32_t>(classes_.size()); }
  // Sorted linear cell indices of a class.
  std::span<const int64_t> class_cells(int32_t c) const {
    return classes_[static_cast<size_t>(c)];
  }
  std::span<const int32_t> cell_to_class() const { return cell_to_class_; }
  int32_t ClassOf(int64_t cell) const {
    return cell_to_class_[static_cast<size_t>(cell)];
  }
  const std::string& dataset_hash() const { return dataset_hash_; }

  // Every class edge-connected.
  bool ClassesConnected() const;

  // {set_id, level, params, classes: [[cellid,...],...], dataset_hash,
  //  content_hash}.  Cell ids use the "L{level}/{row}/{col}" form.
  nlohmann::json ToJson() const;
  // Verifies the content hash and that classes partition the level.
  static GeoclassSet FromJson(const nlohmann::json& doc);

 private:
  std::string set_id_;
  int level_;
  GenParams params_;
  std::vector<std::vector<int64_t>> classes_;
  std::vector<int32_t> cell_to_class_;
  std::string dataset_hash_;
};

struct MergeEvent {
  int32_t absorbed;   // the lowest-score node
  int32_t neighbor;   // its nearest neighbor by edge weight
  int32_t merged;     // id of the new node
  double absorbed_score;
  double neighbor_score;
  double edge_weight;
};

struct GenerationOptions {
  // Called after every merge with the event and the sum of live scores.
  std::function<void(const MergeEvent&, double live_score_sum)> on_merge;
  std::string dataset_hash;
};

// Throws kInvalidInput for invalid params or target above the node count, and
// kInfeasible when the graph has more connected components than the target.
// Classes are ordered by their smallest cell index.
GeoclassSet GenerateGeoclassSet(const RegionGraph& g, const GenParams& p,
                                const GenerationOptions& options = {});

}  // namespace geopart

#endif  // GEOPART_PARTITION_H_
