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

// Combinatorial partitioning and score fusion.
//
// Overlaying several geoclass sets of the same level splits the sphere into
// fine partitions: the non-empty intersections of one class from each set,
// identified by their tuple of class indices.  Classifier scores are spread
// onto cells and summed across sets, optionally normalizing each classifier
// so its cell-weighted score mass is exactly 1.  The prediction is the mean
// training-image location over the highest-scoring cells.

#ifndef GEOPART_FUSION_H_
#define GEOPART_FUSION_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "geopart/classify.h"
#include "geopart/dataset.h"
#include "geopart/geo.h"
#include "geopart/partition.h"

namespace geopart {

class FinePartitionIndex {
 public:
  // Partition ids follow the first cell (in linear order) of each tuple.
  // Throws kInvalidInput for an empty list or mismatched levels.
  static FinePartitionIndex Build(std::span<const GeoclassSet> sets);

  int level() const { return level_; }
  int32_t set_count() const { return static_cast<int32_t>(set_ids_.size()); }
  const std::string& set_id(int32_t i) const { return set_ids_[static_cast<size_t>(i)]; }
  int32_t class_count(int32_t set) const {
    return static_cast<int32_t>(class_cell_counts_[static_cast<size_t>(set)].size());
  }
  int32_t partition_count() const { return static_cast<int32_t>(partition_cells_.size()); }

  // Class index of `partition` in `set`.
  int32_t PartitionClass(int32_t partition, int32_t set) const {
    return partition_class_[static_cast<size_t>(set)][static_cast<size_t>(partition)];
  }
  std::vector<int32_t> PartitionTuple(int32_t partition) const;
  // Per-set column of class indices over partitions (gather table layout).
  std::span<const int32_t> partition_class_column(int32_t set) const {
    return partition_class_[static_cast<size_t>(set)];
  }
  std::span<const int64_t> partition_cells(int32_t p) const {
    return partition_cells_[static_cast<size_t>(p)];
  }
  std::span<const int32_t> cell_to_partition() const { return cell_to_partition_; }
  // Total cells (empty ones included) per class of a set.
  std::span<const double> class_cell_counts(int32_t set) const {
    return class_cell_counts_[static_cast<size_t>(set)];
  }
  // Fine partitions overlapping class `c` of `set`.
  std::span<const int32_t> class_partitions(int32_t set, int32_t c) const {
    return class_partitions_[static_cast<size_t>(set)][static_cast<size_t>(c)];
  }
  // Content hashes of the input sets, for cache validation.
  std::span<const std::string> set_hashes() const { return set_hashes_; }

  nlohmann::json ToJson() const;
  static FinePartitionIndex FromJson(const nlohmann::json& doc);

 private:
  void BuildDerived();

  int level_ = 0;
  std::vector<std::string> set_ids_;
  std::vector<std::string> set_hashes_;
  std::vector<std::vector<int32_t>> partition_class_;  // [set][partition]
  std::vector<std::vector<int64_t>> partition_cells_;
  std::vector<int32_t> cell_to_partition_;
  std::vector<std::vector<double>> class_cell_counts_;
  std::vector<std::vector<std::vector<int32_t>>> class_partitions_;
};

enum class FusionMode { kNormalized, kSimple };

std::string_view FusionModeName(FusionMode m);
// "normalized" or "simple"; throws kInvalidInput otherwise.
FusionMode ParseFusionMode(std::string_view name);

// Fused scores.  Constant on each fine partition, so only one value per
// partition is stored.  Keeps a pointer to the index, which must outlive it.
class CellScoreField {
 public:
  CellScoreField(const FinePartitionIndex* index, std::vector<double> partition_scores)
      : index_(index), partition_scores_(std::move(partition_scores)) {}

  const FinePartitionIndex& index() const { return *index_; }
  std::span<const double> partition_scores() const { return partition_scores_; }
  double CellScore(int64_t cell) const {
    return partition_scores_[static_cast<size_t>(
        index_->cell_to_partition()[static_cast<size_t>(cell)])];
  }
  // Dense per-cell scores.
  std::vector<double> CellScores() const;
  double Total() const;

 private:
  const FinePartitionIndex* index_;
  std::vector<double> partition_scores_;
};

// One vector per set, in index order.  Normalized mode divides each
// classifier's class score by sum_c score(c) * cells(c); simple mode sums raw
// class scores.  Throws kInvalidInput on count/length mismatch or a zero
// denominator.
CellScoreField FuseScores(std::span<const ScoreVector> vectors,
                          const FinePartitionIndex& index, FusionMode mode);

// Cells within this absolute distance of the maximum score tie for argmax.
inline constexpr double kArgmaxTolerance = 1e-12;

struct Prediction {
  GeoPoint location;
  double score_max = 0.0;
  // Cells of the argmax set (after any expansion), sorted.
  std::vector<int64_t> argmax_cells;
  // Partitions tied at the maximum, before any expansion.
  int32_t argmax_partitions = 0;
  int64_t image_count = 0;
  // True when the tied cells held no training images and lower-scoring
  // partitions were added in descending score order.
  bool expanded = false;
};

// Throws kInvalidInput if field and dataset levels differ, kDegenerate if the
// dataset has no images at all or their mean location is undefined.
Prediction PredictLocation(const CellScoreField& field, const Dataset& d);

}  // namespace geopart

#endif  // GEOPART_FUSION_H_
