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

// End-to-end helpers: train one classifier per set, fuse their scores for a
// batch of queries, evaluate, and sweep the class count of a single set.

#ifndef GEOPART_PIPELINE_H_
#define GEOPART_PIPELINE_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "geopart/classify.h"
#include "geopart/dataset.h"
#include "geopart/eval.h"
#include "geopart/fusion.h"
#include "geopart/partition.h"
#include "geopart/region_graph.h"

namespace geopart {

std::vector<CentroidClassifier> TrainClassifiers(const Dataset& d,
                                                 std::span<const GeoclassSet> sets,
                                                 double temperature);

std::vector<ScoreVector> ScoreQuery(std::span<const CentroidClassifier> classifiers,
                                    std::span<const double> feature);

// {query_id, lat, lng, argmax_cells, score_max, argmax_partitions,
//  image_count, expanded}
std::string PredictionLine(const std::string& query_id, const Prediction& p,
                           int level);

struct PredictionRecord {
  std::string query_id;
  GeoPoint location;
};
// Reads prediction JSON Lines (only query_id, lat and lng are used).
std::vector<PredictionRecord> ReadPredictions(std::istream& in);

// Predictions for every query (features required), one per query in order.
std::vector<Prediction> PredictBatch(const Dataset& d, const FinePartitionIndex& index,
                                     std::span<const CentroidClassifier> classifiers,
                                     std::span<const QueryRecord> queries,
                                     FusionMode mode);

// Evaluates a batch of predictions against the queries' ground truth.
EvalReport EvaluateBatch(std::span<const QueryRecord> queries,
                         std::span<const Prediction> predictions,
                         std::span<const double> radii_km);

struct SweepRow {
  int32_t class_count = 0;
  EvalReport report;
};

// For each count: generate one set from `g` with `base` (target replaced),
// train the centroid baseline, predict every query with that single set and
// evaluate.
std::vector<SweepRow> SweepClassCount(const Dataset& train, const RegionGraph& g,
                                      const GenParams& base,
                                      std::span<const int32_t> counts,
                                      std::span<const QueryRecord> queries,
                                      std::span<const double> radii_km,
                                      double temperature = 1.0);

// Accuracy of every single-set classifier and of both fusion modes.
struct Comparison {
  std::vector<std::string> set_ids;
  std::vector<EvalReport> per_set;
  EvalReport normalized;
  EvalReport simple;
  int32_t partition_count = 0;
};
Comparison CompareFusion(const Dataset& train, std::span<const GeoclassSet> sets,
                         std::span<const QueryRecord> queries,
                         std::span<const double> radii_km, double temperature = 1.0);

}  // namespace geopart

#endif  // GEOPART_PIPELINE_H_
