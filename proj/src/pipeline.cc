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

#include "geopart/pipeline.h"

#include <istream>

#include <json.hpp>

#include "geopart/errors.h"

namespace geopart {

using nlohmann::json;

std::vector<CentroidClassifier> TrainClassifiers(const Dataset& d,
                                                 std::span<const GeoclassSet> sets,
                                                 double temperature) {
  std::vector<CentroidClassifier> out;
  out.reserve(sets.size());
  for (const GeoclassSet& s : sets) {
    out.push_back(CentroidClassifier::Train(d, s, temperature));
  }
  return out;
}

std::vector<ScoreVector> ScoreQuery(std::span<const CentroidClassifier> classifiers,
                                    std::span<const double> feature) {
  std::vector<ScoreVector> out;
  out.reserve(classifiers.size());
  for (const CentroidClassifier& c : classifiers) out.push_back(c.Predict(feature));
  return out;
}

std::string PredictionLine(const std::string& query_id, const Prediction& p,
                           int level) {
  json cells = json::array();
  for (int64_t c : p.argmax_cells) {
    cells.push_back(CellId::FromLinearIndex(level, c).ToString());
  }
  return json{{"query_id", query_id},
              {"lat", p.location.lat()},
              {"lng", p.location.lng()},
              {"argmax_cells", std::move(cells)},
              {"score_max", p.score_max},
              {"argmax_partitions", p.argmax_partitions},
              {"image_count", p.image_count},
              {"expanded", p.expanded}}
      .dump();
}

std::vector<PredictionRecord> ReadPredictions(std::istream& in) {
  std::vector<PredictionRecord> out;
  std::string line;
  int64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const json j = json::parse(line);
      out.push_back({j.at("query_id").get<std::string>(),
                     GeoPoint(j.at("lat").get<double>(), j.at("lng").get<double>())});
    } catch (const json::exception& e) {
      Fail(ErrorKind::kInvalidInput,
           "prediction line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

std::vector<Prediction> PredictBatch(const Dataset& d, const FinePartitionIndex& index,
                                     std::span<const CentroidClassifier> classifiers,
                                     std::span<const QueryRecord> queries,
                                     FusionMode mode) {
  std::vector<Prediction> out;
  out.reserve(queries.size());
  for (const QueryRecord& q : queries) {
    const std::vector<ScoreVector> scores = ScoreQuery(classifiers, q.feature);
    out.push_back(PredictLocation(FuseScores(scores, index, mode), d));
  }
  return out;
}

EvalReport EvaluateBatch(std::span<const QueryRecord> queries,
                         std::span<const Prediction> predictions,
                         std::span<const double> radii_km) {
  if (queries.size() != predictions.size()) {
    Fail(ErrorKind::kInvalidInput, "query and prediction counts differ");
  }
  std::map<std::string, GeoPoint> pred;
  std::map<std::string, GeoPoint> truth;
  for (size_t i = 0; i < queries.size(); ++i) {
    if (!queries[i].has_truth) {
      Fail(ErrorKind::kInvalidInput,
           "query '" + queries[i].id + "' has no ground-truth location");
    }
    pred[queries[i].id] = predictions[i].location;
    truth[queries[i].id] = queries[i].location;
  }
  return AccuracyAt(pred, truth, radii_km);
}

std::vector<SweepRow> SweepClassCount(const Dataset& train, const RegionGraph& g,
                                      const GenParams& base,
                                      std::span<const int32_t> counts,
                                      std::span<const QueryRecord> queries,
                                      std::span<const double> radii_km,
                                      double temperature) {
  CheckRadii(radii_km);
  std::vector<SweepRow> rows;
  for (int32_t count : counts) {
    GenParams p = base;
    p.target_classes = count;
    p.set_id = base.set_id + "_k" + std::to_string(count);
    const GeoclassSet set = GenerateGeoclassSet(g, p);
    const std::span<const GeoclassSet> sets(&set, 1);
    const FinePartitionIndex index = FinePartitionIndex::Build(sets);
    const auto classifiers = TrainClassifiers(train, sets, temperature);
    const auto preds =
        PredictBatch(train, index, classifiers, queries, FusionMode::kNormalized);
    rows.push_back({count, EvaluateBatch(queries, preds, radii_km)});
  }
  return rows;
}

Comparison CompareFusion(const Dataset& train, std::span<const GeoclassSet> sets,
                         std::span<const QueryRecord> queries,
                         std::span<const double> radii_km, double temperature) {
  Comparison out;
  const auto classifiers = TrainClassifiers(train, sets, temperature);
  for (size_t i = 0; i < sets.size(); ++i) {
    const FinePartitionIndex single = FinePartitionIndex::Build(sets.subspan(i, 1));
    const auto preds = PredictBatch(train, single, std::span(classifiers).subspan(i, 1),
                                    queries, FusionMode::kNormalized);
    out.set_ids.push_back(sets[i].set_id());
    out.per_set.push_back(EvaluateBatch(queries, preds, radii_km));
  }
  const FinePartitionIndex index = FinePartitionIndex::Build(sets);
  out.partition_count = index.partition_count();
  out.normalized = EvaluateBatch(
      queries, PredictBatch(train, index, classifiers, queries, FusionMode::kNormalized),
      radii_km);
  out.simple = EvaluateBatch(
      queries, PredictBatch(train, index, classifiers, queries, FusionMode::kSimple),
      radii_km);
  return out;
}

}  // namespace geopart
