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

// Per-geoclass score vectors: a nearest-centroid softmax baseline and loading
// of externally computed scores.

#ifndef GEOPART_CLASSIFY_H_
#define GEOPART_CLASSIFY_H_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "geopart/dataset.h"
#include "geopart/partition.h"

namespace geopart {

struct ScoreVector {
  std::string set_id;
  std::vector<double> scores;  // indexed by class

  // Throws kInvalidInput unless there are `class_count` finite, non-negative
  // scores that are not all zero.
  void Validate(int32_t class_count) const;
};

class CentroidClassifier {
 public:
  // Centroid of each class is the mean feature of the training records whose
  // cell falls in it.  Throws kInvalidInput on level mismatch or a
  // non-positive temperature, kDegenerate if every class is empty.
  static CentroidClassifier Train(const Dataset& d, const GeoclassSet& s,
                                  double temperature = 1.0);

  const std::string& set_id() const { return set_id_; }
  int32_t class_count() const { return class_count_; }
  int feature_dim() const { return dim_; }
  double temperature() const { return temperature_; }
  std::span<const double> centroid(int32_t c) const {
    return {centroids_.data() + static_cast<size_t>(c) * static_cast<size_t>(dim_),
            static_cast<size_t>(dim_)};
  }
  int64_t class_record_count(int32_t c) const {
    return counts_[static_cast<size_t>(c)];
  }
  bool class_empty(int32_t c) const { return class_record_count(c) == 0; }

  // softmax(-||f - centroid|| / temperature) over non-empty classes; empty
  // classes score exactly 0.  Throws kInvalidInput on dimension mismatch.
  ScoreVector Predict(std::span<const double> feature) const;

  nlohmann::json ToJson() const;
  static CentroidClassifier FromJson(const nlohmann::json& doc);

 private:
  std::string set_id_;
  int32_t class_count_ = 0;
  int dim_ = 0;
  double temperature_ = 1.0;
  std::vector<double> centroids_;  // class-major
  std::vector<int64_t> counts_;
};

struct ExpectedSet {
  std::string set_id;
  int32_t class_count = 0;
};

// Reads JSON Lines {query_id, set_id, scores: [...]}.  Every query must cover
// every expected set exactly once; vectors are returned in `expected` order.
std::map<std::string, std::vector<ScoreVector>> LoadScores(
    std::istream& in, std::span<const ExpectedSet> expected);

std::string ScoreLine(const std::string& query_id, const ScoreVector& v);

}  // namespace geopart

#endif  // GEOPART_CLASSIFY_H_
