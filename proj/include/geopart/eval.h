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

// Accuracy at distance thresholds: the fraction of queries whose prediction
// lies strictly closer than r kilometers to the ground truth.

#ifndef GEOPART_EVAL_H_
#define GEOPART_EVAL_H_

#include <map>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "geopart/geo.h"

namespace geopart {

inline const std::vector<double>& DefaultRadiiKm() {
  static const std::vector<double> kRadii = {1, 5, 10, 25, 50, 100, 200, 750, 2500};
  return kRadii;
}

struct EvalReport {
  std::vector<double> radii_km;
  std::vector<double> accuracy;      // parallel to radii_km
  std::vector<std::string> query_ids;  // sorted
  std::vector<double> distances_km;  // parallel to query_ids

  size_t query_count() const { return query_ids.size(); }
  double AccuracyAt(double radius_km) const;

  nlohmann::json ToJson() const;
};

// Throws kInvalidInput when radii are not strictly increasing and positive.
void CheckRadii(std::span<const double> radii_km);

// Throws kInvalidInput when the key sets differ or are empty.
EvalReport AccuracyAt(const std::map<std::string, GeoPoint>& predictions,
                      const std::map<std::string, GeoPoint>& truth,
                      std::span<const double> radii_km);

// Recomputes accuracies from stored distances.
EvalReport ReportFromDistances(std::vector<std::string> query_ids,
                               std::vector<double> distances_km,
                               std::span<const double> radii_km);

// "model,1km,5km,..." header line.
std::string CsvHeader(std::span<const double> radii_km, std::string_view first = "model");
// One row of percentages with one decimal, "label,4.8,11.6,...".
std::string CsvRow(std::string_view label, const EvalReport& r);

}  // namespace geopart

#endif  // GEOPART_EVAL_H_
