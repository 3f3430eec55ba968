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

#include "geopart/eval.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "geopart/errors.h"

namespace geopart {

using nlohmann::json;

void CheckRadii(std::span<const double> radii_km) {
  if (radii_km.empty()) Fail(ErrorKind::kInvalidInput, "no radii given");
  for (size_t i = 0; i < radii_km.size(); ++i) {
    if (!(radii_km[i] > 0.0) || !std::isfinite(radii_km[i]) ||
        (i > 0 && !(radii_km[i] > radii_km[i - 1]))) {
      Fail(ErrorKind::kInvalidInput, "radii must be positive and strictly increasing");
    }
  }
}

EvalReport ReportFromDistances(std::vector<std::string> query_ids,
                               std::vector<double> distances_km,
                               std::span<const double> radii_km) {
  CheckRadii(radii_km);
  if (query_ids.empty()) Fail(ErrorKind::kInvalidInput, "empty query set");
  if (query_ids.size() != distances_km.size()) {
    Fail(ErrorKind::kInvalidInput, "ids and distances differ in length");
  }
  EvalReport r;
  r.radii_km.assign(radii_km.begin(), radii_km.end());
  std::vector<size_t> order(query_ids.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return query_ids[a] < query_ids[b]; });
  for (size_t i : order) {
    r.query_ids.push_back(std::move(query_ids[i]));
    r.distances_km.push_back(distances_km[i]);
  }
  const auto m = static_cast<double>(r.distances_km.size());
  for (double radius : r.radii_km) {
    size_t hits = 0;
    for (double d : r.distances_km) hits += d < radius ? 1 : 0;
    r.accuracy.push_back(static_cast<double>(hits) / m);
  }
  return r;
}

EvalReport AccuracyAt(const std::map<std::string, GeoPoint>& predictions,
                      const std::map<std::string, GeoPoint>& truth,
                      std::span<const double> radii_km) {
  if (predictions.empty()) Fail(ErrorKind::kInvalidInput, "empty query set");
  if (predictions.size() != truth.size()) {
    Fail(ErrorKind::kInvalidInput,
         "prediction and truth query sets differ in size (" +
             std::to_string(predictions.size()) + " vs " +
             std::to_string(truth.size()) + ")");
  }
  std::vector<std::string> ids;
  std::vector<double> distances;
  for (const auto& [id, pred] : predictions) {
    const auto it = truth.find(id);
    if (it == truth.end()) {
      Fail(ErrorKind::kInvalidInput, "query '" + id + "' has no ground truth");
    }
    ids.push_back(id);
    distances.push_back(GeodesicKm(it->second, pred));
  }
  return ReportFromDistances(std::move(ids), std::move(distances), radii_km);
}

double EvalReport::AccuracyAt(double radius_km) const {
  for (size_t i = 0; i < radii_km.size(); ++i) {
    if (radii_km[i] == radius_km) return accuracy[i];
  }
  Fail(ErrorKind::kInvalidInput, "radius not in report");
}

json EvalReport::ToJson() const {
  json acc = json::array();
  for (size_t i = 0; i < radii_km.size(); ++i) {
    acc.push_back({{"radius_km", radii_km[i]}, {"accuracy", accuracy[i]}});
  }
  json per_query = json::array();
  for (size_t i = 0; i < query_ids.size(); ++i) {
    per_query.push_back({{"query_id", query_ids[i]}, {"distance_km", distances_km[i]}});
  }
  return {{"query_count", query_ids.size()},
          {"accuracy", std::move(acc)},
          {"queries", std::move(per_query)}};
}

namespace {

std::string FormatRadius(double r) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%gkm", r);
  return buf;
}

}  // namespace

std::string CsvHeader(std::span<const double> radii_km, std::string_view first) {
  std::string out(first);
  for (double r : radii_km) out += "," + FormatRadius(r);
  return out;
}

std::string CsvRow(std::string_view label, const EvalReport& r) {
  std::string out(label);
  for (double a : r.accuracy) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), ",%.1f", 100.0 * a);
    out += buf;
  }
  return out;
}

}  // namespace geopart
