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

#include "geopart/classify.h"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>

#include "geopart/errors.h"
#include "geopart/hash.h"
#include "geopart/simd/kernels.h"

namespace geopart {

using nlohmann::json;

void ScoreVector::Validate(int32_t class_count) const {
  if (static_cast<int64_t>(scores.size()) != class_count) {
    Fail(ErrorKind::kInvalidInput,
         "set '" + set_id + "': expected " + std::to_string(class_count) +
             " scores, got " + std::to_string(scores.size()));
  }
  bool any_positive = false;
  for (double s : scores) {
    if (!std::isfinite(s) || s < 0.0) {
      Fail(ErrorKind::kInvalidInput,
           "set '" + set_id + "': scores must be finite and non-negative");
    }
    any_positive = any_positive || s > 0.0;
  }
  if (!any_positive) {
    Fail(ErrorKind::kInvalidInput, "set '" + set_id + "': all scores are zero");
  }
}

CentroidClassifier CentroidClassifier::Train(const Dataset& d,
                                             const GeoclassSet& s,
                                             double temperature) {
  if (d.level() != s.level()) {
    Fail(ErrorKind::kInvalidInput, "dataset level " + std::to_string(d.level()) +
                                       " != set level " + std::to_string(s.level()));
  }
  if (!(temperature > 0.0) || !std::isfinite(temperature)) {
    Fail(ErrorKind::kInvalidInput, "temperature must be positive");
  }
  CentroidClassifier c;
  c.set_id_ = s.set_id();
  c.class_count_ = s.class_count();
  c.dim_ = d.feature_dim();
  c.temperature_ = temperature;
  c.centroids_.assign(static_cast<size_t>(c.class_count_) * static_cast<size_t>(c.dim_), 0.0);
  c.counts_.assign(static_cast<size_t>(c.class_count_), 0);

  // Sums of per-cell means weighted by cell counts reproduce the per-record
  // mean without revisiting records.
  const auto aggs = d.aggregates();
  for (size_t cell = 0; cell < aggs.size(); ++cell) {
    const CellAggregate& a = aggs[cell];
    if (a.image_count == 0) continue;
    const auto k = static_cast<size_t>(s.ClassOf(static_cast<int64_t>(cell)));
    const auto w = static_cast<double>(a.image_count);
    double* dst = c.centroids_.data() + k * static_cast<size_t>(c.dim_);
    for (int i = 0; i < c.dim_; ++i) dst[i] += w * a.mean_feature[static_cast<size_t>(i)];
    c.counts_[k] += a.image_count;
  }
  bool any = false;
  for (size_t k = 0; k < c.counts_.size(); ++k) {
    if (c.counts_[k] == 0) continue;
    any = true;
    const double inv = 1.0 / static_cast<double>(c.counts_[k]);
    double* dst = c.centroids_.data() + k * static_cast<size_t>(c.dim_);
    for (int i = 0; i < c.dim_; ++i) dst[i] *= inv;
  }
  if (!any) {
    Fail(ErrorKind::kDegenerate,
         "set '" + s.set_id() + "': every class is empty of training records");
  }
  return c;
}

ScoreVector CentroidClassifier::Predict(std::span<const double> feature) const {
  if (static_cast<int>(feature.size()) != dim_) {
    Fail(ErrorKind::kInvalidInput, "query feature dimension " +
                                       std::to_string(feature.size()) + " != " +
                                       std::to_string(dim_));
  }
  ScoreVector out{set_id_, std::vector<double>(static_cast<size_t>(class_count_), 0.0)};
  double best = -std::numeric_limits<double>::infinity();
  for (int32_t k = 0; k < class_count_; ++k) {
    if (class_empty(k)) continue;
    const double logit =
        -std::sqrt(simd::SquaredDistance(feature, centroid(k))) / temperature_;
    out.scores[static_cast<size_t>(k)] = logit;
    best = std::max(best, logit);
  }
  double total = 0.0;
  for (int32_t k = 0; k < class_count_; ++k) {
    if (class_empty(k)) continue;
    double& s = out.scores[static_cast<size_t>(k)];
    s = std::exp(s - best);
    total += s;
  }
  for (double& s : out.scores) s /= total;
  return out;
}

json CentroidClassifier::ToJson() const {
  json centroids = json::array();
  for (int32_t k = 0; k < class_count_; ++k) {
    const auto c = centroid(k);
    centroids.push_back(std::vector<double>(c.begin(), c.end()));
  }
  json doc = {
      {"format", "geopart-centroid-classifier"},
      {"set_id", set_id_},
      {"feature_dim", dim_},
      {"temperature", temperature_},
      {"class_counts", counts_},
      {"centroids", std::move(centroids)},
  };
  StampContentHash(doc);
  return doc;
}

CentroidClassifier CentroidClassifier::FromJson(const json& doc) {
  VerifyContentHash(doc, "classifier");
  CentroidClassifier c;
  try {
    c.set_id_ = doc.at("set_id").get<std::string>();
    c.dim_ = doc.at("feature_dim").get<int>();
    c.temperature_ = doc.at("temperature").get<double>();
    c.counts_ = doc.at("class_counts").get<std::vector<int64_t>>();
    c.class_count_ = static_cast<int32_t>(c.counts_.size());
    for (const json& row : doc.at("centroids")) {
      const auto v = row.get<std::vector<double>>();
      if (static_cast<int>(v.size()) != c.dim_) {
        Fail(ErrorKind::kInvalidInput, "classifier centroid has wrong dimension");
      }
      c.centroids_.insert(c.centroids_.end(), v.begin(), v.end());
    }
  } catch (const json::exception& e) {
    Fail(ErrorKind::kInvalidInput, "bad classifier: " + std::string(e.what()));
  }
  if (c.centroids_.size() !=
      static_cast<size_t>(c.class_count_) * static_cast<size_t>(c.dim_)) {
    Fail(ErrorKind::kInvalidInput, "classifier centroid count mismatch");
  }
  return c;
}

std::map<std::string, std::vector<ScoreVector>> LoadScores(
    std::istream& in, std::span<const ExpectedSet> expected) {
  std::map<std::string, size_t> slot_of;
  for (size_t i = 0; i < expected.size(); ++i) slot_of[expected[i].set_id] = i;

  std::map<std::string, std::vector<ScoreVector>> out;
  std::string line;
  int64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = "score line " + std::to_string(line_no) + ": ";
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error&) {
      Fail(ErrorKind::kInvalidInput, where + "malformed JSON");
    }
    ScoreVector v;
    std::string query;
    try {
      query = j.at("query_id").get<std::string>();
      v.set_id = j.at("set_id").get<std::string>();
      v.scores = j.at("scores").get<std::vector<double>>();
    } catch (const json::exception& e) {
      Fail(ErrorKind::kInvalidInput, where + e.what());
    }
    const auto it = slot_of.find(v.set_id);
    if (it == slot_of.end()) {
      Fail(ErrorKind::kInvalidInput, where + "unknown set_id '" + v.set_id + "'");
    }
    v.Validate(expected[it->second].class_count);
    auto& vectors = out[query];
    if (vectors.empty()) vectors.resize(expected.size());
    ScoreVector& dst = vectors[it->second];
    if (!dst.set_id.empty()) {
      Fail(ErrorKind::kInvalidInput, where + "duplicate scores for query '" +
                                         query + "', set '" + v.set_id + "'");
    }
    dst = std::move(v);
  }
  for (const auto& [query, vectors] : out) {
    for (size_t i = 0; i < expected.size(); ++i) {
      if (vectors[i].set_id.empty()) {
        Fail(ErrorKind::kInvalidInput, "query '" + query + "' has no scores for set '" +
                                           expected[i].set_id + "'");
      }
    }
  }
  return out;
}

std::string ScoreLine(const std::string& query_id, const ScoreVector& v) {
  return json{{"query_id", query_id}, {"set_id", v.set_id}, {"scores", v.scores}}
      .dump();
}

}  // namespace geopart
