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

#include <gtest/gtest.h>
#include <json.hpp>

#include "test_util.h"

namespace geopart {
namespace {

using testing::ErrorKindOf;

TEST(AccuracyAt, PerfectPredictions) {
  const std::map<std::string, GeoPoint> pts{{"a", GeoPoint(1, 2)}, {"b", GeoPoint(-5, 170)}};
  const EvalReport r = AccuracyAt(pts, pts, DefaultRadiiKm());
  for (double a : r.accuracy) EXPECT_EQ(a, 1.0);
  EXPECT_EQ(r.query_count(), 2u);
}

TEST(ReportFromDistances, HandCount) {
  const std::vector<double> radii{1, 5, 25, 50, 2500};
  const EvalReport r = ReportFromDistances({"a", "b", "c", "d"}, {0.5, 3, 30, 3000}, radii);
  EXPECT_EQ(r.accuracy, (std::vector<double>{0.25, 0.5, 0.5, 0.75, 0.75}));
}

TEST(ReportFromDistances, StrictBoundary) {
  const std::vector<double> radii{5, 10};
  const EvalReport r = ReportFromDistances({"q"}, {5.0}, radii);
  EXPECT_EQ(r.AccuracyAt(5), 0.0);
  EXPECT_EQ(r.AccuracyAt(10), 1.0);
  EXPECT_EQ(ErrorKindOf([&] { r.AccuracyAt(7); }), ErrorKind::kInvalidInput);
}

TEST(AccuracyAt, Errors) {
  const std::map<std::string, GeoPoint> a{{"a", GeoPoint(0, 0)}};
  const std::map<std::string, GeoPoint> b{{"b", GeoPoint(0, 0)}};
  EXPECT_EQ(ErrorKindOf([&] { AccuracyAt(a, b, DefaultRadiiKm()); }),
            ErrorKind::kInvalidInput);
  EXPECT_EQ(ErrorKindOf([&] { AccuracyAt({}, {}, DefaultRadiiKm()); }),
            ErrorKind::kInvalidInput);
  const std::vector<double> unsorted{5, 1};
  EXPECT_EQ(ErrorKindOf([&] { AccuracyAt(a, a, unsorted); }), ErrorKind::kInvalidInput);
  const std::vector<double> zero{0};
  EXPECT_EQ(ErrorKindOf([&] { CheckRadii(zero); }), ErrorKind::kInvalidInput);
}

TEST(Csv, HeaderAndRow) {
  const std::vector<double> radii{1, 2.5, 100};
  const EvalReport r = ReportFromDistances({"a", "b", "c"}, {0.1, 2, 50}, radii);
  EXPECT_EQ(CsvHeader(radii), "model,1km,2.5km,100km");
  EXPECT_EQ(CsvHeader(radii, "classes"), "classes,1km,2.5km,100km");
  EXPECT_EQ(CsvRow("x", r), "x,33.3,66.7,100.0");
}

TEST(EvalReport, Json) {
  const std::vector<double> radii{1};
  const EvalReport r = ReportFromDistances({"b", "a"}, {2, 0.5}, radii);
  EXPECT_EQ(r.query_ids, (std::vector<std::string>{"a", "b"}));
  const nlohmann::json j = r.ToJson();
  EXPECT_EQ(j["accuracy"][0]["accuracy"], 0.5);
  EXPECT_EQ(j["accuracy"][0]["radius_km"], 1.0);
}

}  // namespace
}  // namespace geopart
