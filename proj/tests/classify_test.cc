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

#include <sstream>

#include <gtest/gtest.h>

#include "test_util.h"

namespace geopart {
namespace {

using testing::ErrorKindOf;

// Level 0: two cells, west (0) and east (1), one class each.
GeoclassSet HalvesSet() {
  GenParams p;
  p.set_id = "halves";
  return GeoclassSet("halves", 0, p, {{0}, {1}});
}

TEST(CentroidClassifier, OneRecordPerClass) {
  Dataset d(0);
  d.Add({"w", GeoPoint(0, -90), {1, 2}});
  d.Add({"e", GeoPoint(0, 90), {-3, 4}});
  const CentroidClassifier c = CentroidClassifier::Train(d, HalvesSet());
  EXPECT_EQ(std::vector<double>(c.centroid(0).begin(), c.centroid(0).end()),
            (std::vector<double>{1, 2}));
  EXPECT_EQ(std::vector<double>(c.centroid(1).begin(), c.centroid(1).end()),
            (std::vector<double>{-3, 4}));
  const ScoreVector near0 = c.Predict(std::vector<double>{1, 2});
  EXPECT_GT(near0.scores[0], near0.scores[1]);
  EXPECT_NEAR(near0.scores[0] + near0.scores[1], 1.0, 1e-15);
  // Equidistant from both centroids.
  const ScoreVector mid = c.Predict(std::vector<double>{-1, 3});
  EXPECT_DOUBLE_EQ(mid.scores[0], 0.5);
  EXPECT_DOUBLE_EQ(mid.scores[1], 0.5);
}

TEST(CentroidClassifier, CentroidIsCountWeighted) {
  Dataset d(1);
  d.Add({"a", GeoPoint(10, -170), {0}});
  d.Add({"b", GeoPoint(10, -100), {3}});  // same class, different cell
  d.Add({"c", GeoPoint(10, -100), {3}});
  GenParams p;
  GeoclassSet s("s", 1, p, {{0, 1, 2, 3}, {4, 5, 6, 7}});
  const CentroidClassifier c = CentroidClassifier::Train(d, s);
  EXPECT_DOUBLE_EQ(c.centroid(1)[0], 2.0);
  EXPECT_EQ(c.class_record_count(1), 3);
  EXPECT_TRUE(c.class_empty(0));
  EXPECT_EQ(c.Predict(std::vector<double>{100}).scores[0], 0.0);
}

TEST(CentroidClassifier, TemperatureKeepsArgmax) {
  std::mt19937_64 rng(4);
  const Dataset d = testing::RandomDataset(rng, 2, 200, 3, 4);
  const GeoclassSet s = testing::RandomSet(rng, "r", 2, 6);
  const CentroidClassifier a = CentroidClassifier::Train(d, s, 0.3);
  const CentroidClassifier b = CentroidClassifier::Train(d, s, 7.0);
  for (const GeoRecord& r : d.records()) {
    const auto sa = a.Predict(r.feature).scores, sb = b.Predict(r.feature).scores;
    EXPECT_EQ(std::max_element(sa.begin(), sa.end()) - sa.begin(),
              std::max_element(sb.begin(), sb.end()) - sb.begin());
  }
}

TEST(CentroidClassifier, Errors) {
  Dataset empty(0);
  EXPECT_EQ(ErrorKindOf([&] { CentroidClassifier::Train(empty, HalvesSet()); }),
            ErrorKind::kDegenerate);
  Dataset d(0);
  d.Add({"w", GeoPoint(0, -90), {1, 2}});
  EXPECT_EQ(ErrorKindOf([&] { CentroidClassifier::Train(d, HalvesSet(), 0.0); }),
            ErrorKind::kInvalidInput);
  const CentroidClassifier c = CentroidClassifier::Train(d, HalvesSet());
  EXPECT_EQ(ErrorKindOf([&] { c.Predict(std::vector<double>{1}); }),
            ErrorKind::kInvalidInput);
  Dataset other_level(1);
  other_level.Add({"x", GeoPoint(0, 0), {1}});
  EXPECT_EQ(ErrorKindOf([&] { CentroidClassifier::Train(other_level, HalvesSet()); }),
            ErrorKind::kInvalidInput);
}

TEST(CentroidClassifier, JsonRoundTrip) {
  Dataset d(0);
  d.Add({"w", GeoPoint(0, -90), {0.1, 0.7}});
  const CentroidClassifier c = CentroidClassifier::Train(d, HalvesSet(), 2.5);
  const CentroidClassifier back = CentroidClassifier::FromJson(c.ToJson());
  EXPECT_EQ(back.ToJson(), c.ToJson());
  EXPECT_EQ(back.Predict(std::vector<double>{1, 1}).scores,
            c.Predict(std::vector<double>{1, 1}).scores);
}

TEST(ScoreVector, Validate) {
  EXPECT_NO_THROW((ScoreVector{"s", {0.0, 1.0}}.Validate(2)));
  EXPECT_EQ(ErrorKindOf([] { ScoreVector{"s", {1.0}}.Validate(2); }),
            ErrorKind::kInvalidInput);
  EXPECT_EQ(ErrorKindOf([] { ScoreVector{"s", {0.0, 0.0}}.Validate(2); }),
            ErrorKind::kInvalidInput);
  EXPECT_EQ(ErrorKindOf([] { ScoreVector{"s", {-1.0, 2.0}}.Validate(2); }),
            ErrorKind::kInvalidInput);
  EXPECT_EQ(ErrorKindOf([] { ScoreVector{"s", {NAN, 2.0}}.Validate(2); }),
            ErrorKind::kInvalidInput);
}

TEST(LoadScores, RoundTripIsBitwise) {
  const std::vector<ExpectedSet> expected{{"a", 2}, {"b", 3}};
  const ScoreVector va{"a", {0.1, 1.0 / 3.0}}, vb{"b", {1e-300, 0.0, 0.7}};
  std::stringstream io;
  // Out of set order on purpose.
  io << ScoreLine("q", vb) << "\n" << ScoreLine("q", va) << "\n";
  const auto m = LoadScores(io, expected);
  ASSERT_EQ(m.size(), 1u);
  const auto& v = m.at("q");
  ASSERT_EQ(v.size(), 2u);
  EXPECT_EQ(v[0].set_id, "a");
  EXPECT_EQ(v[0].scores, va.scores);
  EXPECT_EQ(v[1].scores, vb.scores);
}

TEST(LoadScores, Rejections) {
  const std::vector<ExpectedSet> expected{{"a", 2}, {"b", 1}};
  auto kind = [&](const std::string& text) {
    std::istringstream in(text);
    return ErrorKindOf([&] { LoadScores(in, expected); });
  };
  const std::string a = R"({"query_id":"q","set_id":"a","scores":[1,2]})";
  const std::string b = R"({"query_id":"q","set_id":"b","scores":[1]})";
  EXPECT_FALSE(kind(a + "\n" + b + "\n").has_value());
  EXPECT_EQ(kind(a + "\n"), ErrorKind::kInvalidInput);  // missing set b
  EXPECT_EQ(kind(a + "\n" + a + "\n" + b), ErrorKind::kInvalidInput);
  EXPECT_EQ(kind(a + "\n" + R"({"query_id":"q","set_id":"b","scores":[1,2]})"),
            ErrorKind::kInvalidInput);
  EXPECT_EQ(kind(a + "\n" + b + "\n" + R"({"query_id":"q","set_id":"z","scores":[1]})"),
            ErrorKind::kInvalidInput);
  std::istringstream wrong_len(R"({"query_id":"q","set_id":"b","scores":[1,2]})");
  try {
    LoadScores(wrong_len, expected);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("'b'"), std::string::npos) << e.what();
  }
}

}  // namespace
}  // namespace geopart
