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

#include "geopart/geojson.h"

#include <gtest/gtest.h>
#include <json.hpp>

#include "test_util.h"

namespace geopart {
namespace {

TEST(DissolveCells, BlockBecomesOneSquare) {
  // Level 2 cells (row, col): (1,1) (1,2) (2,1) (2,2).
  const std::vector<int64_t> cells{1 * 8 + 1, 1 * 8 + 2, 2 * 8 + 1, 2 * 8 + 2};
  const auto polys = DissolveCells(2, cells);
  ASSERT_EQ(polys.size(), 1u);
  EXPECT_EQ(polys[0].outer.size(), 4u);
  EXPECT_TRUE(polys[0].holes.empty());
  EXPECT_DOUBLE_EQ(SignedArea(polys[0].outer), 4.0);
}

TEST(DissolveCells, RingWithHole) {
  std::vector<int64_t> cells;
  for (int64_t r = 0; r < 3; ++r) {
    for (int64_t c = 2; c < 5; ++c) {
      if (r == 1 && c == 3) continue;
      cells.push_back(r * 16 + c);
    }
  }
  const auto polys = DissolveCells(3, cells);
  ASSERT_EQ(polys.size(), 1u);
  ASSERT_EQ(polys[0].holes.size(), 1u);
  EXPECT_DOUBLE_EQ(SignedArea(polys[0].outer), 9.0);
  EXPECT_DOUBLE_EQ(SignedArea(polys[0].holes[0]), -1.0);
}

TEST(DissolveCells, DiagonalCellsStaySeparate) {
  const std::vector<int64_t> cells{0, 8 + 1};
  const auto polys = DissolveCells(2, cells);
  ASSERT_EQ(polys.size(), 2u);
  for (const auto& p : polys) EXPECT_DOUBLE_EQ(SignedArea(p.outer), 1.0);
}

TEST(GeoclassSetToGeoJson, OneFeaturePerClass) {
  GenParams p;
  const GeoclassSet s("s", 1, p, {{0, 1, 4, 5}, {2, 3, 6, 7}});
  const nlohmann::json g = GeoclassSetToGeoJson(s);
  ASSERT_EQ(g["features"].size(), 2u);
  const auto& f = g["features"][0];
  EXPECT_EQ(f["geometry"]["type"], "MultiPolygon");
  EXPECT_EQ(f["properties"]["cell_count"], 4);
  const auto& ring = f["geometry"]["coordinates"][0][0];
  EXPECT_EQ(ring.front(), ring.back());
  // West half: lng [-180, 0), all latitudes.
  double lng_min = 1e9, lng_max = -1e9;
  for (const auto& v : ring) {
    lng_min = std::min(lng_min, v[0].get<double>());
    lng_max = std::max(lng_max, v[0].get<double>());
  }
  EXPECT_EQ(lng_min, -180.0);
  EXPECT_EQ(lng_max, 0.0);
}

TEST(PredictionsToGeoJson, PointsAndTruthLinks) {
  const std::vector<PredictionExport> items{
      {"a", GeoPoint(1, 2), true, GeoPoint(1, 3)}, {"b", GeoPoint(5, 6), false, {}}};
  const nlohmann::json g = PredictionsToGeoJson(items);
  ASSERT_EQ(g["features"].size(), 3u);
  EXPECT_EQ(g["features"][0]["geometry"]["coordinates"], nlohmann::json({2.0, 1.0}));
  EXPECT_EQ(g["features"][1]["geometry"]["type"], "LineString");
  EXPECT_GT(g["features"][1]["properties"]["error_km"].get<double>(), 100.0);
}

}  // namespace
}  // namespace geopart
