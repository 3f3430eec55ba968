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

#include "geopart/cells.h"

#include <set>

#include <gtest/gtest.h>

#include "test_util.h"

namespace geopart {
namespace {

using testing::ErrorKindOf;

TEST(CellId, GridShape) {
  EXPECT_EQ(CellId::RowCount(0), 1);
  EXPECT_EQ(CellId::ColumnCount(0), 2);
  EXPECT_EQ(CellId::CellCount(6), 64 * 128);
}

TEST(CellId, TextRoundTrip) {
  const CellId c(6, 9, 61);
  EXPECT_EQ(c.ToString(), "L6/9/61");
  EXPECT_EQ(CellId::Parse("L6/9/61"), c);
  EXPECT_EQ(ErrorKindOf([] { CellId::Parse("L6/9"); }), ErrorKind::kInvalidInput);
  EXPECT_EQ(ErrorKindOf([] { CellId::Parse("L6/64/0"); }), ErrorKind::kInvalidInput);
  EXPECT_EQ(ErrorKindOf([] { CellId::Parse("6/1/1"); }), ErrorKind::kInvalidInput);
  EXPECT_EQ(ErrorKindOf([] { CellId::Parse("L6/1/1x"); }), ErrorKind::kInvalidInput);
}

TEST(CellId, LinearIndexRoundTrip) {
  for (int64_t i = 0; i < CellId::CellCount(3); ++i) {
    EXPECT_EQ(CellId::FromLinearIndex(3, i).linear_index(), i);
  }
  EXPECT_EQ(CellId(2, 1, 3).linear_index(), 1 * 8 + 3);
  EXPECT_EQ(ErrorKindOf([] { CellId::FromLinearIndex(1, 8); }), ErrorKind::kInvalidInput);
}

TEST(CellAt, HalfOpenBoundaries) {
  // Level 1: rows of 90 deg, columns of 90 deg.
  EXPECT_EQ(CellAt(GeoPoint(-90, -180), 1), CellId(1, 0, 0));
  EXPECT_EQ(CellAt(GeoPoint(0, 0), 1), CellId(1, 1, 2));
  EXPECT_EQ(CellAt(GeoPoint(-0.0001, -0.0001), 1), CellId(1, 0, 1));
  // Top row is closed at the pole; +180 wraps to the first column.
  EXPECT_EQ(CellAt(GeoPoint(90, 179.999), 1), CellId(1, 1, 3));
  EXPECT_EQ(CellAt(GeoPoint(45, 180), 1), CellId(1, 1, 0));
}

TEST(CellAt, PointsFallInTheirBounds) {
  for (double lat = -90; lat <= 90; lat += 7.3) {
    for (double lng = -180; lng < 180; lng += 11.1) {
      const GeoPoint p(lat, lng);
      EXPECT_TRUE(Bounds(CellAt(p, 5)).Contains(p)) << lat << "," << lng;
    }
  }
}

TEST(CellCenter, Level0) {
  const GeoPoint c = CellCenter(CellId(0, 0, 1));
  EXPECT_EQ(c.lat(), 0.0);
  EXPECT_EQ(c.lng(), 90.0);
}

TEST(Neighbors, InteriorHasFour) {
  const auto n = Neighbors(CellId(3, 3, 5));
  const std::vector<CellId> want{CellId(3, 2, 5), CellId(3, 3, 4), CellId(3, 3, 6),
                                 CellId(3, 4, 5)};
  EXPECT_EQ(n, want);
}

TEST(Neighbors, WrapsEastWestNotOverPoles) {
  const auto n = Neighbors(CellId(2, 0, 0));
  const std::vector<CellId> want{CellId(2, 0, 1), CellId(2, 0, 7), CellId(2, 1, 0)};
  EXPECT_EQ(n, want);
}

TEST(Neighbors, DegenerateColumnsDeduplicate) {
  // Level 0 has two columns: east and west neighbor coincide.
  const auto n = Neighbors(CellId(0, 0, 0));
  ASSERT_EQ(n.size(), 1u);
  EXPECT_EQ(n[0], CellId(0, 0, 1));
}

TEST(Neighbors, Symmetric) {
  for (int64_t i = 0; i < CellId::CellCount(3); ++i) {
    const CellId c = CellId::FromLinearIndex(3, i);
    for (const CellId& nb : Neighbors(c)) {
      const auto back = Neighbors(nb);
      EXPECT_NE(std::find(back.begin(), back.end(), c), back.end());
    }
  }
}

TEST(Hierarchy, ChildrenAndParent) {
  const CellId c(2, 1, 5);
  const auto kids = Children(c);
  ASSERT_EQ(kids.size(), 4u);
  EXPECT_EQ(kids[0], CellId(3, 2, 10));
  EXPECT_EQ(kids[3], CellId(3, 3, 11));
  for (const CellId& k : kids) EXPECT_EQ(Parent(k), c);
  EXPECT_EQ(ErrorKindOf([] { Parent(CellId(0, 0, 0)); }), ErrorKind::kInvalidInput);
}

TEST(CheckLevel, Range) {
  EXPECT_EQ(ErrorKindOf([] { CheckLevel(-1); }), ErrorKind::kInvalidInput);
  EXPECT_EQ(ErrorKindOf([] { CheckLevel(kMaxCellLevel + 1); }), ErrorKind::kInvalidInput);
  EXPECT_FALSE(ErrorKindOf([] { CheckLevel(kMaxCellLevel); }).has_value());
}

}  // namespace
}  // namespace geopart
