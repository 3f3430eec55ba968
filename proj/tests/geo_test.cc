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

#include "geopart/geo.h"

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "test_util.h"

namespace geopart {
namespace {

using testing::ErrorKindOf;

// Oracle values: atan2(|a x b|, a . b) at 50 digits, R = 6371.0088 km.
TEST(GeodesicKm, NashvilleToLosAngeles) {
  EXPECT_NEAR(GeodesicKm(GeoPoint(36.12, -86.67), GeoPoint(33.94, -118.40)),
              2886.448429764855, 1e-8);
}

TEST(GeodesicKm, AntipodesAreHalfCircumference) {
  EXPECT_NEAR(GeodesicKm(GeoPoint(0, 0), GeoPoint(0, -180)), 20015.114442035924, 1e-8);
  EXPECT_NEAR(GeodesicKm(GeoPoint(90, 0), GeoPoint(-90, 0)), kHalfCircumferenceKm, 1e-8);
}

TEST(GeodesicKm, SamePointIsZero) {
  const GeoPoint p(12.5, 99.25);
  EXPECT_EQ(GeodesicKm(p, p), 0.0);
}

TEST(GeodesicKm, AcrossAntimeridian) {
  // One degree of longitude on the equator.
  EXPECT_NEAR(GeodesicKm(GeoPoint(0, 179.5), GeoPoint(0, -179.5)),
              kEarthRadiusKm * kPi / 180.0, 1e-9);
}

TEST(GeoPoint, RejectsBadLatitude) {
  EXPECT_EQ(ErrorKindOf([] { GeoPoint(90.0001, 0); }), ErrorKind::kInvalidInput);
  EXPECT_EQ(ErrorKindOf([] { GeoPoint(NAN, 0); }), ErrorKind::kInvalidInput);
  EXPECT_EQ(ErrorKindOf([] { GeoPoint(0, INFINITY); }), ErrorKind::kInvalidInput);
}

TEST(GeoPoint, NormalizesLongitude) {
  EXPECT_EQ(GeoPoint(0, 180).lng(), -180.0);
  EXPECT_EQ(GeoPoint(0, 190).lng(), -170.0);
  EXPECT_EQ(GeoPoint(0, -190).lng(), 170.0);
  EXPECT_EQ(GeoPoint(0, 540).lng(), -180.0);
  EXPECT_EQ(NormalizeLongitude(-180.0), -180.0);
  EXPECT_NEAR(NormalizeLongitude(719.5), -0.5, 1e-12);
}

TEST(Cartesian, AxesAndRoundTrip) {
  const UnitVec3 x = ToCartesian(GeoPoint(0, 0));
  EXPECT_NEAR(x.x(), 1.0, 1e-15);
  const UnitVec3 z = ToCartesian(GeoPoint(90, 0));
  EXPECT_NEAR(z.z(), 1.0, 1e-15);
  const GeoPoint p = FromCartesian(ToCartesian(GeoPoint(-33.5, 151.25)));
  EXPECT_NEAR(p.lat(), -33.5, 1e-12);
  EXPECT_NEAR(p.lng(), 151.25, 1e-12);
}

TEST(Cartesian, FromUnnormalizedVector) {
  // atan2(1, 3) in degrees.
  const GeoPoint p = FromCartesian(Vec3{3.0, 1.0, 0.0});
  EXPECT_NEAR(p.lng(), 18.43494882292201, 1e-12);
  EXPECT_NEAR(p.lat(), 0.0, 1e-15);
}

TEST(UnitVec3, ZeroVectorIsDegenerate) {
  EXPECT_EQ(ErrorKindOf([] { UnitVec3::Normalize(Vec3{}); }), ErrorKind::kDegenerate);
}

TEST(WeightedCentroid, AntimeridianPair) {
  const std::vector<WeightedPoint> pts{{GeoPoint(0, 170), 1}, {GeoPoint(0, -170), 1}};
  const GeoPoint c = WeightedCentroid(pts);
  EXPECT_NEAR(c.lat(), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(c.lng()), 180.0, 1e-9);
}

TEST(WeightedCentroid, WeightsPullTowardHeavierPoint) {
  const std::vector<WeightedPoint> pts{{GeoPoint(0, 0), 3}, {GeoPoint(0, 90), 1}};
  // atan2(1, 3) again.
  EXPECT_NEAR(WeightedCentroid(pts).lng(), 18.43494882292201, 1e-12);
}

TEST(WeightedCentroid, ZeroWeightsAreIgnored) {
  const std::vector<WeightedPoint> pts{{GeoPoint(10, 20), 1}, {GeoPoint(-50, 0), 0}};
  const GeoPoint c = WeightedCentroid(pts);
  EXPECT_NEAR(c.lat(), 10.0, 1e-12);
  EXPECT_NEAR(c.lng(), 20.0, 1e-12);
}

TEST(WeightedCentroid, Errors) {
  EXPECT_EQ(ErrorKindOf([] { WeightedCentroid({}); }), ErrorKind::kDegenerate);
  const std::vector<WeightedPoint> antipodal{{GeoPoint(0, 0), 1}, {GeoPoint(0, 180), 1}};
  EXPECT_EQ(ErrorKindOf([&] { WeightedCentroid(antipodal); }), ErrorKind::kDegenerate);
  const std::vector<WeightedPoint> negative{{GeoPoint(0, 0), -1}};
  EXPECT_EQ(ErrorKindOf([&] { WeightedCentroid(negative); }), ErrorKind::kInvalidInput);
}

}  // namespace
}  // namespace geopart
