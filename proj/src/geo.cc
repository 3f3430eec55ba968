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

#include <algorithm>
#include <cmath>
#include <sstream>

#include "geopart/errors.h"

namespace geopart {
namespace {

constexpr double kDegToRad = kPi / 180.0;
constexpr double kRadToDeg = 180.0 / kPi;

// Below this norm a mean vector has no usable direction.
constexpr double kDegenerateNorm = 1e-12;

}  // namespace

double NormalizeLongitude(double lng) {
  if (lng >= -180.0 && lng < 180.0) return lng;
  double r = std::fmod(lng + 180.0, 360.0);
  if (r < 0) r += 360.0;
  r -= 180.0;
  // fmod can land exactly on +180 after the shift for tiny negative inputs.
  return r >= 180.0 ? r - 360.0 : r;
}

bool IsValidLatLng(double lat, double lng) {
  return std::isfinite(lat) && std::isfinite(lng) && lat >= -90.0 &&
         lat <= 90.0;
}

GeoPoint::GeoPoint(double lat, double lng) {
  if (!IsValidLatLng(lat, lng)) {
    std::ostringstream os;
    os << "invalid coordinates (" << lat << ", " << lng << ")";
    Fail(ErrorKind::kInvalidInput, os.str());
  }
  lat_ = lat;
  lng_ = NormalizeLongitude(lng);
}

double Vec3::Norm() const { return std::sqrt(x * x + y * y + z * z); }

UnitVec3 UnitVec3::Normalize(const Vec3& v) {
  const double n = v.Norm();
  if (!(n > kDegenerateNorm) || !std::isfinite(n)) {
    Fail(ErrorKind::kDegenerate, "cannot normalize a zero-length vector");
  }
  return UnitVec3(Vec3{v.x / n, v.y / n, v.z / n});
}

double GeodesicKm(const GeoPoint& a, const GeoPoint& b) {
  const double lat1 = a.lat() * kDegToRad;
  const double lat2 = b.lat() * kDegToRad;
  const double dlat = lat2 - lat1;
  const double dlng = (b.lng() - a.lng()) * kDegToRad;
  const double s1 = std::sin(dlat / 2);
  const double s2 = std::sin(dlng / 2);
  double h = s1 * s1 + std::cos(lat1) * std::cos(lat2) * s2 * s2;
  h = std::min(1.0, std::max(0.0, h));
  return 2.0 * kEarthRadiusKm * std::asin(std::sqrt(h));
}

UnitVec3 ToCartesian(const GeoPoint& p) {
  const double lat = p.lat() * kDegToRad;
  const double lng = p.lng() * kDegToRad;
  const double c = std::cos(lat);
  return UnitVec3(Vec3{c * std::cos(lng), c * std::sin(lng), std::sin(lat)});
}

GeoPoint FromCartesian(const UnitVec3& v) {
  const double lat = std::atan2(v.z(), std::hypot(v.x(), v.y())) * kRadToDeg;
  const double lng = std::atan2(v.y(), v.x()) * kRadToDeg;
  return GeoPoint(std::min(90.0, std::max(-90.0, lat)), lng);
}

GeoPoint FromCartesian(const Vec3& v) {
  return FromCartesian(UnitVec3::Normalize(v));
}

GeoPoint WeightedCentroid(std::span<const WeightedPoint> points) {
  Vec3 sum;
  double total = 0.0;
  for (const WeightedPoint& wp : points) {
    if (!(wp.weight >= 0.0) || !std::isfinite(wp.weight)) {
      Fail(ErrorKind::kInvalidInput, "centroid weights must be finite and >= 0");
    }
    if (wp.weight == 0.0) continue;
    sum += wp.weight * ToCartesian(wp.point).vec();
    total += wp.weight;
  }
  if (total <= 0.0) {
    Fail(ErrorKind::kDegenerate, "centroid needs at least one positive weight");
  }
  const Vec3 mean = (1.0 / total) * sum;
  if (mean.Norm() <= kDegenerateNorm) {
    Fail(ErrorKind::kDegenerate, "centroid of antipodal mass is undefined");
  }
  return FromCartesian(mean);
}

}  // namespace geopart
