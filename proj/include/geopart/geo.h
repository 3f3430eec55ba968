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

// Spherical geometry on a sphere of mean earth radius.  Latitude/longitude
// are in degrees; Cartesian vectors live on the unit sphere.

#ifndef GEOPART_GEO_H_
#define GEOPART_GEO_H_

#include <span>
#include <utility>

namespace geopart {

inline constexpr double kEarthRadiusKm = 6371.0088;  // IUGG mean radius
inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kHalfCircumferenceKm = kPi * kEarthRadiusKm;

// A validated position.  Construction normalizes longitude into [-180, 180)
// and rejects NaN or out-of-range latitude.
class GeoPoint {
 public:
  GeoPoint() = default;
  GeoPoint(double lat, double lng);

  double lat() const { return lat_; }
  double lng() const { return lng_; }

  friend bool operator==(const GeoPoint&, const GeoPoint&) = default;

 private:
  double lat_ = 0.0;
  double lng_ = 0.0;
};

// Plain 3-vector; not necessarily unit length (location sums use it too).
struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Vec3& operator+=(const Vec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  friend Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
  friend Vec3 operator*(double s, const Vec3& v) {
    return {s * v.x, s * v.y, s * v.z};
  }
  double Norm() const;
  friend bool operator==(const Vec3&, const Vec3&) = default;
};

// Vector of unit length (within 1e-12).
class UnitVec3 {
 public:
  // Normalizes `v`; throws kDegenerate for a (near-)zero vector.
  static UnitVec3 Normalize(const Vec3& v);

  const Vec3& vec() const { return v_; }
  double x() const { return v_.x; }
  double y() const { return v_.y; }
  double z() const { return v_.z; }

 private:
  explicit UnitVec3(const Vec3& v) : v_(v) {}
  Vec3 v_;
  friend UnitVec3 ToCartesian(const GeoPoint& p);
};

// Returns true iff (lat, lng) would form a valid GeoPoint.
bool IsValidLatLng(double lat, double lng);

double NormalizeLongitude(double lng);

// Great-circle (haversine) distance in kilometers.
double GeodesicKm(const GeoPoint& a, const GeoPoint& b);

UnitVec3 ToCartesian(const GeoPoint& p);
GeoPoint FromCartesian(const UnitVec3& v);
// Normalizes first; throws kDegenerate on a zero vector.
GeoPoint FromCartesian(const Vec3& v);

struct WeightedPoint {
  GeoPoint point;
  double weight = 0.0;
};

// Spherical mean: the weighted mean of the Cartesian embeddings, projected
// back onto the sphere.  Throws kDegenerate for an empty list, no positive
// weight, or a mean vector too close to zero (antipodal mass).
GeoPoint WeightedCentroid(std::span<const WeightedPoint> points);

}  // namespace geopart

#endif  // GEOPART_GEO_H_
