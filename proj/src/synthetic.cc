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

#include "geopart/synthetic.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "geopart/errors.h"

namespace geopart {
namespace {

constexpr double kKmPerDegree = kPi * kEarthRadiusKm / 180.0;

class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1).
  double Uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }

  // Box-Muller; std::normal_distribution differs between standard libraries.
  double Normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = Uniform();
    while (u1 <= 0.0) u1 = Uniform();
    const double u2 = Uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * kPi * u2);
    has_spare_ = true;
    return r * std::cos(2.0 * kPi * u2);
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

struct Cluster {
  double lat = 0.0;
  double lng = 0.0;
  double sigma_km = 0.0;
  double weight = 0.0;
  std::vector<double> mean;
  std::vector<double> drift_east;
  std::vector<double> drift_north;
};

GeoRecord Sample(const std::vector<Cluster>& clusters,
                 const std::vector<double>& cumulative,
                 const SyntheticWorldOptions& o, Rng& rng, const char* prefix,
                 int index) {
  const double pick = rng.Uniform() * cumulative.back();
  const auto k = static_cast<size_t>(
      std::upper_bound(cumulative.begin(), cumulative.end(), pick) - cumulative.begin());
  const Cluster& c = clusters[std::min(k, clusters.size() - 1)];

  const double east = rng.Normal();
  const double north = rng.Normal();
  double lat = c.lat + north * c.sigma_km / kKmPerDegree;
  lat = std::clamp(lat, -89.9, 89.9);
  const double lng =
      c.lng + east * c.sigma_km / (kKmPerDegree * std::cos(lat * kPi / 180.0));

  std::vector<double> feat(static_cast<size_t>(o.feature_dim));
  for (size_t i = 0; i < feat.size(); ++i) {
    feat[i] = c.mean[i] + o.position_signal * (east * c.drift_east[i] + north * c.drift_north[i]) +
              o.feature_noise * rng.Normal();
  }
  char id[32];
  std::snprintf(id, sizeof(id), "%s-%06d", prefix, index);
  return GeoRecord{id, GeoPoint(lat, NormalizeLongitude(lng)), std::move(feat)};
}

}  // namespace

SyntheticWorld GenerateSyntheticWorld(const SyntheticWorldOptions& o) {
  if (o.clusters < 1 || o.feature_dim < 1 || o.train_count < 0 || o.test_count < 0 ||
      !(o.min_sigma_km > 0.0) || o.max_sigma_km < o.min_sigma_km ||
      !(o.max_abs_lat > 0.0) || o.max_abs_lat > 90.0) {
    Fail(ErrorKind::kInvalidInput, "invalid synthetic world options");
  }
  Rng rng(o.seed);
  const double sin_max = std::sin(o.max_abs_lat * kPi / 180.0);
  const double inv_sqrt_dim = 1.0 / std::sqrt(static_cast<double>(o.feature_dim));
  std::vector<Cluster> clusters(static_cast<size_t>(o.clusters));
  std::vector<double> cumulative;
  double total = 0.0;
  for (Cluster& c : clusters) {
    c.lat = std::asin(rng.Uniform(-sin_max, sin_max)) * 180.0 / kPi;
    c.lng = rng.Uniform(-180.0, 180.0);
    c.sigma_km = std::exp(rng.Uniform(std::log(o.min_sigma_km), std::log(o.max_sigma_km)));
    c.weight = std::exp(rng.Normal());
    for (int i = 0; i < o.feature_dim; ++i) c.mean.push_back(rng.Normal());
    for (int i = 0; i < o.feature_dim; ++i) c.drift_east.push_back(rng.Normal() * inv_sqrt_dim);
    for (int i = 0; i < o.feature_dim; ++i) c.drift_north.push_back(rng.Normal() * inv_sqrt_dim);
    total += c.weight;
    cumulative.push_back(total);
  }
  SyntheticWorld world;
  world.train.reserve(static_cast<size_t>(o.train_count));
  world.test.reserve(static_cast<size_t>(o.test_count));
  for (int i = 0; i < o.train_count; ++i) {
    world.train.push_back(Sample(clusters, cumulative, o, rng, "train", i));
  }
  for (int i = 0; i < o.test_count; ++i) {
    world.test.push_back(Sample(clusters, cumulative, o, rng, "test", i));
  }
  return world;
}

}  // namespace geopart
