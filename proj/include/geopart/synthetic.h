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

// Seeded synthetic world of geotagged feature records: Gaussian clusters of
// photos around random centers, each with its own spatial spread and feature
// signature.  Features also drift smoothly with the position inside a
// cluster, so finer regions carry usable visual signal.

#ifndef GEOPART_SYNTHETIC_H_
#define GEOPART_SYNTHETIC_H_

#include <cstdint>
#include <vector>

#include "geopart/dataset.h"

namespace geopart {

struct SyntheticWorldOptions {
  int clusters = 50;
  int feature_dim = 16;
  int train_count = 20000;
  int test_count = 2000;
  uint64_t seed = 2018;
  // Spatial standard deviation per cluster, log-uniform in this range.
  double min_sigma_km = 2.0;
  double max_sigma_km = 400.0;
  // Cluster centers are drawn uniformly on the sphere within this latitude.
  double max_abs_lat = 70.0;
  double feature_noise = 0.35;
  // Scale of the within-cluster positional drift of the feature.
  double position_signal = 0.6;
};

struct SyntheticWorld {
  std::vector<GeoRecord> train;
  std::vector<GeoRecord> test;
};

// Deterministic for a given options value on every platform (only
// mt19937_64 raw output is used).
SyntheticWorld GenerateSyntheticWorld(const SyntheticWorldOptions& options);

}  // namespace geopart

#endif  // GEOPART_SYNTHETIC_H_
