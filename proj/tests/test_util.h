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

#ifndef GEOPART_TESTS_TEST_UTIL_H_
#define GEOPART_TESTS_TEST_UTIL_H_

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "geopart/cells.h"
#include "geopart/dataset.h"
#include "geopart/errors.h"
#include "geopart/geo.h"
#include "geopart/partition.h"

namespace geopart::testing {

// Kind of the geopart::Error thrown by `f`, or nullopt if none was thrown.
template <typename F>
std::optional<ErrorKind> ErrorKindOf(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

// Scratch directory removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("geopart-" + tag + "-" + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

// Records scattered around a few random hubs; dim-d gaussian features.
inline Dataset RandomDataset(std::mt19937_64& rng, int level, int records, int dim,
                             int hubs = 3) {
  std::uniform_real_distribution<double> lat(-70.0, 70.0), lng(-180.0, 180.0);
  std::normal_distribution<double> jitter(0.0, 12.0), f(0.0, 1.0);
  std::vector<std::pair<double, double>> centers;
  for (int h = 0; h < hubs; ++h) centers.emplace_back(lat(rng), lng(rng));
  Dataset d(level);
  for (int i = 0; i < records; ++i) {
    const auto& [clat, clng] = centers[static_cast<size_t>(i % hubs)];
    const double la = std::clamp(clat + jitter(rng), -89.9, 89.9);
    const double lo = NormalizeLongitude(clng + 2.0 * jitter(rng));
    std::vector<double> feat(static_cast<size_t>(dim));
    for (double& x : feat) x = f(rng) + (i % hubs);
    d.Add({"r" + std::to_string(i), GeoPoint(la, lo), std::move(feat)});
  }
  return d;
}

// Uniformly random labeling of all cells of `level` into `k` non-empty
// classes.  Classes need not be connected.
inline std::vector<std::vector<int64_t>> RandomLabeling(std::mt19937_64& rng, int level,
                                                        int k) {
  const int64_t n = CellId::CellCount(level);
  std::vector<int64_t> perm(static_cast<size_t>(n));
  for (int64_t i = 0; i < n; ++i) perm[static_cast<size_t>(i)] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::vector<int64_t>> classes(static_cast<size_t>(k));
  std::uniform_int_distribution<int> pick(0, k - 1);
  for (int64_t i = 0; i < n; ++i) {
    const size_t c = i < k ? static_cast<size_t>(i) : static_cast<size_t>(pick(rng));
    classes[c].push_back(perm[static_cast<size_t>(i)]);
  }
  return classes;
}

inline GeoclassSet RandomSet(std::mt19937_64& rng, const std::string& id, int level,
                             int k) {
  GenParams p;
  p.set_id = id;
  p.target_classes = k;
  return GeoclassSet(id, level, p, RandomLabeling(rng, level, k));
}

// Breadth-first check that `cells` form one 4-connected region.
inline bool BfsConnected(int level, const std::vector<int64_t>& cells) {
  if (cells.empty()) return false;
  std::vector<int64_t> sorted = cells;
  std::sort(sorted.begin(), sorted.end());
  std::vector<char> seen(sorted.size(), 0);
  std::vector<size_t> queue{0};
  seen[0] = 1;
  size_t reached = 1;
  while (!queue.empty()) {
    const size_t at = queue.back();
    queue.pop_back();
    for (const CellId& nb : Neighbors(CellId::FromLinearIndex(level, sorted[at]))) {
      const auto it = std::lower_bound(sorted.begin(), sorted.end(), nb.linear_index());
      if (it == sorted.end() || *it != nb.linear_index()) continue;
      const auto j = static_cast<size_t>(it - sorted.begin());
      if (seen[j]) continue;
      seen[j] = 1;
      ++reached;
      queue.push_back(j);
    }
  }
  return reached == sorted.size();
}

}  // namespace geopart::testing

#endif  // GEOPART_TESTS_TEST_UTIL_H_
