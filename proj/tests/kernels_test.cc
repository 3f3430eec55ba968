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

#include "geopart/simd/kernels.h"

#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

namespace geopart::simd {
namespace {

class KernelEquivalence : public ::testing::Test {
 protected:
  void SetUp() override {
    if (!IsSupported(Backend::kAvx2)) GTEST_SKIP() << "AVX2 not available";
    saved_ = ActiveBackend();
  }
  void TearDown() override {
    if (IsSupported(Backend::kAvx2)) SetBackend(saved_);
  }

  template <typename F>
  auto Both(F f) {
    SetBackend(Backend::kScalar);
    auto a = f();
    SetBackend(Backend::kAvx2);
    auto b = f();
    return std::make_pair(a, b);
  }

  Backend saved_ = Backend::kScalar;
};

std::vector<double> RandomVec(std::mt19937_64& rng, size_t n) {
  std::normal_distribution<double> d(0.0, 3.0);
  std::vector<double> v(n);
  for (double& x : v) x = d(rng);
  return v;
}

TEST_F(KernelEquivalence, DotAndDistance) {
  std::mt19937_64 rng(1);
  for (size_t n = 0; n < 70; ++n) {
    const auto a = RandomVec(rng, n), b = RandomVec(rng, n);
    const auto [ds, dv] = Both([&] { return Dot(a, b); });
    const auto [qs, qv] = Both([&] { return SquaredDistance(a, b); });
    double mag = 0.0;
    for (size_t i = 0; i < n; ++i) mag += std::abs(a[i] * b[i]);
    EXPECT_NEAR(ds, dv, 1e-13 * (1.0 + mag)) << n;
    EXPECT_NEAR(qs, qv, 1e-13 * (1.0 + qs)) << n;
  }
}

TEST_F(KernelEquivalence, GatherAccumulateIsExact) {
  std::mt19937_64 rng(2);
  for (size_t n = 0; n < 70; ++n) {
    const auto table = RandomVec(rng, 17);
    std::vector<int32_t> index(n);
    for (int32_t& i : index) i = static_cast<int32_t>(rng() % table.size());
    const auto init = RandomVec(rng, n);
    const auto [s, v] = Both([&] {
      std::vector<double> out = init;
      GatherAccumulate(table, index, out);
      return out;
    });
    EXPECT_EQ(s, v) << n;
  }
}

TEST(Kernels, ScalarValues) {
  const std::vector<double> a{1, 2, 3}, b{4, -5, 6};
  EXPECT_EQ(Dot(a, b), 12.0);
  EXPECT_EQ(SquaredDistance(a, b), 9.0 + 49.0 + 9.0);
  std::vector<double> out{1, 1};
  const std::vector<int32_t> idx{2, 0};
  GatherAccumulate(a, idx, out);
  EXPECT_EQ(out, (std::vector<double>{4, 2}));
}

TEST(Kernels, BackendNames) {
  EXPECT_EQ(BackendName(Backend::kScalar), "scalar");
  EXPECT_EQ(BackendName(Backend::kAvx2), "avx2");
  EXPECT_TRUE(IsSupported(Backend::kScalar));
}

}  // namespace
}  // namespace geopart::simd
