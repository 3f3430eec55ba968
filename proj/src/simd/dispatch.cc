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

#include <atomic>
#include <cstdlib>
#include <string>

#include "geopart/errors.h"
#include "geopart/simd/kernels.h"
#include "kernels_impl.h"

namespace geopart::simd {
namespace {

constexpr KernelTable kScalarTable = {&scalar::Dot, &scalar::SquaredDistance,
                                      &scalar::GatherAccumulate};
#ifdef GEOPART_WITH_AVX2
constexpr KernelTable kAvx2Table = {&avx2::Dot, &avx2::SquaredDistance,
                                    &avx2::GatherAccumulate};
#endif

const KernelTable* TableFor(Backend b) {
#ifdef GEOPART_WITH_AVX2
  if (b == Backend::kAvx2) return &kAvx2Table;
#endif
  (void)b;
  return &kScalarTable;
}

Backend DetectBackend() {
  if (const char* env = std::getenv("GEOPART_SIMD")) {
    const std::string v(env);
    if (v == "scalar") return Backend::kScalar;
    if (v == "avx2" && IsSupported(Backend::kAvx2)) return Backend::kAvx2;
  }
  return IsSupported(Backend::kAvx2) ? Backend::kAvx2 : Backend::kScalar;
}

std::atomic<Backend>& ActiveSlot() {
  static std::atomic<Backend> slot{DetectBackend()};
  return slot;
}

const KernelTable& Active() { return *TableFor(ActiveSlot().load()); }

void CheckSameLength(size_t a, size_t b) {
  if (a != b) Fail(ErrorKind::kInvalidInput, "kernel operands differ in length");
}

}  // namespace

std::string_view BackendName(Backend b) {
  return b == Backend::kAvx2 ? "avx2" : "scalar";
}

bool IsSupported(Backend b) {
  if (b == Backend::kScalar) return true;
#if defined(GEOPART_WITH_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend ActiveBackend() { return ActiveSlot().load(); }

void SetBackend(Backend b) {
  if (!IsSupported(b)) {
    Fail(ErrorKind::kInvalidInput,
         "SIMD backend " + std::string(BackendName(b)) + " is not available");
  }
  ActiveSlot().store(b);
}

double Dot(std::span<const double> a, std::span<const double> b) {
  CheckSameLength(a.size(), b.size());
  return Active().dot(a.data(), b.data(), a.size());
}

double SquaredDistance(std::span<const double> a, std::span<const double> b) {
  CheckSameLength(a.size(), b.size());
  return Active().squared_distance(a.data(), b.data(), a.size());
}

void GatherAccumulate(std::span<const double> table,
                      std::span<const int32_t> index, std::span<double> out) {
  CheckSameLength(index.size(), out.size());
  Active().gather_accumulate(table.data(), index.data(), out.data(),
                             out.size());
}

}  // namespace geopart::simd
