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

#ifndef GEOPART_SRC_SIMD_KERNELS_IMPL_H_
#define GEOPART_SRC_SIMD_KERNELS_IMPL_H_

#include <cstddef>
#include <cstdint>

namespace geopart::simd {

struct KernelTable {
  double (*dot)(const double* a, const double* b, size_t n);
  double (*squared_distance)(const double* a, const double* b, size_t n);
  void (*gather_accumulate)(const double* table, const int32_t* index,
                            double* out, size_t n);
};

namespace scalar {
double Dot(const double* a, const double* b, size_t n);
double SquaredDistance(const double* a, const double* b, size_t n);
void GatherAccumulate(const double* table, const int32_t* index, double* out,
                      size_t n);
}  // namespace scalar

#ifdef GEOPART_WITH_AVX2
namespace avx2 {
double Dot(const double* a, const double* b, size_t n);
double SquaredDistance(const double* a, const double* b, size_t n);
void GatherAccumulate(const double* table, const int32_t* index, double* out,
                      size_t n);
}  // namespace avx2
#endif

}  // namespace geopart::simd

#endif  // GEOPART_SRC_SIMD_KERNELS_IMPL_H_
