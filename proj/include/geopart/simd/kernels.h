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

// Arithmetic inner loops shared by partition generation, the centroid
// classifier and score fusion.  Each kernel has a portable scalar reference
// and, on x86-64, an AVX2/FMA variant.  The variant is picked once at first
// use from CPUID; GEOPART_SIMD=scalar|avx2 in the environment overrides it.
//
// Dot and SquaredDistance reassociate their sums in the AVX2 path, so the two
// backends agree to rounding, not bitwise.  GatherAccumulate is elementwise
// and bit-identical across backends.

#ifndef GEOPART_SIMD_KERNELS_H_
#define GEOPART_SIMD_KERNELS_H_

#include <cstdint>
#include <span>
#include <string_view>

namespace geopart::simd {

enum class Backend { kScalar, kAvx2 };

std::string_view BackendName(Backend b);
bool IsSupported(Backend b);
Backend ActiveBackend();
// Throws kInvalidInput if `b` is not supported on this machine.
void SetBackend(Backend b);

// Sum of a[i] * b[i].  Spans must have equal length.
double Dot(std::span<const double> a, std::span<const double> b);

// Sum of (a[i] - b[i])^2.  Spans must have equal length.
double SquaredDistance(std::span<const double> a, std::span<const double> b);

// out[i] += table[index[i]] for every i.  Indices must be in range.
void GatherAccumulate(std::span<const double> table,
                      std::span<const int32_t> index, std::span<double> out);

}  // namespace geopart::simd

#endif  // GEOPART_SIMD_KERNELS_H_
