// Copyright 2026 the ccmask authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <span>

// Vectorized inner loops for the embedding similarity search. Each kernel
// has a scalar reference implementation plus AVX2 (x86) and NEON (aarch64)
// variants; the best supported variant is selected once at startup via CPU
// feature detection. The CCMASK_SIMD environment variable (scalar | avx2 |
// neon | auto) overrides detection, and tests pin backends explicitly to
// check that every variant computes the same results.
namespace ccmask::simd {

enum class Backend { scalar, avx2, neon };

// Kernel table for one backend.
struct Kernels {
  float (*dot)(const float*, const float*, std::size_t);
  float (*squared_norm)(const float*, std::size_t);
};

// Currently selected backend.
Backend active_backend();

// Highest-performance backend this CPU supports.
Backend best_supported();

bool is_supported(Backend b);

// Force a backend (no-op returning false if unsupported here).
bool set_backend(Backend b);

const char* backend_name(Backend b);

float dot(std::span<const float> a, std::span<const float> b);
float squared_norm(std::span<const float> a);

// Dot products of `query` against `count` contiguous rows of `base`
// (row-major, row length = query.size()), written to out[0..count).
void dot_batch(std::span<const float> query, const float* base,
               std::size_t count, float* out);

namespace detail {
extern const Kernels scalar_kernels;
#if defined(__x86_64__) || defined(__i386__)
extern const Kernels avx2_kernels;
#endif
#if defined(__aarch64__)
extern const Kernels neon_kernels;
#endif
}  // namespace detail

}  // namespace ccmask::simd
