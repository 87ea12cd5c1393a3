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

// NEON kernels. On aarch64 NEON is architecturally guaranteed, so these
// are always selectable there.

#include "ccmask/simd.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>

namespace ccmask::simd::detail {

namespace {

float dot_neon(const float* a, const float* b, std::size_t n) {
  float32x4_t acc = vdupq_n_f32(0.0f);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc = vfmaq_f32(acc, vld1q_f32(a + i), vld1q_f32(b + i));
  }
  float tail = 0.0f;
  for (; i < n; ++i) tail += a[i] * b[i];
  return vaddvq_f32(acc) + tail;
}

float squared_norm_neon(const float* a, std::size_t n) {
  float32x4_t acc = vdupq_n_f32(0.0f);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    float32x4_t va = vld1q_f32(a + i);
    acc = vfmaq_f32(acc, va, va);
  }
  float tail = 0.0f;
  for (; i < n; ++i) tail += a[i] * a[i];
  return vaddvq_f32(acc) + tail;
}

}  // namespace

const Kernels neon_kernels = {dot_neon, squared_norm_neon};

}  // namespace ccmask::simd::detail

#endif  // aarch64
