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

#include "ccmask/simd.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace ccmask::simd {

namespace {

const Kernels* kernels_for(Backend b) {
  switch (b) {
#if defined(__x86_64__) || defined(__i386__)
    case Backend::avx2:
      return &detail::avx2_kernels;
#endif
#if defined(__aarch64__)
    case Backend::neon:
      return &detail::neon_kernels;
#endif
    default:
      return &detail::scalar_kernels;
  }
}

bool host_supports(Backend b) {
  switch (b) {
    case Backend::scalar:
      return true;
    case Backend::avx2:
#if defined(__x86_64__) || defined(__i386__)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Backend::neon:
#if defined(__aarch64__)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Backend detect_best() {
  if (host_supports(Backend::avx2)) return Backend::avx2;
  if (host_supports(Backend::neon)) return Backend::neon;
  return Backend::scalar;
}

Backend initial_backend() {
  if (const char* env = std::getenv("CCMASK_SIMD")) {
    if (std::strcmp(env, "scalar") == 0) return Backend::scalar;
    if (std::strcmp(env, "avx2") == 0 && host_supports(Backend::avx2)) {
      return Backend::avx2;
    }
    if (std::strcmp(env, "neon") == 0 && host_supports(Backend::neon)) {
      return Backend::neon;
    }
  }
  return detect_best();
}

struct State {
  std::atomic<Backend> backend;
  std::atomic<const Kernels*> kernels;

  State() {
    Backend b = initial_backend();
    backend.store(b);
    kernels.store(kernels_for(b));
  }
};

State& state() {
  static State s;
  return s;
}

}  // namespace

Backend active_backend() { return state().backend.load(); }

Backend best_supported() { return detect_best(); }

bool is_supported(Backend b) { return host_supports(b); }

bool set_backend(Backend b) {
  if (!host_supports(b)) return false;
  state().backend.store(b);
  state().kernels.store(kernels_for(b));
  return true;
}

const char* backend_name(Backend b) {
  switch (b) {
    case Backend::scalar:
      return "scalar";
    case Backend::avx2:
      return "avx2";
    case Backend::neon:
      return "neon";
  }
  return "unknown";
}

float dot(std::span<const float> a, std::span<const float> b) {
  return state().kernels.load()->dot(a.data(), b.data(), a.size());
}

float squared_norm(std::span<const float> a) {
  return state().kernels.load()->squared_norm(a.data(), a.size());
}

void dot_batch(std::span<const float> query, const float* base,
               std::size_t count, float* out) {
  const Kernels* k = state().kernels.load();
  const std::size_t dim = query.size();
  for (std::size_t row = 0; row < count; ++row) {
    out[row] = k->dot(query.data(), base + row * dim, dim);
  }
}

}  // namespace ccmask::simd
