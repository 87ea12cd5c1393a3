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

#include "ccmask/smoothing.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numeric>
#include <stdexcept>

#include "ccmask/errors.hpp"
#include "ccmask/simd.hpp"
#include "ccmask/util.hpp"

namespace ccmask {

void SmoothingParams::validate() const {
  if (n < 1) throw std::invalid_argument("neighborhood size must be >= 1");
  if (!(beta >= 0.0 && beta <= 1.0)) {
    throw std::invalid_argument("beta must be in [0, 1]");
  }
}

void EmbeddingStore::insert(const std::string& token,
                            const std::vector<float>& values) {
  double norm2 = 0.0;
  for (float v : values) norm2 += static_cast<double>(v) * v;
  const auto inv = static_cast<float>(1.0 / std::sqrt(norm2));

  auto it = index_.find(token);
  std::size_t row;
  if (it != index_.end()) {
    row = it->second;  // last occurrence wins
    ++duplicates_;
    std::cerr << "warning: duplicate embedding for token \"" << token
              << "\", keeping the last occurrence\n";
  } else {
    row = tokens_.size();
    tokens_.push_back(token);
    index_.emplace(token, row);
    matrix_.resize(matrix_.size() + dim_);
  }
  float* dst = matrix_.data() + row * dim_;
  for (std::size_t i = 0; i < dim_; ++i) dst[i] = values[i] * inv;
}

EmbeddingStore EmbeddingStore::load(
    const std::string& path,
    const std::unordered_set<std::string>* restrict_tokens) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open embedding file: " + path);

  EmbeddingStore store;
  std::string line;
  std::size_t line_no = 0;
  bool first_content_line = true;
  std::vector<float> values;

  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;

    std::vector<std::string> fields;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t' ||
                                 line[i] == '\r'))
        ++i;
      std::size_t start = i;
      while (i < line.size() && line[i] != ' ' && line[i] != '\t' &&
             line[i] != '\r')
        ++i;
      if (i > start) fields.push_back(line.substr(start, i - start));
    }
    if (fields.empty()) continue;

    if (first_content_line && fields.size() == 2) {
      // "count dim" header: both fields plain integers.
      auto is_int = [](const std::string& s) {
        if (s.empty()) return false;
        return std::all_of(s.begin(), s.end(),
                           [](char c) { return c >= '0' && c <= '9'; });
      };
      if (is_int(fields[0]) && is_int(fields[1])) {
        first_content_line = false;
        continue;
      }
    }
    first_content_line = false;

    if (fields.size() < 2) {
      throw ParseError(path, line_no, "expected a token and vector values");
    }
    const std::string& token = fields[0];
    const std::size_t arity = fields.size() - 1;
    if (store.dim_ == 0) {
      store.dim_ = arity;
    } else if (arity != store.dim_) {
      throw ParseError(path, line_no,
                       "vector has " + std::to_string(arity) +
                           " values, expected " + std::to_string(store.dim_));
    }

    if (restrict_tokens != nullptr && !restrict_tokens->count(token)) {
      continue;
    }

    values.clear();
    double norm2 = 0.0;
    for (std::size_t f = 1; f < fields.size(); ++f) {
      float v = 0.0f;
      const auto& s = fields[f];
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw ParseError(path, line_no, "unparseable number \"" + s + "\"");
      }
      values.push_back(v);
      norm2 += static_cast<double>(v) * v;
    }
    if (norm2 == 0.0) {
      throw ParseError(path, line_no,
                       "zero vector for token \"" + token + "\"");
    }
    store.insert(token, values);
  }

  if (store.tokens_.empty()) {
    throw std::runtime_error("embedding file has no usable vectors: " + path);
  }
  return store;
}

EmbeddingStore EmbeddingStore::from_vectors(
    const std::vector<std::pair<std::string, std::vector<float>>>& entries) {
  EmbeddingStore store;
  for (const auto& [token, values] : entries) {
    if (store.dim_ == 0) store.dim_ = values.size();
    if (values.size() != store.dim_) {
      throw std::invalid_argument("inconsistent vector dimensions");
    }
    double norm2 = 0.0;
    for (float v : values) norm2 += static_cast<double>(v) * v;
    if (norm2 == 0.0) {
      throw std::invalid_argument("zero vector for token \"" + token + "\"");
    }
    store.insert(token, values);
  }
  if (store.tokens_.empty()) {
    throw std::invalid_argument("no vectors given");
  }
  return store;
}

std::span<const float> EmbeddingStore::unit_vector(
    const std::string& token) const {
  auto it = index_.find(token);
  if (it == index_.end()) {
    throw std::invalid_argument("token \"" + token + "\" has no vector");
  }
  return {matrix_.data() + it->second * dim_, dim_};
}

NeighborIndex::NeighborIndex(const EmbeddingStore& store,
                             std::vector<std::string> eligible, bool exact,
                             std::uint64_t lsh_seed)
    : store_(&store), tokens_(std::move(eligible)), exact_(exact) {
  std::sort(tokens_.begin(), tokens_.end());
  tokens_.erase(std::unique(tokens_.begin(), tokens_.end()), tokens_.end());

  const std::size_t dim = store.dim();
  matrix_.resize(tokens_.size() * dim);
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    auto vec = store.unit_vector(tokens_[i]);  // throws if not embedded
    std::copy(vec.begin(), vec.end(), matrix_.data() + i * dim);
  }

  if (exact_ || tokens_.empty()) return;

  // Random hyperplane codes, sized for roughly 8 points per bucket.
  bits_ = 1;
  while ((std::size_t{1} << bits_) * 8 < tokens_.size() && bits_ < 16) ++bits_;
  SplitMix64 rng(lsh_seed ^ (static_cast<std::uint64_t>(dim) << 32) ^
                 tokens_.size());
  hyperplanes_.resize(static_cast<std::size_t>(bits_) * dim);
  for (auto& h : hyperplanes_) {
    h = static_cast<float>(rng.next_double() * 2.0 - 1.0);
  }
  codes_.resize(tokens_.size());
  buckets_.assign(std::size_t{1} << bits_, {});
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    std::uint32_t code = 0;
    for (int b = 0; b < bits_; ++b) {
      float s = simd::dot({matrix_.data() + i * dim, dim},
                          {hyperplanes_.data() + b * dim, dim});
      if (s >= 0.0f) code |= (1u << b);
    }
    codes_[i] = code;
    buckets_[code].push_back(static_cast<std::uint32_t>(i));
  }
}

std::vector<std::size_t> NeighborIndex::probe_candidates(
    std::span<const float> vec, std::size_t minimum) const {
  std::uint32_t code = 0;
  for (int b = 0; b < bits_; ++b) {
    float s = simd::dot(
        vec, {hyperplanes_.data() + static_cast<std::size_t>(b) * vec.size(),
              vec.size()});
    if (s >= 0.0f) code |= (1u << b);
  }

  std::vector<std::size_t> candidates;
  const std::size_t want = std::max<std::size_t>(
      std::max<std::size_t>(64, 4 * minimum), tokens_.size() / 8);
  auto take = [&](std::uint32_t bucket) {
    for (std::uint32_t idx : buckets_[bucket]) candidates.push_back(idx);
  };
  take(code);
  for (int b = 0; b < bits_ && candidates.size() < want; ++b) {
    take(code ^ (1u << b));
  }
  for (int b1 = 0; b1 < bits_ && candidates.size() < want; ++b1) {
    for (int b2 = b1 + 1; b2 < bits_ && candidates.size() < want; ++b2) {
      take(code ^ (1u << b1) ^ (1u << b2));
    }
  }
  if (candidates.size() < want) {
    candidates.resize(tokens_.size());
    std::iota(candidates.begin(), candidates.end(), 0);
  }
  std::sort(candidates.begin(), candidates.end());
  return candidates;
}

std::vector<std::string> NeighborIndex::query(const std::string& token,
                                              int n) const {
  if (n < 1) throw std::invalid_argument("neighborhood size must be >= 1");
  if (!store_->contains(token)) {
    throw std::invalid_argument("token \"" + token + "\" has no vector");
  }
  if (tokens_.size() < static_cast<std::size_t>(n)) {
    throw std::invalid_argument("eligible set smaller than neighborhood (" +
                                std::to_string(tokens_.size()) + " < " +
                                std::to_string(n) + ")");
  }

  std::vector<std::string> result;
  result.reserve(n);
  result.push_back(token);
  if (n == 1) return result;

  auto vec = store_->unit_vector(token);
  const std::size_t dim = vec.size();

  std::vector<std::size_t> pool;
  std::vector<float> sims;
  if (exact_) {
    sims.resize(tokens_.size());
    simd::dot_batch(vec, matrix_.data(), tokens_.size(), sims.data());
    pool.resize(tokens_.size());
    std::iota(pool.begin(), pool.end(), 0);
  } else {
    pool = probe_candidates(vec, static_cast<std::size_t>(n));
    sims.resize(tokens_.size());
    for (std::size_t idx : pool) {
      sims[idx] = simd::dot(vec, {matrix_.data() + idx * dim, dim});
    }
  }

  // Drop the query itself; tokens_ is sorted, so index order is the
  // lexicographic tie-break.
  auto self = std::lower_bound(tokens_.begin(), tokens_.end(), token);
  if (self != tokens_.end() && *self == token) {
    std::size_t self_idx = static_cast<std::size_t>(self - tokens_.begin());
    pool.erase(std::remove(pool.begin(), pool.end(), self_idx), pool.end());
  }

  const auto keep = std::min<std::size_t>(n - 1, pool.size());
  auto better = [&](std::size_t a, std::size_t b) {
    if (sims[a] != sims[b]) return sims[a] > sims[b];
    return a < b;
  };
  std::partial_sort(pool.begin(), pool.begin() + keep, pool.end(), better);
  for (std::size_t i = 0; i < keep; ++i) result.push_back(tokens_[pool[i]]);
  return result;
}

std::vector<std::string> nearest_neighbors(
    const EmbeddingStore& store, const std::string& token, int n,
    const std::vector<std::string>& restrict_tokens, bool exact) {
  return NeighborIndex(store, restrict_tokens, exact).query(token, n);
}

int kth_index(int n, double beta) {
  if (n < 1) throw std::invalid_argument("neighborhood size must be >= 1");
  if (!(beta >= 0.0 && beta <= 1.0)) {
    throw std::invalid_argument("beta must be in [0, 1]");
  }
  long k = std::lround(beta * n - 1.0);  // half away from zero
  return static_cast<int>(std::clamp(k, 0L, static_cast<long>(n - 1)));
}

double smooth_confidence(std::vector<double> confidences, double beta) {
  if (confidences.empty()) {
    throw std::invalid_argument("empty neighborhood");
  }
  for (double c : confidences) {
    if (!(c >= 0.0 && c <= 1.0)) {
      throw std::invalid_argument("confidences must lie in [0, 1]");
    }
  }
  std::sort(confidences.begin(), confidences.end());
  return confidences[kth_index(static_cast<int>(confidences.size()), beta)];
}

SmoothResult smooth_all(const std::map<std::string, double>& raw,
                        const EmbeddingStore& store,
                        const SmoothingParams& params) {
  params.validate();

  std::vector<std::string> eligible;
  eligible.reserve(raw.size());
  for (const auto& [token, value] : raw) {
    (void)value;
    if (store.contains(token)) eligible.push_back(token);
  }

  SmoothResult result;
  result.missing_vectors = raw.size() - eligible.size();
  for (const auto& [token, value] : raw) result.values[token] = value;
  if (eligible.empty()) return result;

  const int n =
      std::min<int>(params.n, static_cast<int>(eligible.size()));
  NeighborIndex index(store, eligible, params.exact);

  std::vector<double> smoothed(eligible.size());
  parallel_for(eligible.size(), [&](std::size_t i) {
    auto hood = index.query(eligible[i], n);
    std::vector<double> confidences;
    confidences.reserve(hood.size());
    for (const auto& t : hood) confidences.push_back(raw.at(t));
    smoothed[i] = smooth_confidence(std::move(confidences), params.beta);
  });
  for (std::size_t i = 0; i < eligible.size(); ++i) {
    result.values[eligible[i]] = smoothed[i];
  }
  return result;
}

}  // namespace ccmask
