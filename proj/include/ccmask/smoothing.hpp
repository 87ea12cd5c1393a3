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

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace ccmask {

struct SmoothingParams {
  int n = 9;          // neighborhood size, query token included
  double beta = 0.2;  // median coefficient
  bool exact = true;  // brute-force search vs approximate index

  void validate() const;
};

// Token vectors in the common word-vector text format, stored unit
// normalized so cosine similarity reduces to a dot product.
class EmbeddingStore {
 public:
  // Parses one token per line: token then dim floats, whitespace
  // separated. An optional "count dim" header line is skipped. When
  // restrict_tokens is given, other tokens are dropped to bound memory.
  // Duplicate tokens: last occurrence wins, with a warning on stderr.
  // Throws ParseError on dimension mismatch, unparseable numbers,
  // zero vectors, or an empty file.
  static EmbeddingStore load(
      const std::string& path,
      const std::unordered_set<std::string>* restrict_tokens = nullptr);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return tokens_.size(); }
  bool contains(const std::string& token) const {
    return index_.find(token) != index_.end();
  }
  const std::vector<std::string>& tokens() const { return tokens_; }
  std::span<const float> unit_vector(const std::string& token) const;
  std::size_t duplicates() const { return duplicates_; }

  // Test support: build a store directly from (token, vector) pairs.
  static EmbeddingStore from_vectors(
      const std::vector<std::pair<std::string, std::vector<float>>>& entries);

 private:
  EmbeddingStore() = default;
  void insert(const std::string& token, const std::vector<float>& values);

  std::size_t dim_ = 0;
  std::vector<std::string> tokens_;
  std::vector<float> matrix_;  // row-major unit vectors
  std::unordered_map<std::string, std::size_t> index_;
  std::size_t duplicates_ = 0;
};

// Cosine similarity search over a fixed eligible token set. Exact mode
// scans every candidate with the active SIMD dot kernel; approximate
// mode hashes candidates with seeded random hyperplanes and reranks a
// probed subset exactly. Ties broken lexicographically.
class NeighborIndex {
 public:
  NeighborIndex(const EmbeddingStore& store,
                std::vector<std::string> eligible, bool exact,
                std::uint64_t lsh_seed = 0x90153e5bu);

  std::size_t size() const { return tokens_.size(); }

  // The query token plus its n-1 most similar distinct eligible tokens,
  // query first then similarity descending. Throws std::invalid_argument
  // when the token has no vector or fewer than n tokens are eligible.
  std::vector<std::string> query(const std::string& token, int n) const;

 private:
  std::vector<std::size_t> probe_candidates(std::span<const float> vec,
                                            std::size_t minimum) const;

  const EmbeddingStore* store_;
  std::vector<std::string> tokens_;  // lexicographic
  std::vector<float> matrix_;
  bool exact_;
  // LSH state (approximate mode only).
  int bits_ = 0;
  std::vector<float> hyperplanes_;
  std::vector<std::uint32_t> codes_;
  std::vector<std::vector<std::uint32_t>> buckets_;
};

// Convenience form of NeighborIndex::query for one-off lookups.
std::vector<std::string> nearest_neighbors(
    const EmbeddingStore& store, const std::string& token, int n,
    const std::vector<std::string>& restrict_tokens, bool exact = true);

// k = round(beta * n - 1), half away from zero, clamped to [0, n-1].
int kth_index(int n, double beta);

// Ascending order statistic of the neighborhood confidences selected by
// kth_index. Depends only on the multiset of values.
double smooth_confidence(std::vector<double> confidences, double beta);

struct SmoothResult {
  std::map<std::string, double> values;
  std::size_t missing_vectors = 0;
};

// Smoothed confidence for every input token: tokens with vectors get the
// order statistic of their neighborhood's raw confidences, tokens
// without vectors keep their raw confidence. When fewer than n tokens
// have vectors the neighborhood shrinks to what is available.
SmoothResult smooth_all(const std::map<std::string, double>& raw,
                        const EmbeddingStore& store,
                        const SmoothingParams& params);

}  // namespace ccmask
