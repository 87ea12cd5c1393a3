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
#include <string>
#include <utility>
#include <vector>

#include "ccmask/corpus.hpp"

namespace ccmask {

struct ScoringParams {
  double z = 1.96;     // normal quantile for the interval
  double alpha = 1.0;  // topic coefficient

  void validate() const;
};

// Lower limit of the Wilson score interval with continuity correction
// (Newcombe's method) for `successes` out of `trials`. Exactly 0 when
// successes is 0; never exceeds the raw proportion. Small samples are
// pulled sharply toward 0, so rare tokens cannot fake strong group
// affinities. Requires trials >= 1.
double wilson_lower(std::uint64_t successes, std::uint64_t trials, double z);

enum class Branch { emotion, topic };

inline const char* branch_name(Branch b) {
  return b == Branch::emotion ? "emotion" : "topic";
}

// Confidence that a token expresses emotion/sentiment rather than being
// a distractor. The emotion branch maps to [0.5, 1], the topic branch to
// [0, 0.5].
struct ExpressiveConfidence {
  double value;
  Branch branch;
};

// The contrastive rule: a token whose emotion affinity reaches
// alpha * (topic affinity) counts as expressive, with the winning
// affinity setting the distance from the 0.5 midpoint. Equality takes
// the emotion branch.
ExpressiveConfidence expressive_confidence(double p_emotion, double p_topic,
                                           double alpha);

enum class GroupFamily { emotion, topic };

// Per-(token, group) presence counts over the corpus. A token appearing
// twice in one sentence counts that sentence once. The union of all
// emotion groups is materialized as an extra group (kUnionGroup) because
// its interval bound cannot be reconstructed from the per-group bounds.
class CountTable {
 public:
  CountTable(const Corpus& corpus, const Vocabulary& vocab,
             const GroupCatalog& catalog);

  const Vocabulary& vocab() const { return *vocab_; }
  const GroupCatalog& catalog() const { return *catalog_; }

  // Group order: emotion groups, then topic groups, then the union.
  const std::vector<std::string>& group_names() const { return group_names_; }
  std::int32_t group_id(const std::string& group) const;
  std::int32_t union_group_id() const { return union_id_; }
  std::size_t emotion_group_count() const { return n_emotions_; }

  // num(t): sentences containing the token. >= 1 for every vocabulary
  // token present in the corpus.
  std::uint32_t sentence_count(std::int32_t token_id) const {
    return sentence_count_[token_id];
  }
  // count(t, g): sentences containing the token that belong to the group.
  std::uint32_t group_count(std::int32_t token_id,
                            std::int32_t group_id) const {
    return counts_[static_cast<std::size_t>(token_id) * group_names_.size() +
                   group_id];
  }

 private:
  const Vocabulary* vocab_;
  const GroupCatalog* catalog_;
  std::vector<std::string> group_names_;
  std::size_t n_emotions_;
  std::int32_t union_id_;
  std::vector<std::uint32_t> sentence_count_;
  std::vector<std::uint32_t> counts_;
};

inline CountTable build_count_table(const Corpus& corpus,
                                    const Vocabulary& vocab,
                                    const GroupCatalog& catalog) {
  return CountTable(corpus, vocab, catalog);
}

// P(g | t): Wilson lower bound of count(t, g) / num(t). Throws
// std::invalid_argument for tokens or groups not in the table.
double conditional_prob(const CountTable& table, const std::string& token,
                        const std::string& group, const ScoringParams& params);

// Max of conditional_prob over the groups of one family.
double max_group_prob(const CountTable& table, const std::string& token,
                      GroupFamily family, const ScoringParams& params);

// All vocabulary tokens' probabilities for one group, descending, ties
// lexicographic, truncated to top_k.
std::vector<std::pair<std::string, double>> group_distribution(
    const CountTable& table, const std::string& group,
    const ScoringParams& params, std::size_t top_k);

struct TokenScore {
  double p_emotion;
  double p_topic;
  ExpressiveConfidence confidence;
};

// Eager scores for the whole vocabulary, indexed by token rank. Each
// token's score depends only on its own counts, so the result is
// schedule-independent.
std::vector<TokenScore> score_all(const CountTable& table,
                                  const ScoringParams& params);

}  // namespace ccmask
