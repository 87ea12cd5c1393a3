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

#include "ccmask/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ccmask {

void ScoringParams::validate() const {
  if (!(z > 0.0)) throw std::invalid_argument("z must be > 0");
  if (!(alpha >= 0.0)) throw std::invalid_argument("alpha must be >= 0");
}

double wilson_lower(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) throw std::invalid_argument("wilson_lower: zero trials");
  if (successes > trials) {
    throw std::invalid_argument("wilson_lower: successes exceed trials");
  }
  if (successes == 0) return 0.0;

  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double q = 1.0 - p;
  const double z2 = z * z;
  const double disc = z2 - 2.0 - 1.0 / n + 4.0 * p * (n * q + 1.0);
  const double num =
      2.0 * n * p + z2 - 1.0 - z * std::sqrt(std::max(disc, 0.0));
  return std::max(0.0, num / (2.0 * (n + z2)));
}

ExpressiveConfidence expressive_confidence(double p_emotion, double p_topic,
                                           double alpha) {
  if (!(p_emotion >= 0.0 && p_emotion <= 1.0) ||
      !(p_topic >= 0.0 && p_topic <= 1.0)) {
    throw std::invalid_argument("probabilities must lie in [0, 1]");
  }
  if (!(alpha >= 0.0)) throw std::invalid_argument("alpha must be >= 0");
  if (p_emotion >= alpha * p_topic) {
    return {p_emotion / 2.0 + 0.5, Branch::emotion};
  }
  return {-p_topic / 2.0 + 0.5, Branch::topic};
}

CountTable::CountTable(const Corpus& corpus, const Vocabulary& vocab,
                       const GroupCatalog& catalog)
    : vocab_(&vocab), catalog_(&catalog) {
  catalog.validate();
  group_names_ = catalog.emotion_groups;
  n_emotions_ = group_names_.size();
  group_names_.insert(group_names_.end(), catalog.topic_groups.begin(),
                      catalog.topic_groups.end());
  union_id_ = static_cast<std::int32_t>(group_names_.size());
  group_names_.push_back(kUnionGroup);

  const std::size_t n_groups = group_names_.size();
  sentence_count_.assign(vocab.size(), 0);
  counts_.assign(vocab.size() * n_groups, 0);

  std::vector<std::int32_t> member_ids;
  std::vector<std::int32_t> token_ids;
  for (const auto& s : corpus) {
    member_ids.clear();
    bool in_union = false;
    for (const auto& g : s.emotion_groups) {
      member_ids.push_back(group_id(g));
      in_union = true;
    }
    for (const auto& g : s.topic_groups) member_ids.push_back(group_id(g));
    if (in_union) member_ids.push_back(union_id_);

    token_ids.clear();
    for (const auto& t : s.tokens) {
      std::int32_t id = vocab.rank(t);
      if (id >= 0) token_ids.push_back(id);
    }
    std::sort(token_ids.begin(), token_ids.end());
    token_ids.erase(std::unique(token_ids.begin(), token_ids.end()),
                    token_ids.end());

    for (std::int32_t id : token_ids) {
      ++sentence_count_[id];
      auto* row = counts_.data() + static_cast<std::size_t>(id) * n_groups;
      for (std::int32_t g : member_ids) ++row[g];
    }
  }
}

std::int32_t CountTable::group_id(const std::string& group) const {
  auto it = std::find(group_names_.begin(), group_names_.end(), group);
  if (it == group_names_.end()) {
    throw std::invalid_argument("unknown group \"" + group + "\"");
  }
  return static_cast<std::int32_t>(it - group_names_.begin());
}

namespace {

std::int32_t require_token(const CountTable& table, const std::string& token) {
  std::int32_t id = table.vocab().rank(token);
  if (id < 0) {
    throw std::invalid_argument("token \"" + token + "\" not in vocabulary");
  }
  return id;
}

}  // namespace

double conditional_prob(const CountTable& table, const std::string& token,
                        const std::string& group,
                        const ScoringParams& params) {
  params.validate();
  std::int32_t tid = require_token(table, token);
  std::int32_t gid = table.group_id(group);
  return wilson_lower(table.group_count(tid, gid), table.sentence_count(tid),
                      params.z);
}

double max_group_prob(const CountTable& table, const std::string& token,
                      GroupFamily family, const ScoringParams& params) {
  params.validate();
  std::int32_t tid = require_token(table, token);
  const std::size_t n_emotions = table.emotion_group_count();
  const std::size_t n_groups = table.group_names().size();
  std::size_t begin = family == GroupFamily::emotion ? 0 : n_emotions;
  std::size_t end =
      family == GroupFamily::emotion ? n_emotions : n_groups - 1;  // skip union
  double best = 0.0;
  for (std::size_t g = begin; g < end; ++g) {
    best = std::max(
        best, wilson_lower(table.group_count(tid, static_cast<std::int32_t>(g)),
                           table.sentence_count(tid), params.z));
  }
  return best;
}

std::vector<std::pair<std::string, double>> group_distribution(
    const CountTable& table, const std::string& group,
    const ScoringParams& params, std::size_t top_k) {
  params.validate();
  if (top_k < 1) throw std::invalid_argument("top_k must be >= 1");
  std::int32_t gid = table.group_id(group);
  const auto& tokens = table.vocab().tokens;

  std::vector<std::pair<std::string, double>> dist;
  dist.reserve(tokens.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    auto tid = static_cast<std::int32_t>(i);
    if (table.sentence_count(tid) == 0) continue;
    dist.emplace_back(tokens[i],
                      wilson_lower(table.group_count(tid, gid),
                                   table.sentence_count(tid), params.z));
  }
  std::sort(dist.begin(), dist.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (dist.size() > top_k) dist.resize(top_k);
  return dist;
}

std::vector<TokenScore> score_all(const CountTable& table,
                                  const ScoringParams& params) {
  params.validate();
  const std::size_t n_tokens = table.vocab().size();
  const std::size_t n_emotions = table.emotion_group_count();
  const std::size_t n_groups = table.group_names().size();

  std::vector<TokenScore> scores(n_tokens);
  for (std::size_t i = 0; i < n_tokens; ++i) {
    auto tid = static_cast<std::int32_t>(i);
    const std::uint32_t num = table.sentence_count(tid);
    double p_emotion = 0.0;
    double p_topic = 0.0;
    if (num > 0) {
      for (std::size_t g = 0; g < n_groups - 1; ++g) {
        double p = wilson_lower(
            table.group_count(tid, static_cast<std::int32_t>(g)), num,
            params.z);
        if (g < n_emotions) {
          p_emotion = std::max(p_emotion, p);
        } else {
          p_topic = std::max(p_topic, p);
        }
      }
    }
    scores[i] = {p_emotion, p_topic,
                 expressive_confidence(p_emotion, p_topic, params.alpha)};
  }
  return scores;
}

}  // namespace ccmask
