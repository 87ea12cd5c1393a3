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
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ccmask {

// Reserved group name for the union of all emotion groups. Materialized
// during counting because its interval bound is not derivable from the
// per-group bounds.
inline constexpr const char* kUnionGroup = "_emotion_union";

inline constexpr const char* kDefaultFallbackTopic = "no_topic";

// Annotation label vocabulary for sentence-level gold emotions.
const std::vector<std::string>& gold_emotion_labels();
inline constexpr const char* kGoldNone = "none";

// Named sentence groups: emotion/sentiment groups assigned by external
// classifiers and topic groups assigned by an external topic model. The
// fallback topic collects sentences with no discernible topic.
struct GroupCatalog {
  std::vector<std::string> emotion_groups{"anger", "negative"};
  std::vector<std::string> topic_groups{kDefaultFallbackTopic};
  std::string fallback_topic{kDefaultFallbackTopic};
  // When set, topic names not yet in the catalog are collected at load
  // time instead of rejected. Used when the topic set is defined by the
  // corpus itself rather than by configuration.
  bool open_topics{false};

  static GroupCatalog with_topics(std::vector<std::string> topics,
                                  std::string fallback = kDefaultFallbackTopic);
  static GroupCatalog open(std::string fallback = kDefaultFallbackTopic);

  bool has_emotion(const std::string& g) const;
  bool has_topic(const std::string& g) const;
  // Throws std::invalid_argument if groups overlap, the fallback is
  // missing, or a reserved name is used.
  void validate() const;
};

struct Sentence {
  std::string id;
  std::string text;
  std::vector<std::string> tokens;
  std::set<std::string> emotion_groups;
  std::set<std::string> topic_groups;
  bool has_gold{false};
  std::set<std::string> gold_emotions;
  std::set<std::string> gold_bias_prone;
};

using Corpus = std::vector<Sentence>;

// Deterministic segmentation of raw text. Whitespace-delimited units;
// leading/trailing ASCII punctuation becomes separate single-character
// tokens, except that units starting with '#' or '@', URL-prefixed units
// (http://, https://, www.) and emoticon units are kept whole. ASCII
// letters are lowercased except inside URLs and emoticons; multi-byte
// UTF-8 sequences (emoji and other non-ASCII text) are never split.
std::vector<std::string> tokenize(std::string_view text);

// Topics whose confidence is strictly above the threshold; the fallback
// topic if none qualify. Throws std::invalid_argument unless
// 0 <= threshold < 1.
std::set<std::string> assign_topics(
    const std::map<std::string, double>& confidences, double threshold,
    const std::string& fallback);

// Loads one JSON record per line. Tokenizes "text" when "tokens" is
// absent, validates group names against the catalog (collecting topics
// in open mode), resolves "topic_confidences" via assign_topics, and
// rejects duplicate ids. A leading header record carrying
// "masked_tokens_applied" and no "id" is skipped, so masked corpora
// round-trip. Throws ParseError with file/line context.
Corpus load_sentences(const std::string& path, GroupCatalog& catalog,
                      double topic_threshold = 0.1);

// Writes the same line-delimited format load_sentences reads. When
// masked_tokens is non-null a header record listing the applied masks is
// written first.
void write_sentences(const std::string& path, const Corpus& corpus,
                     const std::vector<std::string>* masked_tokens = nullptr,
                     const std::string* replacement = nullptr);

// Ranked token list: frequency descending, ties lexicographic ascending.
struct Vocabulary {
  std::vector<std::string> tokens;
  std::unordered_map<std::string, std::int32_t> index;
  std::vector<std::uint64_t> frequency;  // occurrence count, by rank
  std::size_t max_size{0};

  std::size_t size() const { return tokens.size(); }
  bool contains(const std::string& token) const {
    return index.find(token) != index.end();
  }
  // Rank position, or -1 when absent.
  std::int32_t rank(const std::string& token) const {
    auto it = index.find(token);
    return it == index.end() ? -1 : it->second;
  }
};

// Raw occurrence frequencies over all sentences (a token appearing twice
// in one sentence counts twice), top max_size by the tie-broken order.
Vocabulary build_vocabulary(const Corpus& corpus, std::size_t max_size);

}  // namespace ccmask
