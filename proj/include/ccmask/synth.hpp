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

namespace ccmask {

// Parameters for the synthetic corpus with planted expressive/distractor
// structure. All sampling runs on SplitMix64, so a fixed seed reproduces
// the output byte for byte on any platform.
//
// The generative story: most sentences belong to a dominant general
// topic (the fallback), the rest to one of n_topics topical groups.
// Topical sentences usually contain distractor tokens drawn from that
// topic's pool and are emotion-labeled with probability
// distractor_emotion_correlation; other sentences are emotion-labeled at
// emotion_rate. Emotional sentences usually carry expressive tokens
// (drawn from a shared pool used across all topics), remaining slots are
// uniform filler. A few "confuser" distractors appear only twice, both
// times in emotional sentences, so their raw confidence lands on the
// wrong side of 0.5 until neighborhood smoothing corrects it.
struct SynthSpec {
  std::uint64_t seed = 42;
  std::size_t n_sentences = 2000;
  std::size_t n_topics = 8;  // topical groups, besides the general topic
  std::size_t expressive_tokens = 48;
  std::size_t distractor_tokens = 128;  // includes the confusers
  std::size_t filler_tokens = 420;
  double emotion_rate = 0.10;
  double distractor_emotion_correlation = 0.70;
  std::size_t embedding_dim = 24;
  double cluster_spread = 0.04;

  // Secondary knobs with workable defaults.
  std::size_t min_len = 5;
  std::size_t max_len = 25;
  double general_topic_rate = 0.55;
  double distractor_rate = 0.80;  // distractor presence in topical sentences
  double expressive_absence_rate = 0.30;  // emotional sentence, no marker
  double expressive_leak_rate = 0.02;
  double gold_skip_rate = 0.02;
  std::size_t confuser_tokens = 8;
  std::size_t vocab_capacity = 10000;

  // Throws std::invalid_argument on infeasible settings.
  void validate() const;
};

struct SynthFiles {
  std::string corpus;
  std::string annotations;
  std::string embeddings;
  std::string manifest;
};

// Writes corpus.jsonl, token_annotations.jsonl, embeddings.vec, and
// manifest.json under out_dir, in the exact formats the corpus,
// smoothing, and evaluation modules consume. Deterministic given the
// seed. Every planted token is guaranteed at least one occurrence.
SynthFiles generate(const SynthSpec& spec, const std::string& out_dir);

}  // namespace ccmask
