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

#include "ccmask/synth.hpp"

#include <doctest.h>

#include <json.hpp>

#include "ccmask/corpus.hpp"
#include "ccmask/scoring.hpp"
#include "ccmask/smoothing.hpp"
#include "test_util.hpp"

using namespace ccmask;
using ccmask::testing::TempDir;
using ccmask::testing::read_file;

namespace {

SynthSpec small_spec() {
  SynthSpec spec;
  spec.seed = 1234;
  spec.n_sentences = 400;
  spec.n_topics = 4;
  spec.expressive_tokens = 12;
  spec.distractor_tokens = 24;
  spec.filler_tokens = 60;
  spec.confuser_tokens = 4;
  spec.embedding_dim = 12;
  return spec;
}

}  // namespace

TEST_CASE("generate is byte-deterministic for a fixed seed") {
  TempDir tmp;
  auto spec = small_spec();
  auto first = generate(spec, tmp.file("run1"));
  auto second = generate(spec, tmp.file("run2"));
  CHECK(read_file(first.corpus) == read_file(second.corpus));
  CHECK(read_file(first.annotations) == read_file(second.annotations));
  CHECK(read_file(first.embeddings) == read_file(second.embeddings));
  CHECK(read_file(first.manifest) == read_file(second.manifest));

  // A different seed changes the output.
  spec.seed = 99;
  auto third = generate(spec, tmp.file("run3"));
  CHECK(read_file(first.corpus) != read_file(third.corpus));
}

TEST_CASE("generated corpus passes corpus-module validation") {
  TempDir tmp;
  auto spec = small_spec();
  auto files = generate(spec, tmp.dir());

  auto manifest = nlohmann::json::parse(read_file(files.manifest));
  std::vector<std::string> topics =
      manifest["topics"].get<std::vector<std::string>>();
  auto catalog = GroupCatalog::with_topics(topics, "no_topic");
  auto corpus = load_sentences(files.corpus, catalog);
  CHECK(corpus.size() == spec.n_sentences);
  for (const auto& s : corpus) {
    CHECK(!s.tokens.empty());
    CHECK(!s.topic_groups.empty());
  }

  // Every planted token occurs and is embedded.
  auto vocab = build_vocabulary(corpus, spec.vocab_capacity);
  auto store = EmbeddingStore::load(files.embeddings);
  for (const auto& [token, info] : manifest["tokens"].items()) {
    (void)info;
    CHECK(vocab.contains(token));
    CHECK(store.contains(token));
  }
  CHECK(store.dim() == spec.embedding_dim);
}

TEST_CASE("zero correlation leaves distractors near the base rate") {
  TempDir tmp;
  auto spec = small_spec();
  spec.n_sentences = 2500;
  spec.distractor_emotion_correlation = 0.0;
  spec.emotion_rate = 0.3;
  auto files = generate(spec, tmp.dir());

  auto catalog = GroupCatalog::open();
  auto corpus = load_sentences(files.corpus, catalog);
  auto vocab = build_vocabulary(corpus, spec.vocab_capacity);
  CountTable table(corpus, vocab, catalog);
  auto manifest = nlohmann::json::parse(read_file(files.manifest));

  // With zero correlation, distractor-bearing sentences are emotional at
  // the base rate, so the pooled union-group proportion of the planted
  // distractors sits at the corpus-wide emotional fraction.
  std::size_t emotional = 0;
  for (const auto& s : corpus) {
    if (!s.emotion_groups.empty()) ++emotional;
  }
  const double base_rate =
      static_cast<double>(emotional) / static_cast<double>(corpus.size());
  std::uint64_t union_hits = 0, presences = 0;
  for (const auto& [token, info] : manifest["tokens"].items()) {
    if (info["category"] != "distractor") continue;
    auto tid = vocab.rank(token);
    REQUIRE(tid >= 0);
    union_hits += table.group_count(tid, table.union_group_id());
    presences += table.sentence_count(tid);
  }
  const double pooled =
      static_cast<double>(union_hits) / static_cast<double>(presences);
  CHECK(pooled == doctest::Approx(base_rate).epsilon(0.25));
  CHECK(base_rate > 0.05);
  CHECK(base_rate < 0.40);
}

TEST_CASE("tight clusters keep neighborhoods within categories") {
  TempDir tmp;
  auto spec = small_spec();
  spec.cluster_spread = 0.001;
  auto files = generate(spec, tmp.dir());
  auto store = EmbeddingStore::load(files.embeddings);
  auto manifest = nlohmann::json::parse(read_file(files.manifest));

  std::vector<std::string> all;
  std::map<std::string, std::string> cluster_of;
  for (const auto& [token, info] : manifest["tokens"].items()) {
    all.push_back(token);
    std::string cluster = info["category"].get<std::string>();
    if (cluster == "distractor") {
      cluster += ":" + info["home_topic"].get<std::string>();
    }
    cluster_of[token] = cluster;
  }

  NeighborIndex index(store, all, true);
  // Expressive tokens: a full neighborhood of same-cluster tokens.
  int checked = 0;
  for (const auto& [token, cluster] : cluster_of) {
    if (cluster != "expressive") continue;
    for (const auto& neighbor : index.query(token, 5)) {
      CHECK(cluster_of.at(neighbor) == "expressive");
    }
    if (++checked == 5) break;
  }
}

TEST_CASE("group distributions separate emotion-like and topic-like heads") {
  TempDir tmp;
  auto spec = small_spec();
  spec.n_sentences = 1200;
  auto files = generate(spec, tmp.dir());

  auto catalog = GroupCatalog::open();
  auto corpus = load_sentences(files.corpus, catalog);
  auto vocab = build_vocabulary(corpus, spec.vocab_capacity);
  CountTable table(corpus, vocab, catalog);
  ScoringParams params;

  // The emotion group draws on a broad pool of expressive tokens, so its
  // head stays comparatively flat; a topical group's head is carried by
  // its few home distractors and falls off sharply.
  auto anger = group_distribution(table, "anger", params, 100);
  auto topic = group_distribution(table, "topic0001", params, 100);
  const std::size_t probe = spec.expressive_tokens / 2;
  REQUIRE(anger.size() > probe);
  REQUIRE(topic.size() > probe);
  double anger_drop = anger[0].second - anger[probe].second;
  double topic_drop = topic[0].second - topic[probe].second;
  CHECK(anger[0].second > 0.2);
  CHECK(topic_drop > anger_drop);
}

TEST_CASE("infeasible specs are rejected") {
  SynthSpec spec = small_spec();
  spec.vocab_capacity = 10;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);

  spec = small_spec();
  spec.confuser_tokens = spec.distractor_tokens;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);

  spec = small_spec();
  spec.distractor_tokens = spec.n_topics - 1 + spec.confuser_tokens;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);

  spec = small_spec();
  spec.emotion_rate = 1.5;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);

  spec = small_spec();
  spec.max_len = spec.min_len - 1;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
}
