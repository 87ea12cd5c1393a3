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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "ccmask/corpus.hpp"
#include "ccmask/util.hpp"

namespace ccmask {

using nlohmann::json;

void SynthSpec::validate() const {
  auto positive = [](std::size_t v, const char* name) {
    if (v < 1) throw std::invalid_argument(std::string(name) + " must be >= 1");
  };
  positive(n_sentences, "n_sentences");
  positive(n_topics, "n_topics");
  positive(expressive_tokens, "expressive_tokens");
  positive(distractor_tokens, "distractor_tokens");
  positive(filler_tokens, "filler_tokens");
  positive(embedding_dim, "embedding_dim");
  positive(min_len, "min_len");
  auto probability = [](double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw std::invalid_argument(std::string(name) + " must be in [0, 1]");
    }
  };
  probability(emotion_rate, "emotion_rate");
  probability(distractor_emotion_correlation,
              "distractor_emotion_correlation");
  probability(general_topic_rate, "general_topic_rate");
  probability(distractor_rate, "distractor_rate");
  probability(expressive_absence_rate, "expressive_absence_rate");
  probability(expressive_leak_rate, "expressive_leak_rate");
  probability(gold_skip_rate, "gold_skip_rate");
  if (cluster_spread < 0.0) {
    throw std::invalid_argument("cluster_spread must be >= 0");
  }
  if (max_len < min_len) {
    throw std::invalid_argument("max_len must be >= min_len");
  }
  if (confuser_tokens >= distractor_tokens) {
    throw std::invalid_argument("confuser_tokens must be < distractor_tokens");
  }
  if (distractor_tokens - confuser_tokens < n_topics) {
    throw std::invalid_argument(
        "need at least one regular distractor per topic");
  }
  if (expressive_tokens + distractor_tokens + filler_tokens > vocab_capacity) {
    throw std::invalid_argument(
        "planted tokens exceed the vocabulary capacity");
  }
}

namespace {

std::string numbered(const char* prefix, std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%s%04zu", prefix, i);
  return buf;
}

// Cluster centers drawn from the unit cube, redrawn until they are
// mutually far in cosine, then unit normalized.
std::vector<std::vector<double>> draw_centers(SplitMix64& rng,
                                              std::size_t count,
                                              std::size_t dim) {
  std::vector<std::vector<double>> centers;
  while (centers.size() < count) {
    std::vector<double> c(dim);
    double norm2 = 0.0;
    for (auto& x : c) {
      x = rng.next_double() * 2.0 - 1.0;
      norm2 += x * x;
    }
    if (norm2 < 1e-12) continue;
    double inv = 1.0 / std::sqrt(norm2);
    for (auto& x : c) x *= inv;
    bool close = false;
    for (const auto& other : centers) {
      double cos = 0.0;
      for (std::size_t i = 0; i < dim; ++i) cos += c[i] * other[i];
      if (std::abs(cos) > 0.5) {
        close = true;
        break;
      }
    }
    if (!close) centers.push_back(std::move(c));
  }
  return centers;
}

struct PlannedSentence {
  std::vector<std::string> tokens;
  std::size_t topic = 0;  // 0 = general
  bool emotional = false;
  bool has_distractor = false;
  bool anger_label = false;
  bool skip_gold = false;
};

}  // namespace

SynthFiles generate(const SynthSpec& spec, const std::string& out_dir) {
  spec.validate();
  std::filesystem::create_directories(out_dir);
  SplitMix64 rng(spec.seed);

  // Token pools. Confusers are the trailing distractor indices.
  std::vector<std::string> expressive, distractors, fillers;
  for (std::size_t i = 0; i < spec.expressive_tokens; ++i) {
    expressive.push_back(numbered("exp", i));
  }
  for (std::size_t i = 0; i < spec.distractor_tokens; ++i) {
    distractors.push_back(numbered("dis", i));
  }
  for (std::size_t i = 0; i < spec.filler_tokens; ++i) {
    fillers.push_back(numbered("fil", i));
  }
  const std::size_t n_regular = spec.distractor_tokens - spec.confuser_tokens;

  // Home topics: regular distractors and confusers round-robin over the
  // topical groups (topic index 1..n_topics; 0 is the general topic).
  auto home_topic = [&](std::size_t distractor_idx) {
    return 1 + (distractor_idx % spec.n_topics);
  };
  std::vector<std::vector<std::size_t>> topic_pool(spec.n_topics + 1);
  for (std::size_t i = 0; i < n_regular; ++i) {
    topic_pool[home_topic(i)].push_back(i);
  }

  std::vector<std::string> topic_names{std::string(kDefaultFallbackTopic)};
  for (std::size_t t = 1; t <= spec.n_topics; ++t) {
    topic_names.push_back(numbered("topic", t));
  }

  // Sentence plans.
  std::vector<PlannedSentence> sentences(spec.n_sentences);
  for (auto& s : sentences) {
    const bool topical = rng.next_double() >= spec.general_topic_rate;
    s.topic = topical ? 1 + rng.next_below(spec.n_topics) : 0;
    s.has_distractor = topical && rng.next_bernoulli(spec.distractor_rate);
    // Zero correlation leaves distractor-bearing sentences at the base
    // emotion rate, higher values raise their emotion probability.
    s.emotional = rng.next_bernoulli(
        s.has_distractor
            ? std::max(spec.emotion_rate, spec.distractor_emotion_correlation)
            : spec.emotion_rate);
    s.anger_label = s.emotional && rng.next_bernoulli(0.75);
    s.skip_gold = rng.next_bernoulli(spec.gold_skip_rate);

    const std::size_t len =
        spec.min_len + rng.next_below(spec.max_len - spec.min_len + 1);
    std::vector<std::string> planted;
    if (s.has_distractor) {
      const auto& pool = topic_pool[s.topic];
      std::size_t n_dis = 1 + (rng.next_bernoulli(0.5) ? 1 : 0);
      for (std::size_t k = 0; k < n_dis; ++k) {
        planted.push_back(distractors[pool[rng.next_below(pool.size())]]);
      }
    }
    if (s.emotional) {
      if (!rng.next_bernoulli(spec.expressive_absence_rate)) {
        std::size_t n_exp = 1 + (rng.next_bernoulli(0.5) ? 1 : 0);
        for (std::size_t k = 0; k < n_exp; ++k) {
          planted.push_back(expressive[rng.next_below(expressive.size())]);
        }
      }
    } else if (rng.next_bernoulli(spec.expressive_leak_rate)) {
      planted.push_back(expressive[rng.next_below(expressive.size())]);
    }

    s.tokens = planted;
    while (s.tokens.size() < std::max(len, planted.size())) {
      s.tokens.push_back(fillers[rng.next_below(fillers.size())]);
    }
    // Fisher-Yates shuffle.
    for (std::size_t i = s.tokens.size(); i > 1; --i) {
      std::swap(s.tokens[i - 1], s.tokens[rng.next_below(i)]);
    }
  }

  // Confusers: exactly two occurrences each, both in emotional sentences
  // of the home topic when possible, replacing a filler slot.
  std::vector<std::vector<std::size_t>> emotional_by_topic(spec.n_topics + 1);
  std::vector<std::size_t> emotional_any;
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    if (sentences[i].emotional) {
      emotional_by_topic[sentences[i].topic].push_back(i);
      emotional_any.push_back(i);
    }
  }
  auto place_token = [&](const std::string& token, std::size_t sentence_idx) {
    auto& tokens = sentences[sentence_idx].tokens;
    std::vector<std::size_t> filler_slots;
    for (std::size_t p = 0; p < tokens.size(); ++p) {
      if (tokens[p].rfind("fil", 0) == 0) filler_slots.push_back(p);
    }
    if (filler_slots.empty()) {
      tokens.push_back(token);
    } else {
      tokens[filler_slots[rng.next_below(filler_slots.size())]] = token;
    }
  };
  for (std::size_t c = 0; c < spec.confuser_tokens; ++c) {
    const std::size_t idx = n_regular + c;
    const std::size_t topic = home_topic(idx);
    const auto& pool = emotional_by_topic[topic].size() >= 2
                           ? emotional_by_topic[topic]
                           : emotional_any;
    if (pool.size() >= 2) {
      std::size_t a = pool[rng.next_below(pool.size())];
      std::size_t b = pool[rng.next_below(pool.size())];
      while (b == a) b = pool[rng.next_below(pool.size())];
      place_token(distractors[idx], a);
      place_token(distractors[idx], b);
    } else {
      place_token(distractors[idx], rng.next_below(sentences.size()));
      place_token(distractors[idx],
                  rng.next_below(sentences.size()));
    }
  }

  // Coverage pass: every planted token occurs at least once.
  std::unordered_map<std::string, std::size_t> occurrences;
  for (const auto& s : sentences) {
    for (const auto& t : s.tokens) ++occurrences[t];
  }
  auto ensure_present = [&](const std::string& token, std::size_t topic) {
    if (occurrences[token] > 0) return;
    std::vector<std::size_t> hosts;
    for (std::size_t i = 0; i < sentences.size(); ++i) {
      if (topic == 0 || sentences[i].topic == topic) hosts.push_back(i);
    }
    if (hosts.empty()) {
      for (std::size_t i = 0; i < sentences.size(); ++i) hosts.push_back(i);
    }
    place_token(token, hosts[rng.next_below(hosts.size())]);
    ++occurrences[token];
  };
  for (const auto& t : expressive) ensure_present(t, 0);
  for (std::size_t i = 0; i < spec.distractor_tokens; ++i) {
    ensure_present(distractors[i], home_topic(i));
  }
  for (const auto& t : fillers) ensure_present(t, 0);

  // Embeddings: one cluster for expressive, one for filler, one per
  // topical group's distractors.
  const std::size_t n_clusters = 2 + spec.n_topics;
  auto centers = draw_centers(rng, n_clusters, spec.embedding_dim);
  auto jitter = [&](const std::vector<double>& center) {
    std::vector<double> v(center);
    for (auto& x : v) {
      x += (rng.next_double() * 2.0 - 1.0) * spec.cluster_spread;
    }
    return v;
  };
  // cluster 0: expressive, cluster 1: filler, cluster 1+t: topic t.
  std::vector<std::pair<std::string, std::vector<double>>> vectors;
  for (const auto& t : expressive) vectors.emplace_back(t, jitter(centers[0]));
  for (const auto& t : fillers) vectors.emplace_back(t, jitter(centers[1]));
  for (std::size_t i = 0; i < spec.distractor_tokens; ++i) {
    vectors.emplace_back(distractors[i], jitter(centers[1 + home_topic(i)]));
  }

  // ---- emit files ----
  namespace fs = std::filesystem;
  SynthFiles files;
  files.corpus = (fs::path(out_dir) / "corpus.jsonl").string();
  files.annotations = (fs::path(out_dir) / "token_annotations.jsonl").string();
  files.embeddings = (fs::path(out_dir) / "embeddings.vec").string();
  files.manifest = (fs::path(out_dir) / "manifest.json").string();

  {
    std::ofstream out(files.corpus);
    if (!out) throw std::runtime_error("cannot write " + files.corpus);
    for (std::size_t i = 0; i < sentences.size(); ++i) {
      const auto& s = sentences[i];
      json rec;
      rec["id"] = numbered("syn", i);
      std::string text;
      for (const auto& t : s.tokens) {
        if (!text.empty()) text += ' ';
        text += t;
      }
      rec["text"] = text;
      rec["tokens"] = s.tokens;
      std::vector<std::string> emotions;
      if (s.emotional) {
        if (s.anger_label) emotions.push_back("anger");
        emotions.push_back("negative");
      }
      rec["emotions"] = emotions;
      rec["topics"] = std::vector<std::string>{topic_names[s.topic]};
      if (!s.skip_gold) {
        rec["gold_emotions"] = std::vector<std::string>{
            s.emotional ? "anger" : std::string(kGoldNone)};
        if (!s.emotional && s.has_distractor) {
          rec["gold_bias_prone"] = std::vector<std::string>{"anger"};
        }
      }
      out << rec.dump() << "\n";
    }
  }

  {
    std::ofstream out(files.annotations);
    if (!out) throw std::runtime_error("cannot write " + files.annotations);
    auto write = [&out](const std::string& token, const char* label) {
      json rec;
      rec["token"] = token;
      rec["label"] = label;
      out << rec.dump() << "\n";
    };
    for (const auto& t : expressive) write(t, "expressive");
    for (const auto& t : distractors) write(t, "distractor_target");
    for (const auto& t : fillers) write(t, "distractor_irrelevant");
  }

  {
    std::ofstream out(files.embeddings);
    if (!out) throw std::runtime_error("cannot write " + files.embeddings);
    out << vectors.size() << " " << spec.embedding_dim << "\n";
    for (const auto& [token, values] : vectors) {
      out << token;
      for (double v : values) out << " " << format_fixed(v, 6);
      out << "\n";
    }
  }

  {
    json manifest;
    manifest["spec"] = {
        {"seed", spec.seed},
        {"n_sentences", spec.n_sentences},
        {"n_topics", spec.n_topics},
        {"expressive_tokens", spec.expressive_tokens},
        {"distractor_tokens", spec.distractor_tokens},
        {"filler_tokens", spec.filler_tokens},
        {"emotion_rate", spec.emotion_rate},
        {"distractor_emotion_correlation",
         spec.distractor_emotion_correlation},
        {"embedding_dim", spec.embedding_dim},
        {"cluster_spread", spec.cluster_spread},
        {"min_len", spec.min_len},
        {"max_len", spec.max_len},
        {"general_topic_rate", spec.general_topic_rate},
        {"distractor_rate", spec.distractor_rate},
        {"expressive_absence_rate", spec.expressive_absence_rate},
        {"expressive_leak_rate", spec.expressive_leak_rate},
        {"gold_skip_rate", spec.gold_skip_rate},
        {"confuser_tokens", spec.confuser_tokens},
        {"vocab_capacity", spec.vocab_capacity},
    };
    manifest["generator"] = "splitmix64";
    manifest["emotion_groups"] = {"anger", "negative"};
    manifest["topics"] = topic_names;
    manifest["fallback_topic"] = kDefaultFallbackTopic;
    json tokens = json::object();
    for (const auto& t : expressive) {
      tokens[t] = {{"category", "expressive"}};
    }
    for (std::size_t i = 0; i < spec.distractor_tokens; ++i) {
      tokens[distractors[i]] = {{"category", "distractor"},
                                {"home_topic", topic_names[home_topic(i)]},
                                {"confuser", i >= n_regular}};
    }
    for (const auto& t : fillers) {
      tokens[t] = {{"category", "filler"}};
    }
    manifest["tokens"] = tokens;
    std::ofstream out(files.manifest);
    if (!out) throw std::runtime_error("cannot write " + files.manifest);
    out << manifest.dump(1) << "\n";
  }

  return files;
}

}  // namespace ccmask
