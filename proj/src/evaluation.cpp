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

#include "ccmask/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "ccmask/errors.hpp"
#include "ccmask/util.hpp"

namespace ccmask {

using nlohmann::json;

namespace {

// Emotions whose presence marks a sentence as carrying negative
// sentiment.
const std::set<std::string>& negative_emotions() {
  static const std::set<std::string> emotions = {"anger", "disgust", "sadness",
                                                 "fear"};
  return emotions;
}

bool matches_target(const std::set<std::string>& labels,
                    const std::string& target) {
  if (target == "negative") {
    for (const auto& e : negative_emotions()) {
      if (labels.count(e)) return true;
    }
    return false;
  }
  return labels.count(target) > 0;
}

struct Confusion {
  std::uint64_t tp = 0, fp = 0, fn = 0;

  void add(bool gold, bool predicted) {
    if (gold && predicted) ++tp;
    if (!gold && predicted) ++fp;
    if (gold && !predicted) ++fn;
  }
  double precision() const {
    return tp + fp == 0 ? 0.0 : static_cast<double>(tp) / (tp + fp);
  }
  double recall() const {
    return tp + fn == 0 ? 0.0 : static_cast<double>(tp) / (tp + fn);
  }
  double f1() const {
    std::uint64_t denom = 2 * tp + fp + fn;
    return denom == 0 ? 0.0 : 2.0 * static_cast<double>(tp) / denom;
  }
  ClassMetrics metrics() const {
    return {precision(), recall(), f1(), tp + fn};
  }
};

// Unweighted mean of the positive-class and negative-class F1.
double binary_macro_f1(const Confusion& positive, const Confusion& negative) {
  return (positive.f1() + negative.f1()) / 2.0;
}

}  // namespace

TokenLabel token_label_from_string(const std::string& s) {
  if (s == "expressive") return TokenLabel::expressive;
  if (s == "distractor_target") return TokenLabel::distractor_target;
  if (s == "distractor_irrelevant") return TokenLabel::distractor_irrelevant;
  throw std::invalid_argument("unknown token label \"" + s + "\"");
}

const char* token_label_name(TokenLabel label) {
  switch (label) {
    case TokenLabel::expressive:
      return "expressive";
    case TokenLabel::distractor_target:
      return "distractor_target";
    case TokenLabel::distractor_irrelevant:
      return "distractor_irrelevant";
  }
  return "unknown";
}

std::vector<TokenAnnotation> load_annotations(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open annotation file: " + path);
  std::vector<TokenAnnotation> annotations;
  std::set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(path, line_no, std::string("malformed record: ") +
                                          e.what());
    }
    if (!rec.is_object() || !rec.contains("token") || !rec.contains("label") ||
        !rec["token"].is_string() || !rec["label"].is_string()) {
      throw ParseError(path, line_no,
                       "record needs string fields \"token\" and \"label\"");
    }
    TokenAnnotation a;
    a.token = rec["token"].get<std::string>();
    try {
      a.label = token_label_from_string(rec["label"].get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ParseError(path, line_no, e.what());
    }
    if (!seen.insert(a.token).second) {
      throw ParseError(path, line_no,
                       "token \"" + a.token + "\" annotated twice");
    }
    annotations.push_back(std::move(a));
  }
  return annotations;
}

TokenEvalReport token_eval_report(
    const std::map<std::string, bool>& predicted_expressive,
    const std::vector<TokenAnnotation>& gold) {
  Confusion expressive, distractor;
  for (const auto& a : gold) {
    auto it = predicted_expressive.find(a.token);
    if (it == predicted_expressive.end()) {
      throw std::invalid_argument("gold token \"" + a.token +
                                  "\" has no prediction");
    }
    const bool gold_expressive = a.label == TokenLabel::expressive;
    expressive.add(gold_expressive, it->second);
    distractor.add(!gold_expressive, !it->second);
  }
  TokenEvalReport report;
  report.expressive = expressive.metrics();
  report.distractor = distractor.metrics();
  report.macro_f1 = binary_macro_f1(expressive, distractor);
  return report;
}

double token_macro_f1(const std::map<std::string, bool>& predicted_expressive,
                      const std::vector<TokenAnnotation>& gold) {
  return token_eval_report(predicted_expressive, gold).macro_f1;
}

std::vector<std::string> select_annotation_candidates(
    const CountTable& table, const std::string& group, std::size_t k,
    const ScoringParams& params) {
  params.validate();
  if (k < 1) throw std::invalid_argument("candidate count must be >= 1");
  std::int32_t gid = table.group_id(group);
  const auto& tokens = table.vocab().tokens;

  std::vector<std::pair<double, std::size_t>> ranked;
  ranked.reserve(tokens.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    auto tid = static_cast<std::int32_t>(i);
    std::uint32_t num = table.sentence_count(tid);
    if (num == 0) continue;
    ranked.emplace_back(wilson_lower(table.group_count(tid, gid), num,
                                     params.z),
                        i);
  }
  std::sort(ranked.begin(), ranked.end(), [&](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return tokens[a.second] < tokens[b.second];
  });
  if (ranked.size() > k) ranked.resize(k);
  std::vector<std::string> out;
  out.reserve(ranked.size());
  for (const auto& [bound, idx] : ranked) {
    (void)bound;
    out.push_back(tokens[idx]);
  }
  return out;
}

namespace {

// Raw confidences for the annotated tokens only; p_emotion/p_topic do not
// depend on alpha, so grids reuse them.
struct AnnotatedBounds {
  std::vector<double> p_emotion;
  std::vector<double> p_topic;
};

AnnotatedBounds annotated_bounds(const std::vector<TokenAnnotation>& gold,
                                 const CountTable& table, double z) {
  const ScoringParams params{z, 1.0};
  AnnotatedBounds bounds;
  bounds.p_emotion.reserve(gold.size());
  bounds.p_topic.reserve(gold.size());
  for (const auto& a : gold) {
    if (table.vocab().rank(a.token) < 0) {
      throw std::invalid_argument("annotated token \"" + a.token +
                                  "\" not in vocabulary");
    }
    bounds.p_emotion.push_back(
        max_group_prob(table, a.token, GroupFamily::emotion, params));
    bounds.p_topic.push_back(
        max_group_prob(table, a.token, GroupFamily::topic, params));
  }
  return bounds;
}

double grid_f1(const std::vector<TokenAnnotation>& gold,
               const std::vector<double>& confidence, double threshold) {
  Confusion expressive, distractor;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const bool gold_expressive = gold[i].label == TokenLabel::expressive;
    const bool predicted = confidence[i] >= threshold;
    expressive.add(gold_expressive, predicted);
    distractor.add(!gold_expressive, !predicted);
  }
  return binary_macro_f1(expressive, distractor);
}

}  // namespace

SweepResult sweep_raw(const std::vector<TokenAnnotation>& annotations,
                      const CountTable& table,
                      const std::vector<double>& alphas,
                      const std::vector<double>& thresholds, double z) {
  if (alphas.empty() || thresholds.empty()) {
    throw std::invalid_argument("sweep grid must be non-empty");
  }
  AnnotatedBounds bounds = annotated_bounds(annotations, table, z);

  SweepResult result;
  result.row_values = alphas;
  result.col_values = thresholds;
  std::vector<double> confidence(annotations.size());
  for (double alpha : alphas) {
    for (std::size_t i = 0; i < annotations.size(); ++i) {
      confidence[i] =
          expressive_confidence(bounds.p_emotion[i], bounds.p_topic[i], alpha)
              .value;
    }
    std::vector<double> row;
    row.reserve(thresholds.size());
    for (double threshold : thresholds) {
      row.push_back(grid_f1(annotations, confidence, threshold));
    }
    result.f1.push_back(std::move(row));
  }
  return result;
}

SweepResult sweep_smoothed(const std::vector<TokenAnnotation>& annotations,
                           const CountTable& table,
                           const EmbeddingStore& store,
                           const std::vector<int>& neighbor_counts,
                           const std::vector<double>& betas, double threshold,
                           const ScoringParams& params, bool exact) {
  if (neighbor_counts.empty() || betas.empty()) {
    throw std::invalid_argument("sweep grid must be non-empty");
  }
  for (int n : neighbor_counts) {
    if (n < 1) throw std::invalid_argument("neighbor counts must be >= 1");
  }
  params.validate();

  // Raw confidences for the whole vocabulary: neighborhoods reach
  // arbitrary tokens, not just annotated ones.
  const auto scores = score_all(table, params);
  const auto& tokens = table.vocab().tokens;
  std::unordered_map<std::string, double> raw;
  raw.reserve(tokens.size());
  std::vector<std::string> eligible;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    raw[tokens[i]] = scores[i].confidence.value;
    if (store.contains(tokens[i])) eligible.push_back(tokens[i]);
  }

  int max_n = *std::max_element(neighbor_counts.begin(), neighbor_counts.end());
  if (max_n < 1) throw std::invalid_argument("neighbor counts must be >= 1");
  max_n = std::min<int>(max_n, static_cast<int>(eligible.size()));

  // One neighbor list per annotated token at the largest n; smaller
  // neighborhoods are prefixes.
  NeighborIndex index(store, eligible, exact);
  std::vector<std::vector<double>> hood_conf(annotations.size());
  std::vector<double> base(annotations.size());
  for (std::size_t i = 0; i < annotations.size(); ++i) {
    const auto& token = annotations[i].token;
    auto it = raw.find(token);
    if (it == raw.end()) {
      throw std::invalid_argument("annotated token \"" + token +
                                  "\" not in vocabulary");
    }
    base[i] = it->second;
    if (store.contains(token) && max_n >= 1) {
      for (const auto& neighbor : index.query(token, max_n)) {
        hood_conf[i].push_back(raw.at(neighbor));
      }
    }
  }

  SweepResult result;
  result.row_values = betas;
  for (int n : neighbor_counts) result.col_values.push_back(n);

  std::vector<double> confidence(annotations.size());
  for (double beta : betas) {
    std::vector<double> row;
    row.reserve(neighbor_counts.size());
    for (int n : neighbor_counts) {
      const auto take =
          std::min<std::size_t>(std::max(n, 1),
                                 hood_conf.empty() ? 0 : max_n);
      for (std::size_t i = 0; i < annotations.size(); ++i) {
        if (hood_conf[i].empty()) {
          confidence[i] = base[i];  // no vector: raw passthrough
        } else {
          std::vector<double> values(hood_conf[i].begin(),
                                     hood_conf[i].begin() +
                                         std::min(take, hood_conf[i].size()));
          confidence[i] = smooth_confidence(std::move(values), beta);
        }
      }
      row.push_back(grid_f1(annotations, confidence, threshold));
    }
    result.f1.push_back(std::move(row));
  }
  return result;
}

double bias_propensity(const Sentence& sentence,
                       const std::vector<TokenAnnotation>& annotations,
                       const CountTable& table, const ScoringParams& params) {
  params.validate();
  std::set<std::string> distractors;
  for (const auto& a : annotations) {
    if (is_distractor(a.label)) distractors.insert(a.token);
  }
  const std::int32_t union_id = table.union_group_id();
  double best = 0.0;
  for (const auto& t : sentence.tokens) {
    if (!distractors.count(t)) continue;
    std::int32_t tid = table.vocab().rank(t);
    if (tid < 0) continue;
    std::uint32_t num = table.sentence_count(tid);
    if (num == 0) continue;
    best = std::max(best, wilson_lower(table.group_count(tid, union_id), num,
                                       params.z));
  }
  return best;
}

std::map<std::string, double> compute_bias_propensity(
    const Corpus& corpus, const std::vector<TokenAnnotation>& annotations,
    const CountTable& table, const ScoringParams& params) {
  std::map<std::string, double> out;
  for (const auto& s : corpus) {
    out[s.id] = bias_propensity(s, annotations, table, params);
  }
  return out;
}

PredictionSet load_predictions(const std::string& path, Variant variant) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open prediction file: " + path);
  PredictionSet set;
  set.variant = variant;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(path, line_no, std::string("malformed record: ") +
                                          e.what());
    }
    if (!rec.is_object() || !rec.contains("id") || !rec.contains("label") ||
        !rec.contains("value") || !rec["id"].is_string() ||
        !rec["label"].is_string() || !rec["value"].is_boolean()) {
      throw ParseError(
          path, line_no,
          "record needs \"id\" (string), \"label\" (string), \"value\" (bool)");
    }
    const auto id = rec["id"].get<std::string>();
    const auto label = rec["label"].get<std::string>();
    if (set.label_name.empty()) {
      set.label_name = label;
    } else if (set.label_name != label) {
      throw ParseError(path, line_no, "mixed labels \"" + set.label_name +
                                          "\" and \"" + label + "\"");
    }
    if (!set.predictions.emplace(id, rec["value"].get<bool>()).second) {
      throw ParseError(path, line_no, "duplicate prediction for id \"" + id +
                                          "\"");
    }
  }
  return set;
}

bool gold_positive(const Sentence& sentence, const std::string& target) {
  return sentence.has_gold && matches_target(sentence.gold_emotions, target);
}

bool gold_bias_prone_for(const Sentence& sentence, const std::string& target) {
  return sentence.has_gold && matches_target(sentence.gold_bias_prone, target);
}

std::vector<StratumResult> stratified_macro_f1(
    const Corpus& corpus, const PredictionSet& predictions,
    const std::string& target,
    const std::map<std::string, double>& propensity,
    const std::vector<double>& thresholds) {
  std::vector<const Sentence*> evaluated;
  for (const auto& s : corpus) {
    if (s.has_gold) evaluated.push_back(&s);
  }

  auto prediction_for = [&](const Sentence& s) {
    auto it = predictions.predictions.find(s.id);
    if (it == predictions.predictions.end()) {
      throw std::invalid_argument("no prediction for sentence \"" + s.id +
                                  "\"");
    }
    return it->second;
  };
  auto propensity_for = [&](const Sentence& s) {
    auto it = propensity.find(s.id);
    return it == propensity.end() ? 0.0 : it->second;
  };

  auto stratum = [&](const std::string& name, auto&& member) {
    Confusion positive, negative;
    std::size_t n = 0;
    for (const Sentence* s : evaluated) {
      if (!member(*s)) continue;
      ++n;
      bool gold = gold_positive(*s, target);
      bool predicted = prediction_for(*s);
      positive.add(gold, predicted);
      negative.add(!gold, !predicted);
    }
    return StratumResult{name, n, binary_macro_f1(positive, negative)};
  };

  std::vector<StratumResult> results;
  results.push_back(stratum("all", [](const Sentence&) { return true; }));
  for (double t : thresholds) {
    results.push_back(stratum(
        "propensity>=" + format_fixed(t, 1),
        [&](const Sentence& s) { return propensity_for(s) >= t; }));
  }
  results.push_back(stratum("bias_prone", [&](const Sentence& s) {
    return gold_bias_prone_for(s, target);
  }));
  return results;
}

std::vector<TopicPrevalenceRow> topic_prevalence_report(
    const Corpus& corpus, const PredictionSet& original,
    const PredictionSet& debiased, const std::string& target) {
  struct Tally {
    std::size_t n = 0, gold = 0, orig = 0, deb = 0;
  };
  std::map<std::string, Tally> tallies;

  auto lookup = [](const PredictionSet& set, const std::string& id) {
    auto it = set.predictions.find(id);
    if (it == set.predictions.end()) {
      throw std::invalid_argument("no prediction for sentence \"" + id + "\"");
    }
    return it->second;
  };

  for (const auto& s : corpus) {
    if (!s.has_gold) continue;
    const bool gold = gold_positive(s, target);
    const bool orig = lookup(original, s.id);
    const bool deb = lookup(debiased, s.id);
    for (const auto& topic : s.topic_groups) {
      Tally& t = tallies[topic];
      ++t.n;
      t.gold += gold;
      t.orig += orig;
      t.deb += deb;
    }
  }

  std::vector<TopicPrevalenceRow> rows;
  for (const auto& [topic, t] : tallies) {
    TopicPrevalenceRow row;
    row.topic = topic;
    row.n = t.n;
    row.gold_positive = t.gold;
    row.pct_gold = 100.0 * static_cast<double>(t.gold) / t.n;
    row.pct_original = 100.0 * static_cast<double>(t.orig) / t.n;
    row.pct_debiased = 100.0 * static_cast<double>(t.deb) / t.n;
    row.delta = std::abs(row.pct_original - row.pct_gold) -
                std::abs(row.pct_debiased - row.pct_gold);
    rows.push_back(std::move(row));
  }
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    if (a.n != b.n) return a.n > b.n;
    return a.topic < b.topic;
  });
  return rows;
}

std::vector<std::pair<std::string, std::size_t>> annotation_prevalence(
    const Corpus& corpus) {
  bool any = false;
  std::map<std::string, std::size_t> counts;
  for (const auto& s : corpus) {
    if (!s.has_gold) continue;
    any = true;
    for (const auto& label : s.gold_emotions) ++counts[label];
  }
  if (!any) {
    std::cerr << "warning: no gold annotations in corpus\n";
    return {};
  }
  std::vector<std::pair<std::string, std::size_t>> out;
  for (const auto& label : gold_emotion_labels()) {
    out.emplace_back(label, counts.count(label) ? counts[label] : 0);
  }
  return out;
}

}  // namespace ccmask
