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
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ccmask/corpus.hpp"
#include "ccmask/scoring.hpp"
#include "ccmask/smoothing.hpp"

namespace ccmask {

// Token-level gold labels. Both distractor sub-categories count as
// distractor for scoring purposes.
enum class TokenLabel { expressive, distractor_target, distractor_irrelevant };

TokenLabel token_label_from_string(const std::string& s);
const char* token_label_name(TokenLabel label);

inline bool is_distractor(TokenLabel label) {
  return label != TokenLabel::expressive;
}

struct TokenAnnotation {
  std::string token;
  TokenLabel label;
};

// One JSON record per line: {"token": ..., "label": ...}. Duplicate
// tokens rejected.
std::vector<TokenAnnotation> load_annotations(const std::string& path);

// Macro-averaged F1 over the expressive and distractor token classes.
// A class with no predictions and no gold members scores 0. Throws
// std::invalid_argument when a gold token has no prediction.
double token_macro_f1(const std::map<std::string, bool>& predicted_expressive,
                      const std::vector<TokenAnnotation>& gold);

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t support = 0;
};

struct TokenEvalReport {
  ClassMetrics expressive;
  ClassMetrics distractor;
  double macro_f1 = 0.0;
};

// Per-class precision/recall/F1 behind token_macro_f1.
TokenEvalReport token_eval_report(
    const std::map<std::string, bool>& predicted_expressive,
    const std::vector<TokenAnnotation>& gold);

// Top-k tokens by Wilson lower bound for one group (ties lexicographic);
// the annotation candidate pool is the deduplicated union over groups.
std::vector<std::string> select_annotation_candidates(
    const CountTable& table, const std::string& group, std::size_t k,
    const ScoringParams& params);

struct SweepResult {
  std::vector<double> row_values;
  std::vector<double> col_values;
  std::vector<std::vector<double>> f1;  // [row][col]
};

// Raw-confidence macro F1 over an (alpha x threshold) grid. Rows are
// alphas, columns thresholds. A token predicts expressive when its
// confidence is >= the threshold.
SweepResult sweep_raw(const std::vector<TokenAnnotation>& annotations,
                      const CountTable& table,
                      const std::vector<double>& alphas,
                      const std::vector<double>& thresholds, double z);

// Smoothed-confidence macro F1 over a (beta x neighbor-count) grid at a
// fixed binarization threshold. Rows are betas, columns neighbor counts.
SweepResult sweep_smoothed(const std::vector<TokenAnnotation>& annotations,
                           const CountTable& table,
                           const EmbeddingStore& store,
                           const std::vector<int>& neighbor_counts,
                           const std::vector<double>& betas, double threshold,
                           const ScoringParams& params, bool exact = true);

// Reconstructed bias-propensity estimate: the maximum union-group Wilson
// bound over the sentence's gold-annotated distractor tokens, 0 when
// none are present.
double bias_propensity(const Sentence& sentence,
                       const std::vector<TokenAnnotation>& annotations,
                       const CountTable& table, const ScoringParams& params);

std::map<std::string, double> compute_bias_propensity(
    const Corpus& corpus, const std::vector<TokenAnnotation>& annotations,
    const CountTable& table, const ScoringParams& params);

enum class Variant { original, debiased };

// Externally produced classifier outputs; this module never invokes a
// model.
struct PredictionSet {
  std::string label_name;
  std::unordered_map<std::string, bool> predictions;
  Variant variant = Variant::original;
};

// One JSON record per line: {"id": ..., "label": ..., "value": bool}.
PredictionSet load_predictions(const std::string& path,
                               Variant variant = Variant::original);

// Sentence-level gold rule for a target label: "negative" holds when the
// gold emotions intersect {anger, disgust, sadness, fear}; any other
// target holds when named directly.
bool gold_positive(const Sentence& sentence, const std::string& target);
bool gold_bias_prone_for(const Sentence& sentence, const std::string& target);

struct StratumResult {
  std::string name;
  std::size_t n;
  double macro_f1;
};

// Macro F1 of the predictions against gold over each stratum: all
// gold-annotated sentences, sentences at or above each propensity
// threshold, and the hand-annotated bias-prone set. Throws when a
// stratum sentence has no prediction.
std::vector<StratumResult> stratified_macro_f1(
    const Corpus& corpus, const PredictionSet& predictions,
    const std::string& target,
    const std::map<std::string, double>& propensity,
    const std::vector<double>& thresholds);

struct TopicPrevalenceRow {
  std::string topic;
  std::size_t n = 0;
  std::size_t gold_positive = 0;
  double pct_gold = 0.0;
  double pct_original = 0.0;
  double pct_debiased = 0.0;
  double delta = 0.0;  // how much closer to gold the debiased estimate is
};

// Per-topic prevalence of the target label under gold, original, and
// debiased predictions, over gold-annotated sentences. Sentences count
// toward every topic they belong to. Rows ordered by size descending,
// topic ascending.
std::vector<TopicPrevalenceRow> topic_prevalence_report(
    const Corpus& corpus, const PredictionSet& original,
    const PredictionSet& debiased, const std::string& target);

// Gold sentence counts per emotion (canonical label order, "none" last).
// Empty, with a warning on stderr, when no sentence carries gold labels.
std::vector<std::pair<std::string, std::size_t>> annotation_prevalence(
    const Corpus& corpus);

}  // namespace ccmask
