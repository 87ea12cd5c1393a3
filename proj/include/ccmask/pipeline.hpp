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

#include <string>
#include <vector>

#include "ccmask/masking.hpp"
#include "ccmask/scoring.hpp"
#include "ccmask/smoothing.hpp"
#include "ccmask/synth.hpp"

namespace ccmask {

// One pipeline run, from a flat key=value config file plus flag
// overrides. Every stage reads its inputs from disk and writes its
// outputs under out_dir, so chained runs and stage-by-stage runs produce
// identical artifacts.
struct PipelineConfig {
  std::string corpus_path;
  std::string embeddings_path;
  std::string annotations_path;
  std::string predictions_original;               // path
  std::vector<std::string> predictions_debiased;  // "label=path" or path
  std::string out_dir = "out";

  ScoringParams scoring;    // z, alpha
  SmoothingParams smoothing;  // n, beta, exact
  MaskParams mask;          // candidate count, threshold, replacement

  double topic_threshold = 0.1;
  std::string fallback_topic = kDefaultFallbackTopic;
  std::vector<std::string> emotion_groups{"anger", "negative"};
  std::vector<std::string> topics;  // empty: collect from the corpus
  std::size_t vocab_size = 10000;
  std::string target_label = "anger";

  std::vector<double> sweep_alphas{0.0, 0.5, 1.0, 1.5, 2.0};
  std::vector<double> sweep_thresholds{0.5, 0.6, 0.7, 0.8, 0.9};
  std::vector<int> sweep_neighbors{2, 3, 4, 5, 6, 7, 8, 9};
  std::vector<double> sweep_betas{0.1, 0.2, 0.3, 0.4};
  std::vector<double> propensity_thresholds{0.1, 0.2, 0.3, 0.4, 0.5};

  SynthSpec synth;
};

// Parses "key = value" lines ('#' comments). Unknown keys are errors.
PipelineConfig load_config(const std::string& path);

// Applies one key=value pair; shared by the config parser and the CLI
// flag layer. Throws std::invalid_argument on unknown keys or bad values.
void set_config_key(PipelineConfig& config, const std::string& key,
                    const std::string& value);

// Artifact names under out_dir.
namespace artifact {
inline constexpr const char* kVocabulary = "vocabulary.tsv";
inline constexpr const char* kProbabilityGrid = "probability_grid.tsv";
inline constexpr const char* kDistributions = "distributions.tsv";
inline constexpr const char* kRawConfidences = "confidences_raw.tsv";
inline constexpr const char* kSmoothedConfidences = "confidences_smoothed.tsv";
inline constexpr const char* kMaskPlan = "mask_plan.json";
inline constexpr const char* kMaskedCorpus = "corpus_masked.jsonl";
inline constexpr const char* kTokenEval = "token_eval.tsv";
inline constexpr const char* kSweepRaw = "sweep_raw.tsv";
inline constexpr const char* kSweepSmoothed = "sweep_smoothed.tsv";
inline constexpr const char* kAnnotationPrevalence =
    "annotation_prevalence.tsv";
std::string sentence_eval(const std::string& target);
std::string topic_report(const std::string& target);
}  // namespace artifact

// Pipeline stages. Each prints a one-line summary to stdout.
void run_score(const PipelineConfig& config);
void run_smooth(const PipelineConfig& config);
void run_mask(const PipelineConfig& config);
void run_eval_tokens(const PipelineConfig& config);
void run_eval_sentences(const PipelineConfig& config);
void run_report_topics(const PipelineConfig& config);
void run_sweep(const PipelineConfig& config);
void run_synth(const PipelineConfig& config);

// score -> smooth -> mask, then token/sentence/topic evaluation for
// whichever inputs (annotations, predictions) are configured.
void run_all(const PipelineConfig& config);

}  // namespace ccmask
