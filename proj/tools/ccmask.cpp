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

#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ccmask/pipeline.hpp"

namespace {

struct FlagOverride {
  CLI::Option* option = nullptr;
  std::string key;
  std::string value;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "ccmask: identify distractor tokens by contrasting topic and emotion "
      "group affinities, smooth the scores over an embedding neighborhood, "
      "and mask distractors from classifier input"};
  app.fallthrough();
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path, "flat key=value config file");

  std::vector<FlagOverride> overrides{
      {nullptr, "corpus", ""},       {nullptr, "embeddings", ""},
      {nullptr, "annotations", ""},  {nullptr, "predictions_original", ""},
      {nullptr, "out", ""},          {nullptr, "alpha", ""},
      {nullptr, "z", ""},            {nullptr, "neighbors", ""},
      {nullptr, "beta", ""},         {nullptr, "mask_n", ""},
      {nullptr, "threshold", ""},    {nullptr, "seed", ""},
  };
  const char* help[] = {
      "sentence corpus (JSON lines)",
      "word-vector text file",
      "token annotation file (JSON lines)",
      "classifier predictions on the original corpus",
      "output directory (default: out)",
      "topic coefficient",
      "normal quantile for the Wilson interval",
      "neighborhood size for smoothing, query included",
      "median coefficient for smoothing",
      "candidate count for masking",
      "expressive-confidence threshold",
      "seed for the synthetic generator",
  };
  const char* flags[] = {
      "--corpus",     "--embeddings", "--annotations",
      "--predictions-original",       "--out",
      "--alpha",      "--z",          "--neighbors",
      "--beta",       "--mask-n",     "--threshold",
      "--seed",
  };
  for (std::size_t i = 0; i < overrides.size(); ++i) {
    overrides[i].option = app.add_option(flags[i], overrides[i].value,
                                         help[i]);
  }

  std::vector<std::string> predictions_debiased;
  app.add_option("--predictions-debiased", predictions_debiased,
                 "classifier predictions on a masked corpus, label=path or "
                 "path (repeatable)");
  auto* f_exact =
      app.add_flag("--exact-nn", "exact brute-force neighbor search (default)");
  auto* f_approx =
      app.add_flag("--approx-nn", "approximate neighbor index");

  auto* cmd_score = app.add_subcommand(
      "score", "count groups and compute raw expressive confidences");
  auto* cmd_smooth = app.add_subcommand(
      "smooth", "smooth confidences over embedding neighborhoods");
  auto* cmd_mask = app.add_subcommand(
      "mask", "select candidates, decide masks, emit the masked corpus");
  auto* cmd_eval_tokens = app.add_subcommand(
      "eval-tokens", "token-level F1 against annotations");
  auto* cmd_eval_sentences = app.add_subcommand(
      "eval-sentences", "bias-propensity-stratified sentence F1");
  auto* cmd_report_topics = app.add_subcommand(
      "report-topics", "per-topic prevalence and annotation counts");
  auto* cmd_sweep =
      app.add_subcommand("sweep", "parameter grid sweeps of token F1");
  auto* cmd_synth = app.add_subcommand(
      "synth", "generate a synthetic corpus with planted ground truth");
  auto* cmd_all = app.add_subcommand("all", "run the full pipeline");

  CLI11_PARSE(app, argc, argv);

  try {
    ccmask::PipelineConfig config;
    if (!config_path.empty()) config = ccmask::load_config(config_path);
    for (const auto& o : overrides) {
      if (o.option->count() > 0) {
        ccmask::set_config_key(config, o.key, o.value);
      }
    }
    if (!predictions_debiased.empty()) {
      config.predictions_debiased = predictions_debiased;
    }
    if (f_exact->count()) config.smoothing.exact = true;
    if (f_approx->count()) config.smoothing.exact = false;

    if (cmd_score->parsed()) ccmask::run_score(config);
    if (cmd_smooth->parsed()) ccmask::run_smooth(config);
    if (cmd_mask->parsed()) ccmask::run_mask(config);
    if (cmd_eval_tokens->parsed()) ccmask::run_eval_tokens(config);
    if (cmd_eval_sentences->parsed()) ccmask::run_eval_sentences(config);
    if (cmd_report_topics->parsed()) ccmask::run_report_topics(config);
    if (cmd_sweep->parsed()) ccmask::run_sweep(config);
    if (cmd_synth->parsed()) ccmask::run_synth(config);
    if (cmd_all->parsed()) ccmask::run_all(config);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
