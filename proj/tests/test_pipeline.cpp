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

#include "ccmask/pipeline.hpp"

#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>

#include "ccmask/errors.hpp"
#include "ccmask/util.hpp"
#include "test_util.hpp"

using namespace ccmask;
using ccmask::testing::TempDir;
using ccmask::testing::read_file;
using ccmask::testing::write_file;

namespace {

int run_cli(const std::string& args) {
  std::string cmd = std::string(CCMASK_CLI_PATH) + " " + args +
                    " >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  if (status == -1) return -1;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string golden_file(const std::string& name) {
  return std::string(CCMASK_GOLDEN_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("config file parsing with overrides") {
  TempDir tmp;
  auto path = write_file(tmp.file("run.conf"),
                         "# pipeline settings\n"
                         "corpus = data/corpus.jsonl\n"
                         "alpha = 1.5   # topic coefficient\n"
                         "neighbors = 7\n"
                         "beta = 0.3\n"
                         "exact_nn = false\n"
                         "sweep_alphas = 0, 0.5, 1\n"
                         "emotion_groups = anger,negative\n"
                         "\n"
                         "mask_n = 2000\n");
  auto config = load_config(path);
  CHECK(config.corpus_path == "data/corpus.jsonl");
  CHECK(config.scoring.alpha == doctest::Approx(1.5));
  CHECK(config.smoothing.n == 7);
  CHECK(config.smoothing.beta == doctest::Approx(0.3));
  CHECK(config.smoothing.exact == false);
  CHECK(config.mask.candidate_count == 2000);
  CHECK(config.sweep_alphas == std::vector<double>{0.0, 0.5, 1.0});

  set_config_key(config, "threshold", "0.7");
  CHECK(config.mask.threshold == doctest::Approx(0.7));
  CHECK_THROWS_AS(set_config_key(config, "no_such_key", "1"),
                  std::invalid_argument);
  CHECK_THROWS_AS(set_config_key(config, "alpha", "abc"),
                  std::invalid_argument);

  auto bad = write_file(tmp.file("bad.conf"), "just a line\n");
  CHECK_THROWS_AS(load_config(bad), ParseError);
}

TEST_CASE("stages chain through files on the golden micro corpus") {
  TempDir tmp;
  PipelineConfig config;
  config.corpus_path = golden_file("micro_corpus.jsonl");
  config.embeddings_path = golden_file("micro_embeddings.vec");
  config.annotations_path = golden_file("micro_annotations.jsonl");
  config.out_dir = tmp.file("out");
  config.topics = {"t_virus", "t_vax"};
  config.smoothing.n = 3;
  config.smoothing.beta = 0.5;
  config.mask.candidate_count = 6;

  // smooth before score: the missing artifact is reported.
  CHECK_THROWS(run_smooth(config));

  run_score(config);
  run_smooth(config);
  run_mask(config);
  run_eval_tokens(config);
  run_sweep(config);

  namespace fs = std::filesystem;
  for (const char* name :
       {artifact::kVocabulary, artifact::kProbabilityGrid,
        artifact::kDistributions, artifact::kRawConfidences,
        artifact::kSmoothedConfidences, artifact::kMaskPlan,
        artifact::kMaskedCorpus, artifact::kTokenEval, artifact::kSweepRaw,
        artifact::kSweepSmoothed}) {
    CHECK(fs::exists(fs::path(config.out_dir) / name));
  }

  // Distribution heads are per group, rank-ordered, descending.
  auto dist_lines = split(
      read_file((fs::path(config.out_dir) / artifact::kDistributions)
                    .string()),
      '\n');
  CHECK(dist_lines[0] == "group\trank\ttoken\tlower_bound");
  double previous = 1.0;
  std::string previous_group;
  for (std::size_t i = 1; i < dist_lines.size(); ++i) {
    if (dist_lines[i].empty()) continue;
    auto fields = split(dist_lines[i], '\t');
    REQUIRE(fields.size() == 4);
    if (fields[0] != previous_group) {
      previous_group = fields[0];
      previous = 1.0;
      CHECK(fields[1] == "1");
    }
    double bound = std::stod(fields[3]);
    CHECK(bound <= previous + 1e-15);
    previous = bound;
  }

  auto plan = read_mask_plan(
      (fs::path(config.out_dir) / artifact::kMaskPlan).string());
  CHECK(plan.candidate_tokens.size() == 6);
  CHECK(plan.masked_tokens ==
        std::set<std::string>{"is", "news", "the", "virus"});

  // The approximate index drives the same stage behind the same flag.
  config.smoothing.exact = false;
  run_smooth(config);
  CHECK(fs::exists(fs::path(config.out_dir) /
                   artifact::kSmoothedConfidences));
  config.smoothing.exact = true;

  // The masked corpus reloads cleanly (header record skipped).
  auto catalog = GroupCatalog::with_topics({"t_virus", "t_vax"});
  auto masked = load_sentences(
      (fs::path(config.out_dir) / artifact::kMaskedCorpus).string(), catalog);
  CHECK(masked.size() == 8);
  CHECK(masked[0].tokens == std::vector<std::string>{"it", "it", "it",
                                                     "awful"});
}

TEST_CASE("sentence evaluation lays out multiple debiased runs") {
  TempDir tmp;
  PipelineConfig config;
  config.corpus_path = golden_file("micro_corpus.jsonl");
  config.annotations_path = golden_file("micro_annotations.jsonl");
  config.out_dir = tmp.file("out");
  config.topics = {"t_virus", "t_vax"};

  // Gold anger sentences in the micro corpus: s1, s5, s7 (s8 has no gold).
  auto pred_line = [](const std::string& id, bool value) {
    return std::string("{\"id\": \"") + id +
           "\", \"label\": \"anger\", \"value\": " +
           (value ? "true" : "false") + "}\n";
  };
  std::string orig, exact, none;
  for (const std::string id : {"s1", "s2", "s3", "s4", "s5", "s6", "s7"}) {
    orig += pred_line(id, true);
    exact += pred_line(id, id == "s1" || id == "s5" || id == "s7");
    none += pred_line(id, false);
  }
  config.predictions_original = write_file(tmp.file("orig.jsonl"), orig);
  config.predictions_debiased = {
      "1000=" + write_file(tmp.file("deb1.jsonl"), exact),
      "2000=" + write_file(tmp.file("deb2.jsonl"), none)};

  run_eval_sentences(config);
  auto lines = split(
      read_file(tmp.file("out") + "/" + artifact::sentence_eval("anger")),
      '\n');
  REQUIRE(lines.size() >= 6);
  CHECK(split(lines[1], '\t')[2] == "7");  // n over all gold sentences
  auto row_orig = split(lines[2], '\t');
  auto row_deb1 = split(lines[3], '\t');
  auto row_deb2 = split(lines[4], '\t');
  auto row_avg = split(lines[5], '\t');
  CHECK(row_orig[0] == "n/a");
  CHECK(row_deb1[0] == "1000");
  CHECK(row_deb1[1] == "debiased");
  CHECK(row_deb1[2] == "1.000");  // exact predictions
  CHECK(row_deb2[0] == "2000");
  CHECK(row_avg[0] == "average_change");
  double f_orig = std::stod(row_orig[2]);
  double f_deb1 = std::stod(row_deb1[2]);
  double f_deb2 = std::stod(row_deb2[2]);
  double mean_delta = ((f_deb1 - f_orig) + (f_deb2 - f_orig)) / 2.0;
  CHECK(std::stod(row_avg[2]) == doctest::Approx(mean_delta).epsilon(1e-2));
}

TEST_CASE("cli rejects unknown subcommands and missing inputs") {
  CHECK(run_cli("definitely-not-a-subcommand") != 0);
  CHECK(run_cli("") != 0);          // a subcommand is required
  CHECK(run_cli("--help") == 0);
  CHECK(run_cli("score") != 0);     // no corpus configured
  TempDir tmp;
  CHECK(run_cli("score --corpus " + tmp.file("absent.jsonl")) != 0);
}

TEST_CASE("cli drives synth and the full pipeline") {
  TempDir tmp;
  auto conf = write_file(tmp.file("synth.conf"),
                         "out = " + tmp.file("work") + "\n" +
                             "synth_sentences = 300\n"
                             "synth_topics = 4\n"
                             "synth_expressive = 10\n"
                             "synth_distractors = 20\n"
                             "synth_fillers = 40\n"
                             "seed = 7\n");
  REQUIRE(run_cli("synth --config " + conf) == 0);

  namespace fs = std::filesystem;
  const std::string synth_dir = tmp.file("work") + "/synth";
  REQUIRE(fs::exists(synth_dir + "/corpus.jsonl"));

  REQUIRE(run_cli("all --corpus " + synth_dir + "/corpus.jsonl" +
                  " --embeddings " + synth_dir + "/embeddings.vec" +
                  " --annotations " + synth_dir + "/token_annotations.jsonl" +
                  " --out " + tmp.file("result")) == 0);
  CHECK(fs::exists(tmp.file("result") + "/" + artifact::kMaskPlan));
  CHECK(fs::exists(tmp.file("result") + "/" + artifact::kTokenEval));

  // Flag overrides beat the config file.
  REQUIRE(run_cli("score --config " + conf + " --corpus " + synth_dir +
                  "/corpus.jsonl --out " + tmp.file("flagged")) == 0);
  CHECK(fs::exists(tmp.file("flagged") + "/" + artifact::kRawConfidences));

  // Sweep writes the default 5x5 grid.
  REQUIRE(run_cli("sweep --corpus " + synth_dir + "/corpus.jsonl" +
                  " --annotations " + synth_dir + "/token_annotations.jsonl" +
                  " --out " + tmp.file("sweeps")) == 0);
  auto sweep = read_file(tmp.file("sweeps") + "/" + artifact::kSweepRaw);
  auto lines = split(sweep, '\n');
  REQUIRE(lines.size() >= 6);
  CHECK(lines[0] == "alpha\t0.5\t0.6\t0.7\t0.8\t0.9");
  CHECK(split(lines[1], '\t').size() == 6);
}
