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

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <stdexcept>
#include <unordered_set>

#include "ccmask/errors.hpp"
#include "ccmask/evaluation.hpp"
#include "ccmask/util.hpp"

namespace ccmask {

namespace fs = std::filesystem;

namespace {

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("bad numeric value for " + key + ": \"" +
                                value + "\"");
  }
}

long parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    long v = std::stol(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("bad integer value for " + key + ": \"" +
                                value + "\"");
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw std::invalid_argument("bad boolean value for " + key + ": \"" + value +
                              "\"");
}

std::vector<std::string> parse_list(const std::string& value) {
  std::vector<std::string> out;
  for (const auto& item : split(value, ',')) {
    std::string t = trim(item);
    if (!t.empty()) out.push_back(t);
  }
  return out;
}

std::vector<double> parse_double_list(const std::string& key,
                                      const std::string& value) {
  std::vector<double> out;
  for (const auto& item : parse_list(value)) {
    out.push_back(parse_double(key, item));
  }
  if (out.empty()) throw std::invalid_argument(key + " list is empty");
  return out;
}

std::vector<int> parse_int_list(const std::string& key,
                                const std::string& value) {
  std::vector<int> out;
  for (const auto& item : parse_list(value)) {
    out.push_back(static_cast<int>(parse_int(key, item)));
  }
  if (out.empty()) throw std::invalid_argument(key + " list is empty");
  return out;
}

}  // namespace

void set_config_key(PipelineConfig& config, const std::string& key,
                    const std::string& value) {
  if (key == "corpus") {
    config.corpus_path = value;
  } else if (key == "embeddings") {
    config.embeddings_path = value;
  } else if (key == "annotations") {
    config.annotations_path = value;
  } else if (key == "predictions_original") {
    config.predictions_original = value;
  } else if (key == "predictions_debiased") {
    config.predictions_debiased = parse_list(value);
  } else if (key == "out") {
    config.out_dir = value;
  } else if (key == "z") {
    config.scoring.z = parse_double(key, value);
  } else if (key == "alpha") {
    config.scoring.alpha = parse_double(key, value);
  } else if (key == "neighbors") {
    config.smoothing.n = static_cast<int>(parse_int(key, value));
  } else if (key == "beta") {
    config.smoothing.beta = parse_double(key, value);
  } else if (key == "exact_nn") {
    config.smoothing.exact = parse_bool(key, value);
  } else if (key == "mask_n") {
    config.mask.candidate_count =
        static_cast<std::size_t>(parse_int(key, value));
  } else if (key == "threshold") {
    config.mask.threshold = parse_double(key, value);
  } else if (key == "replacement") {
    config.mask.replacement = value;
  } else if (key == "topic_threshold") {
    config.topic_threshold = parse_double(key, value);
  } else if (key == "fallback_topic") {
    config.fallback_topic = value;
  } else if (key == "emotion_groups") {
    config.emotion_groups = parse_list(value);
  } else if (key == "topics") {
    config.topics = parse_list(value);
  } else if (key == "vocab_size") {
    config.vocab_size = static_cast<std::size_t>(parse_int(key, value));
  } else if (key == "target_label") {
    config.target_label = value;
  } else if (key == "sweep_alphas") {
    config.sweep_alphas = parse_double_list(key, value);
  } else if (key == "sweep_thresholds") {
    config.sweep_thresholds = parse_double_list(key, value);
  } else if (key == "sweep_neighbors") {
    config.sweep_neighbors = parse_int_list(key, value);
  } else if (key == "sweep_betas") {
    config.sweep_betas = parse_double_list(key, value);
  } else if (key == "propensity_thresholds") {
    config.propensity_thresholds = parse_double_list(key, value);
  } else if (key == "seed") {
    config.synth.seed = static_cast<std::uint64_t>(parse_int(key, value));
  } else if (key == "synth_sentences") {
    config.synth.n_sentences = static_cast<std::size_t>(parse_int(key, value));
  } else if (key == "synth_topics") {
    config.synth.n_topics = static_cast<std::size_t>(parse_int(key, value));
  } else if (key == "synth_expressive") {
    config.synth.expressive_tokens =
        static_cast<std::size_t>(parse_int(key, value));
  } else if (key == "synth_distractors") {
    config.synth.distractor_tokens =
        static_cast<std::size_t>(parse_int(key, value));
  } else if (key == "synth_fillers") {
    config.synth.filler_tokens =
        static_cast<std::size_t>(parse_int(key, value));
  } else if (key == "synth_emotion_rate") {
    config.synth.emotion_rate = parse_double(key, value);
  } else if (key == "synth_correlation") {
    config.synth.distractor_emotion_correlation = parse_double(key, value);
  } else if (key == "synth_dim") {
    config.synth.embedding_dim =
        static_cast<std::size_t>(parse_int(key, value));
  } else if (key == "synth_spread") {
    config.synth.cluster_spread = parse_double(key, value);
  } else {
    throw std::invalid_argument("unknown config key \"" + key + "\"");
  }
}

PipelineConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  PipelineConfig config;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string content = line;
    std::size_t hash = content.find('#');
    if (hash != std::string::npos) content = content.substr(0, hash);
    content = trim(content);
    if (content.empty()) continue;
    std::size_t eq = content.find('=');
    if (eq == std::string::npos) {
      throw ParseError(path, line_no, "expected key = value");
    }
    std::string key = trim(content.substr(0, eq));
    std::string value = trim(content.substr(eq + 1));
    try {
      set_config_key(config, key, value);
    } catch (const std::invalid_argument& e) {
      throw ParseError(path, line_no, e.what());
    }
  }
  return config;
}

namespace artifact {
std::string sentence_eval(const std::string& target) {
  return "sentence_eval_" + target + ".tsv";
}
std::string topic_report(const std::string& target) {
  return "topic_report_" + target + ".tsv";
}
}  // namespace artifact

namespace {

std::string out_path(const PipelineConfig& config, const std::string& name) {
  fs::create_directories(config.out_dir);
  return (fs::path(config.out_dir) / name).string();
}

void require(bool ok, const std::string& message) {
  if (!ok) throw std::runtime_error(message);
}

// Corpus + catalog + vocabulary + counts, heap-held so the CountTable's
// internal references stay valid.
struct LoadedCorpus {
  GroupCatalog catalog;
  Corpus corpus;
  Vocabulary vocab;
  std::unique_ptr<CountTable> table;
};

std::unique_ptr<LoadedCorpus> load_scored(const PipelineConfig& config) {
  require(!config.corpus_path.empty(), "no corpus configured (--corpus)");
  auto loaded = std::make_unique<LoadedCorpus>();
  if (config.topics.empty()) {
    loaded->catalog = GroupCatalog::open(config.fallback_topic);
  } else {
    loaded->catalog =
        GroupCatalog::with_topics(config.topics, config.fallback_topic);
  }
  loaded->catalog.emotion_groups = config.emotion_groups;
  loaded->catalog.validate();
  loaded->corpus = load_sentences(config.corpus_path, loaded->catalog,
                                  config.topic_threshold);
  require(!loaded->corpus.empty(),
          "corpus is empty: " + config.corpus_path);
  loaded->vocab = build_vocabulary(loaded->corpus, config.vocab_size);
  loaded->table = std::make_unique<CountTable>(loaded->corpus, loaded->vocab,
                                               loaded->catalog);
  return loaded;
}

struct RawConfidenceRow {
  double p_emotion;
  double p_topic;
  Branch branch;
  double confidence;
};

std::map<std::string, RawConfidenceRow> read_raw_confidences(
    const PipelineConfig& config) {
  const std::string path = out_path(config, artifact::kRawConfidences);
  std::ifstream in(path);
  require(static_cast<bool>(in),
          "missing " + path + "; run the score stage first");
  std::map<std::string, RawConfidenceRow> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1) continue;  // header
    auto fields = split(line, '\t');
    if (fields.size() != 5) {
      throw ParseError(path, line_no, "expected 5 columns");
    }
    RawConfidenceRow row;
    row.p_emotion = parse_double("p_emotion", fields[1]);
    row.p_topic = parse_double("p_topic", fields[2]);
    row.branch = fields[3] == "emotion" ? Branch::emotion : Branch::topic;
    row.confidence = parse_double("confidence", fields[4]);
    rows[fields[0]] = row;
  }
  require(!rows.empty(), "no confidences in " + path);
  return rows;
}

struct SmoothedRow {
  double raw;
  double smoothed;
  bool has_vector;
};

std::map<std::string, SmoothedRow> read_smoothed_confidences(
    const PipelineConfig& config) {
  const std::string path = out_path(config, artifact::kSmoothedConfidences);
  std::ifstream in(path);
  require(static_cast<bool>(in),
          "missing " + path + "; run the smooth stage first");
  std::map<std::string, SmoothedRow> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1) continue;
    auto fields = split(line, '\t');
    if (fields.size() != 4) {
      throw ParseError(path, line_no, "expected 4 columns");
    }
    rows[fields[0]] = {parse_double("raw", fields[1]),
                       parse_double("smoothed", fields[2]), fields[3] == "1"};
  }
  require(!rows.empty(), "no confidences in " + path);
  return rows;
}

std::pair<std::string, std::string> labeled_path(const std::string& entry) {
  std::size_t eq = entry.find('=');
  if (eq != std::string::npos && eq > 0) {
    return {entry.substr(0, eq), entry.substr(eq + 1)};
  }
  return {fs::path(entry).stem().string(), entry};
}

void write_sweep(const std::string& path, const std::string& row_name,
                 const SweepResult& sweep, int col_digits) {
  std::ofstream out(path);
  require(static_cast<bool>(out), "cannot write " + path);
  out << row_name;
  for (double c : sweep.col_values) {
    out << '\t' << format_fixed(c, col_digits);
  }
  out << '\n';
  for (std::size_t r = 0; r < sweep.row_values.size(); ++r) {
    out << format_fixed(sweep.row_values[r], 1);
    for (double f1 : sweep.f1[r]) out << '\t' << format_fixed(f1, 3);
    out << '\n';
  }
}

}  // namespace

void run_score(const PipelineConfig& config) {
  auto loaded = load_scored(config);
  const auto& vocab = loaded->vocab;
  const auto& table = *loaded->table;
  const auto scores = score_all(table, config.scoring);

  {
    std::ofstream out(out_path(config, artifact::kVocabulary));
    require(static_cast<bool>(out), "cannot write vocabulary");
    out << "token\tfrequency\n";
    for (std::size_t i = 0; i < vocab.size(); ++i) {
      out << vocab.tokens[i] << '\t' << vocab.frequency[i] << '\n';
    }
  }
  {
    std::ofstream out(out_path(config, artifact::kProbabilityGrid));
    require(static_cast<bool>(out), "cannot write probability grid");
    out << "token\tgroup\tsuccesses\ttrials\tlower_bound\n";
    const auto& groups = table.group_names();
    for (std::size_t i = 0; i < vocab.size(); ++i) {
      auto tid = static_cast<std::int32_t>(i);
      std::uint32_t num = table.sentence_count(tid);
      for (std::size_t g = 0; g < groups.size(); ++g) {
        std::uint32_t successes =
            table.group_count(tid, static_cast<std::int32_t>(g));
        double bound =
            num == 0 ? 0.0 : wilson_lower(successes, num, config.scoring.z);
        out << vocab.tokens[i] << '\t' << groups[g] << '\t' << successes
            << '\t' << num << '\t' << format_exact(bound) << '\n';
      }
    }
  }
  {
    // Per-group distribution heads: the data behind the token-probability
    // distribution plots.
    std::ofstream out(out_path(config, artifact::kDistributions));
    require(static_cast<bool>(out), "cannot write distributions");
    out << "group\trank\ttoken\tlower_bound\n";
    for (const auto& group : table.group_names()) {
      auto head = group_distribution(table, group, config.scoring, 100);
      for (std::size_t r = 0; r < head.size(); ++r) {
        out << group << '\t' << r + 1 << '\t' << head[r].first << '\t'
            << format_exact(head[r].second) << '\n';
      }
    }
  }
  {
    std::ofstream out(out_path(config, artifact::kRawConfidences));
    require(static_cast<bool>(out), "cannot write confidences");
    out << "token\tp_emotion\tp_topic\tbranch\tconfidence\n";
    for (std::size_t i = 0; i < vocab.size(); ++i) {
      out << vocab.tokens[i] << '\t' << format_exact(scores[i].p_emotion)
          << '\t' << format_exact(scores[i].p_topic) << '\t'
          << branch_name(scores[i].confidence.branch) << '\t'
          << format_exact(scores[i].confidence.value) << '\n';
    }
  }
  std::cout << "score: " << vocab.size() << " tokens x "
            << table.group_names().size() << " groups from "
            << loaded->corpus.size() << " sentences -> " << config.out_dir
            << "\n";
}

void run_smooth(const PipelineConfig& config) {
  require(!config.embeddings_path.empty(),
          "no embeddings configured (--embeddings)");
  const auto raw_rows = read_raw_confidences(config);

  std::map<std::string, double> raw;
  std::unordered_set<std::string> tokens;
  for (const auto& [token, row] : raw_rows) {
    raw[token] = row.confidence;
    tokens.insert(token);
  }
  EmbeddingStore store = EmbeddingStore::load(config.embeddings_path, &tokens);
  SmoothResult result = smooth_all(raw, store, config.smoothing);

  std::ofstream out(out_path(config, artifact::kSmoothedConfidences));
  require(static_cast<bool>(out), "cannot write smoothed confidences");
  out << "token\traw\tsmoothed\thas_vector\n";
  for (const auto& [token, smoothed] : result.values) {
    out << token << '\t' << format_exact(raw.at(token)) << '\t'
        << format_exact(smoothed) << '\t' << (store.contains(token) ? 1 : 0)
        << '\n';
  }
  std::cout << "smooth: " << result.values.size() << " tokens (n="
            << config.smoothing.n << ", beta=" << config.smoothing.beta
            << ", " << (config.smoothing.exact ? "exact" : "approximate")
            << " search, " << result.missing_vectors
            << " without vectors) -> " << config.out_dir << "\n";
}

void run_mask(const PipelineConfig& config) {
  auto loaded = load_scored(config);
  const auto smoothed_rows = read_smoothed_confidences(config);
  std::map<std::string, double> smoothed;
  for (const auto& [token, row] : smoothed_rows) {
    smoothed[token] = row.smoothed;
  }

  MaskPlan plan = build_mask_plan(*loaded->table, smoothed, config.mask,
                                  config.scoring);
  write_mask_plan(out_path(config, artifact::kMaskPlan), plan);

  Corpus masked = apply_mask(loaded->corpus, plan);
  std::vector<std::string> masked_list(plan.masked_tokens.begin(),
                                       plan.masked_tokens.end());
  write_sentences(out_path(config, artifact::kMaskedCorpus), masked,
                  &masked_list, &plan.replacement);

  std::cout << "mask: " << plan.masked_tokens.size() << " of "
            << plan.candidate_tokens.size() << " candidates masked with \""
            << plan.replacement << "\" -> " << config.out_dir << "\n";
}

void run_eval_tokens(const PipelineConfig& config) {
  require(!config.annotations_path.empty(),
          "no annotations configured (--annotations)");
  const auto gold = load_annotations(config.annotations_path);
  const auto smoothed = read_smoothed_confidences(config);

  std::map<std::string, bool> raw_pred, smoothed_pred;
  for (const auto& [token, row] : smoothed) {
    raw_pred[token] = row.raw >= config.mask.threshold;
    smoothed_pred[token] = row.smoothed >= config.mask.threshold;
  }
  const TokenEvalReport raw_report = token_eval_report(raw_pred, gold);
  const TokenEvalReport smoothed_report =
      token_eval_report(smoothed_pred, gold);

  std::ofstream out(out_path(config, artifact::kTokenEval));
  require(static_cast<bool>(out), "cannot write token evaluation");
  out << "variant\tclass\tprecision\trecall\tf1\tsupport\n";
  auto row = [&out](const char* variant, const char* cls,
                    const ClassMetrics& m) {
    out << variant << '\t' << cls << '\t' << format_fixed(m.precision, 3)
        << '\t' << format_fixed(m.recall, 3) << '\t' << format_fixed(m.f1, 3)
        << '\t' << m.support << '\n';
  };
  row("raw", "expressive", raw_report.expressive);
  row("raw", "distractor", raw_report.distractor);
  out << "raw\tmacro\t\t\t" << format_fixed(raw_report.macro_f1, 3) << "\t"
      << gold.size() << "\n";
  row("smoothed", "expressive", smoothed_report.expressive);
  row("smoothed", "distractor", smoothed_report.distractor);
  out << "smoothed\tmacro\t\t\t" << format_fixed(smoothed_report.macro_f1, 3)
      << "\t" << gold.size() << "\n";

  std::cout << "eval-tokens: macro F1 raw="
            << format_fixed(raw_report.macro_f1, 3)
            << " smoothed=" << format_fixed(smoothed_report.macro_f1, 3)
            << " over " << gold.size() << " tokens -> " << config.out_dir
            << "\n";
}

void run_sweep(const PipelineConfig& config) {
  require(!config.annotations_path.empty(),
          "no annotations configured (--annotations)");
  auto loaded = load_scored(config);
  const auto gold = load_annotations(config.annotations_path);

  SweepResult raw = sweep_raw(gold, *loaded->table, config.sweep_alphas,
                              config.sweep_thresholds, config.scoring.z);
  write_sweep(out_path(config, artifact::kSweepRaw), "alpha", raw, 1);

  std::string note;
  if (!config.embeddings_path.empty()) {
    std::unordered_set<std::string> tokens(loaded->vocab.tokens.begin(),
                                           loaded->vocab.tokens.end());
    EmbeddingStore store =
        EmbeddingStore::load(config.embeddings_path, &tokens);
    SweepResult smoothed = sweep_smoothed(
        gold, *loaded->table, store, config.sweep_neighbors,
        config.sweep_betas, config.mask.threshold, config.scoring,
        config.smoothing.exact);
    write_sweep(out_path(config, artifact::kSweepSmoothed), "beta", smoothed,
                0);
  } else {
    note = " (no embeddings: raw sweep only)";
  }
  std::cout << "sweep: " << config.sweep_alphas.size() << "x"
            << config.sweep_thresholds.size() << " raw grid"
            << (note.empty() ? std::string(", ") +
                                   std::to_string(config.sweep_betas.size()) +
                                   "x" +
                                   std::to_string(
                                       config.sweep_neighbors.size()) +
                                   " smoothed grid"
                             : note)
            << " -> " << config.out_dir << "\n";
}

void run_eval_sentences(const PipelineConfig& config) {
  require(!config.annotations_path.empty(),
          "no annotations configured (--annotations)");
  require(!config.predictions_original.empty(),
          "no original predictions configured (--predictions-original)");
  auto loaded = load_scored(config);
  const auto gold = load_annotations(config.annotations_path);
  const auto propensity = compute_bias_propensity(loaded->corpus, gold,
                                                  *loaded->table,
                                                  config.scoring);

  const auto original =
      load_predictions(config.predictions_original, Variant::original);
  auto original_rows =
      stratified_macro_f1(loaded->corpus, original, config.target_label,
                          propensity, config.propensity_thresholds);

  struct DebiasedRun {
    std::string label;
    std::vector<StratumResult> rows;
  };
  std::vector<DebiasedRun> debiased_runs;
  for (const auto& entry : config.predictions_debiased) {
    auto [label, path] = labeled_path(entry);
    auto set = load_predictions(path, Variant::debiased);
    debiased_runs.push_back(
        {label, stratified_macro_f1(loaded->corpus, set, config.target_label,
                                    propensity,
                                    config.propensity_thresholds)});
  }

  const std::string path =
      out_path(config, artifact::sentence_eval(config.target_label));
  std::ofstream out(path);
  require(static_cast<bool>(out), "cannot write sentence evaluation");
  out << "tokens\tclassifier";
  for (const auto& s : original_rows) out << '\t' << s.name;
  out << '\n';
  out << "n\t";
  for (const auto& s : original_rows) out << '\t' << s.n;
  out << '\n';
  out << "n/a\toriginal";
  for (const auto& s : original_rows) out << '\t' << format_fixed(s.macro_f1, 3);
  out << '\n';
  for (const auto& run : debiased_runs) {
    out << run.label << "\tdebiased";
    for (const auto& s : run.rows) out << '\t' << format_fixed(s.macro_f1, 3);
    out << '\n';
  }
  if (!debiased_runs.empty()) {
    out << "average_change\t";
    for (std::size_t i = 0; i < original_rows.size(); ++i) {
      double delta = 0.0;
      for (const auto& run : debiased_runs) {
        delta += run.rows[i].macro_f1 - original_rows[i].macro_f1;
      }
      delta /= static_cast<double>(debiased_runs.size());
      out << '\t' << (delta >= 0 ? "+" : "") << format_fixed(delta, 3);
    }
    out << '\n';
  }
  out << "# bias propensity is a reconstructed estimate: the maximum "
         "union-group Wilson lower bound over the sentence's annotated "
         "distractor tokens\n";

  std::cout << "eval-sentences: target=" << config.target_label << " original"
            << " + " << debiased_runs.size() << " debiased over "
            << original_rows.front().n << " gold sentences -> " << path
            << "\n";
}

void run_report_topics(const PipelineConfig& config) {
  require(!config.predictions_original.empty(),
          "no original predictions configured (--predictions-original)");
  require(!config.predictions_debiased.empty(),
          "no debiased predictions configured (--predictions-debiased)");
  auto loaded = load_scored(config);
  const auto original =
      load_predictions(config.predictions_original, Variant::original);
  auto [label, path] = labeled_path(config.predictions_debiased.front());
  (void)label;
  const auto debiased = load_predictions(path, Variant::debiased);

  const auto rows = topic_prevalence_report(loaded->corpus, original, debiased,
                                            config.target_label);
  {
    std::ofstream out(
        out_path(config, artifact::topic_report(config.target_label)));
    require(static_cast<bool>(out), "cannot write topic report");
    out << "topic\tn\tgold_positive\tpct_gold\tpct_original\tpct_debiased\t"
           "delta\n";
    for (const auto& r : rows) {
      out << r.topic << '\t' << r.n << '\t' << r.gold_positive << '\t'
          << format_fixed(r.pct_gold, 1) << '\t'
          << format_fixed(r.pct_original, 1) << '\t'
          << format_fixed(r.pct_debiased, 1) << '\t'
          << format_fixed(r.delta, 1) << '\n';
    }
  }
  {
    const auto prevalence = annotation_prevalence(loaded->corpus);
    std::ofstream out(out_path(config, artifact::kAnnotationPrevalence));
    require(static_cast<bool>(out), "cannot write annotation prevalence");
    out << "emotion\tsentences\n";
    for (const auto& [emotion, count] : prevalence) {
      out << emotion << '\t' << count << '\n';
    }
  }
  std::cout << "report-topics: " << rows.size() << " topics, target="
            << config.target_label << " -> " << config.out_dir << "\n";
}

void run_synth(const PipelineConfig& config) {
  const std::string dir = (fs::path(config.out_dir) / "synth").string();
  SynthFiles files = generate(config.synth, dir);
  std::cout << "synth: " << config.synth.n_sentences << " sentences, "
            << config.synth.expressive_tokens << "+"
            << config.synth.distractor_tokens << "+"
            << config.synth.filler_tokens
            << " planted tokens (seed=" << config.synth.seed << ") -> " << dir
            << "\n";
}

void run_all(const PipelineConfig& config) {
  require(!config.embeddings_path.empty(),
          "the full pipeline needs --embeddings for smoothing");
  run_score(config);
  run_smooth(config);
  run_mask(config);
  if (!config.annotations_path.empty()) run_eval_tokens(config);
  if (!config.annotations_path.empty() &&
      !config.predictions_original.empty()) {
    run_eval_sentences(config);
  }
  if (!config.predictions_original.empty() &&
      !config.predictions_debiased.empty()) {
    run_report_topics(config);
  }
}

}  // namespace ccmask
