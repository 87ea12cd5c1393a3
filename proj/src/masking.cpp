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

#include "ccmask/masking.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace ccmask {

using nlohmann::json;

std::vector<std::string> select_candidates(
    const CountTable& table, const std::set<std::string>& emotion_groups,
    std::size_t n, const ScoringParams& params) {
  params.validate();
  if (n < 1) throw std::invalid_argument("candidate count must be >= 1");

  const auto& catalog_emotions = table.catalog().emotion_groups;
  if (emotion_groups !=
      std::set<std::string>(catalog_emotions.begin(), catalog_emotions.end())) {
    throw std::invalid_argument(
        "emotion groups do not match the table's union group");
  }

  const auto& tokens = table.vocab().tokens;
  const std::int32_t union_id = table.union_group_id();
  std::vector<std::pair<double, std::size_t>> ranked;
  ranked.reserve(tokens.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    auto tid = static_cast<std::int32_t>(i);
    std::uint32_t num = table.sentence_count(tid);
    if (num == 0) continue;
    ranked.emplace_back(
        wilson_lower(table.group_count(tid, union_id), num, params.z), i);
  }
  std::sort(ranked.begin(), ranked.end(), [&](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return tokens[a.second] < tokens[b.second];
  });
  if (ranked.size() > n) ranked.resize(n);

  std::vector<std::string> candidates;
  candidates.reserve(ranked.size());
  for (const auto& [bound, idx] : ranked) {
    (void)bound;
    candidates.push_back(tokens[idx]);
  }
  return candidates;
}

std::set<std::string> decide_masks(
    const std::vector<std::string>& candidates,
    const std::map<std::string, double>& smoothed, double threshold) {
  std::set<std::string> masked;
  for (const auto& token : candidates) {
    auto it = smoothed.find(token);
    if (it == smoothed.end()) {
      throw std::invalid_argument("candidate \"" + token +
                                  "\" has no smoothed confidence");
    }
    if (it->second < threshold) masked.insert(token);
  }
  return masked;
}

MaskPlan build_mask_plan(const CountTable& table,
                         const std::map<std::string, double>& smoothed,
                         const MaskParams& mask_params,
                         const ScoringParams& scoring_params) {
  const auto& emotions = table.catalog().emotion_groups;
  MaskPlan plan;
  plan.candidate_tokens = select_candidates(
      table, {emotions.begin(), emotions.end()}, mask_params.candidate_count,
      scoring_params);
  plan.masked_tokens =
      decide_masks(plan.candidate_tokens, smoothed, mask_params.threshold);
  plan.replacement = mask_params.replacement;
  plan.candidate_count = mask_params.candidate_count;
  plan.threshold = mask_params.threshold;
  plan.masked_tokens.erase(plan.replacement);  // never mask the replacement
  return plan;
}

Corpus apply_mask(const Corpus& corpus, const MaskPlan& plan) {
  if (plan.masked_tokens.count(plan.replacement)) {
    throw std::invalid_argument("replacement token cannot be masked");
  }
  Corpus masked = corpus;
  for (auto& s : masked) {
    for (auto& t : s.tokens) {
      if (plan.masked_tokens.count(t)) t = plan.replacement;
    }
    std::string text;
    for (const auto& t : s.tokens) {
      if (!text.empty()) text += ' ';
      text += t;
    }
    s.text = std::move(text);
  }
  return masked;
}

void write_mask_plan(const std::string& path, const MaskPlan& plan) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write mask plan: " + path);
  json doc;
  doc["candidate_count"] = plan.candidate_count;
  doc["threshold"] = plan.threshold;
  doc["replacement"] = plan.replacement;
  doc["candidates"] = plan.candidate_tokens;
  doc["masked_tokens"] = plan.masked_tokens;
  out << doc.dump(1) << "\n";
}

MaskPlan read_mask_plan(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open mask plan: " + path);
  json doc = json::parse(in);
  MaskPlan plan;
  plan.candidate_count = doc.at("candidate_count").get<std::size_t>();
  plan.threshold = doc.at("threshold").get<double>();
  plan.replacement = doc.at("replacement").get<std::string>();
  plan.candidate_tokens =
      doc.at("candidates").get<std::vector<std::string>>();
  for (const auto& t : doc.at("masked_tokens")) {
    plan.masked_tokens.insert(t.get<std::string>());
  }
  return plan;
}

}  // namespace ccmask
