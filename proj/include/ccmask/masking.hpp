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

#include <map>
#include <set>
#include <string>
#include <vector>

#include "ccmask/scoring.hpp"

namespace ccmask {

struct MaskParams {
  std::size_t candidate_count = 5000;  // N
  double threshold = 0.5;
  std::string replacement = "it";
};

struct MaskPlan {
  std::vector<std::string> candidate_tokens;
  std::set<std::string> masked_tokens;
  std::string replacement = "it";
  std::size_t candidate_count = 0;
  double threshold = 0.5;
};

// Top N tokens by union-group Wilson lower bound (descending, ties
// lexicographic). emotion_groups must match the groups the table's union
// column was built from.
std::vector<std::string> select_candidates(
    const CountTable& table, const std::set<std::string>& emotion_groups,
    std::size_t n, const ScoringParams& params);

// Candidates whose smoothed confidence falls strictly below the
// threshold. Tokens outside the candidate list are never masked. Throws
// std::invalid_argument when a candidate has no confidence.
std::set<std::string> decide_masks(
    const std::vector<std::string>& candidates,
    const std::map<std::string, double>& smoothed, double threshold);

// select_candidates + decide_masks, also enforcing that the replacement
// token never masks itself.
MaskPlan build_mask_plan(const CountTable& table,
                         const std::map<std::string, double>& smoothed,
                         const MaskParams& mask_params,
                         const ScoringParams& scoring_params);

// Replaces every occurrence of a masked token with the replacement and
// regenerates each sentence's text by single-space joining. Ids, groups,
// gold annotations, and per-sentence token counts are untouched.
Corpus apply_mask(const Corpus& corpus, const MaskPlan& plan);

void write_mask_plan(const std::string& path, const MaskPlan& plan);
MaskPlan read_mask_plan(const std::string& path);

}  // namespace ccmask
