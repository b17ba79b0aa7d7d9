// Copyright 2026 The roslu Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "roslu/eval/evaluate.hpp"

namespace roslu {

/// In-slot correction counting over a forged noisy test set. An utterance
/// counts as corrected when, for at least one gold span touched by the
/// perturbation, the model emits exactly the clean reference's (label,
/// value) pair — partial or full correction of the utterance both count.
struct CorrectionReport {
  long sampled = 0;
  long in_slot_error = 0;
  long corrected = 0;
  long near_corrected = 0;  // informational: token edit distance 1
  long baseline_corrected = 0;

  nlohmann::ordered_json to_json() const;
};

struct CorrectionVerdict {
  std::string id;
  bool in_slot = false;
  bool corrected = false;
  bool near_corrected = false;
  bool baseline_corrected = false;
  std::string detail;

  nlohmann::ordered_json to_json() const;
};

/// Pure counting over cached predictions. `noisy_with_meta` must carry
/// forge perturbation records; `refs` is the corpus the forge ran on.
CorrectionReport correction_counts(
    const std::vector<RawExample>& noisy_with_meta,
    const std::vector<RawExample>& refs,
    const std::vector<std::vector<PredictedSlot>>& model_predictions,
    const std::vector<std::vector<PredictedSlot>>* baseline_predictions,
    std::vector<CorrectionVerdict>* verdicts = nullptr);

/// Decodes the noisy test set with the generation model (and optionally the
/// tagging baseline) and counts corrections. Raises DataError when forge
/// metadata is missing.
CorrectionReport correction_analysis(
    const ModelParams& generator, const Vocab& vocab,
    const std::vector<RawExample>& noisy_with_meta,
    const std::vector<RawExample>& refs, const EvalOptions& opts,
    const ModelParams* baseline = nullptr,
    const std::vector<std::string>* baseline_tags = nullptr,
    std::vector<CorrectionVerdict>* verdicts = nullptr);

/// Token-level Levenshtein distance (for the near-miss count).
int token_edit_distance(const std::vector<std::string>& a,
                        const std::vector<std::string>& b);

}  // namespace roslu
