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
#include "roslu/data/corpus.hpp"
#include "roslu/eval/f1.hpp"
#include "roslu/model/decode.hpp"

namespace roslu {

struct EvalOptions {
  int threads = 1;
  int beam_width = 1;
};

struct SplitReport {
  bool present = false;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  long support = 0;
  long n_utterances = 0;
};

struct EvalReport {
  SplitReport clean;
  SplitReport noisy;
  SplitReport global;
  double malformed_rate = 0.0;  // decoded sequences that needed repair
  long excluded_noisy = 0;      // noisy examples without resolvable gold
  std::optional<F1Score> native_span;  // tagger models only

  nlohmann::ordered_json to_json() const;
};

struct AuditLine {
  std::string id;
  Domain domain = Domain::Clean;
  std::vector<PredictedSlot> gold;
  std::vector<PredictedSlot> predicted;
  bool malformed = false;
  std::string verdict;  // "match" or "mismatch"

  nlohmann::ordered_json to_json() const;
};

/// Predictions for a full test corpus; parallel to the examples. Decoding
/// is parallel over utterances, results are ordered by index.
struct CorpusPredictions {
  std::vector<std::vector<PredictedSlot>> slots;
  std::vector<bool> malformed;
  std::vector<std::vector<SlotSpan>> tagged_spans;  // tagger models only
};

CorpusPredictions predict_corpus(const ModelParams& params, const Vocab& vocab,
                                 const std::vector<std::string>& tag_strings,
                                 const std::vector<RawExample>& examples,
                                 const EvalOptions& opts);

/// Gold (label, value) pairs for an example; noisy examples resolve against
/// the clean reference corpus via clean_ref_id. Returns nullopt when no
/// gold can be resolved.
std::optional<std::vector<PredictedSlot>> resolve_gold(
    const RawExample& ex, const std::vector<RawExample>& refs);

/// Pure scoring over cached predictions (bit-identical on re-runs).
EvalReport score_predictions(
    const std::vector<RawExample>& clean_test,
    const std::vector<RawExample>& noisy_test,
    const std::vector<RawExample>& noisy_refs,
    const CorpusPredictions& clean_pred, const CorpusPredictions& noisy_pred,
    bool tagger_native_spans, std::vector<AuditLine>* audit = nullptr);

/// Decodes every utterance of both splits and reports clean / noisy /
/// global micro-F1. Gold for a noisy utterance comes from its clean
/// reference; unresolvable examples are excluded and counted.
EvalReport evaluate(const ModelParams& params, const Vocab& vocab,
                    const std::vector<std::string>& tag_strings,
                    const std::vector<RawExample>& clean_test,
                    const std::vector<RawExample>& noisy_test,
                    const std::vector<RawExample>& noisy_refs,
                    const EvalOptions& opts,
                    std::vector<AuditLine>* audit = nullptr);

}  // namespace roslu
