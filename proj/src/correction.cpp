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

#include "roslu/eval/correction.hpp"

#include <algorithm>

#include "roslu/data/spans.hpp"
#include "roslu/error.hpp"

namespace roslu {

nlohmann::ordered_json CorrectionReport::to_json() const {
  return nlohmann::ordered_json{{"sampled", sampled},
                                {"in_slot_error", in_slot_error},
                                {"corrected", corrected},
                                {"near_corrected", near_corrected},
                                {"baseline_corrected", baseline_corrected}};
}

nlohmann::ordered_json CorrectionVerdict::to_json() const {
  return nlohmann::ordered_json{{"id", id},
                                {"in_slot", in_slot},
                                {"corrected", corrected},
                                {"near_corrected", near_corrected},
                                {"baseline_corrected", baseline_corrected},
                                {"detail", detail}};
}

int token_edit_distance(const std::vector<std::string>& a,
                        const std::vector<std::string>& b) {
  std::vector<int> prev(b.size() + 1), cur(b.size() + 1);
  for (size_t j = 0; j <= b.size(); ++j) prev[j] = static_cast<int>(j);
  for (size_t i = 1; i <= a.size(); ++i) {
    cur[0] = static_cast<int>(i);
    for (size_t j = 1; j <= b.size(); ++j) {
      const int sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

namespace {

const RawExample* find_ref(const RawExample& noisy,
                           const std::vector<RawExample>& refs) {
  if (noisy.clean_ref_id.empty()) return nullptr;
  size_t idx = 0;
  try {
    idx = std::stoul(noisy.clean_ref_id);
  } catch (...) {
    return nullptr;
  }
  return idx < refs.size() ? &refs[idx] : nullptr;
}

// Gold spans of the clean reference touched by the perturbation.
std::vector<SlotSpan> affected_spans(const RawExample& noisy,
                                     const RawExample& ref) {
  const auto& p = *noisy.perturbation;
  std::vector<int> positions{p.position};
  if (p.kind == NoiseKind::Swap) {
    const int len = static_cast<int>(ref.tokens.size());
    positions.push_back(p.position + 1 < len ? p.position + 1
                                             : p.position - 1);
  }
  std::vector<SlotSpan> out;
  for (const auto& span : bio_to_spans(ref.bio_tags)) {
    for (int pos : positions) {
      if (pos >= span.start && pos < span.end) {
        out.push_back(span);
        break;
      }
    }
  }
  return out;
}

}  // namespace

CorrectionReport correction_counts(
    const std::vector<RawExample>& noisy_with_meta,
    const std::vector<RawExample>& refs,
    const std::vector<std::vector<PredictedSlot>>& model_predictions,
    const std::vector<std::vector<PredictedSlot>>* baseline_predictions,
    std::vector<CorrectionVerdict>* verdicts) {
  if (model_predictions.size() != noisy_with_meta.size())
    throw ContractError("correction_counts: prediction list size mismatch");
  if (baseline_predictions &&
      baseline_predictions->size() != noisy_with_meta.size())
    throw ContractError("correction_counts: baseline list size mismatch");

  CorrectionReport rep;
  rep.sampled = static_cast<long>(noisy_with_meta.size());
  for (size_t i = 0; i < noisy_with_meta.size(); ++i) {
    const auto& ex = noisy_with_meta[i];
    if (!ex.perturbation)
      throw DataError(
          "correction analysis needs forge metadata for example '" + ex.id +
          "'; regenerate the noisy split with noise-gen");
    CorrectionVerdict v;
    v.id = ex.id;
    v.in_slot = ex.perturbation->in_slot;
    if (v.in_slot) {
      ++rep.in_slot_error;
      const RawExample* ref = find_ref(ex, refs);
      if (!ref) {
        v.detail = "unresolvable clean reference";
      } else {
        auto check = [&](const std::vector<PredictedSlot>& preds, bool& exact,
                         bool& near) {
          for (const auto& span : affected_spans(ex, *ref)) {
            std::vector<std::string> gold_value(
                ref->tokens.begin() + span.start, ref->tokens.begin() + span.end);
            for (const auto& slot : preds) {
              if (slot.label != span.label) continue;
              if (slot.value == gold_value) {
                exact = true;
              } else if (token_edit_distance(slot.value, gold_value) == 1) {
                near = true;
              }
            }
          }
        };
        bool near = false;
        check(model_predictions[i], v.corrected, near);
        v.near_corrected = near && !v.corrected;
        if (baseline_predictions) {
          bool bnear = false;
          check((*baseline_predictions)[i], v.baseline_corrected, bnear);
        }
        rep.corrected += v.corrected;
        rep.near_corrected += v.near_corrected;
        rep.baseline_corrected += v.baseline_corrected;
        v.detail = v.corrected ? "restored clean slot value"
                               : "slot value not restored";
      }
    }
    if (verdicts) verdicts->push_back(std::move(v));
  }
  return rep;
}

CorrectionReport correction_analysis(
    const ModelParams& generator, const Vocab& vocab,
    const std::vector<RawExample>& noisy_with_meta,
    const std::vector<RawExample>& refs, const EvalOptions& opts,
    const ModelParams* baseline,
    const std::vector<std::string>* baseline_tags,
    std::vector<CorrectionVerdict>* verdicts) {
  for (const auto& ex : noisy_with_meta) {
    if (!ex.perturbation)
      throw DataError(
          "correction analysis needs meta.jsonl for every noisy example; "
          "regenerate the noisy split with noise-gen");
  }
  auto model_pred =
      predict_corpus(generator, vocab, {}, noisy_with_meta, opts);
  std::optional<CorpusPredictions> base_pred;
  if (baseline) {
    if (!baseline_tags)
      throw ContractError("correction_analysis: baseline needs tag strings");
    base_pred =
        predict_corpus(*baseline, vocab, *baseline_tags, noisy_with_meta, opts);
  }
  return correction_counts(noisy_with_meta, refs, model_pred.slots,
                           base_pred ? &base_pred->slots : nullptr, verdicts);
}

}  // namespace roslu
