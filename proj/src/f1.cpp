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

#include "roslu/eval/f1.hpp"

#include "roslu/error.hpp"

namespace roslu {

PrfCounts match_counts(const std::vector<PredictedSlot>& predicted,
                       const std::vector<PredictedSlot>& gold) {
  PrfCounts c;
  c.predicted = static_cast<long>(predicted.size());
  c.gold = static_cast<long>(gold.size());
  std::vector<bool> used(gold.size(), false);
  for (const auto& p : predicted) {
    for (size_t g = 0; g < gold.size(); ++g) {
      if (used[g] || !(gold[g] == p)) continue;
      used[g] = true;
      ++c.matched;
      break;
    }
  }
  return c;
}

F1Score slot_f1(const std::vector<std::vector<PredictedSlot>>& predictions,
                const std::vector<std::vector<PredictedSlot>>& golds) {
  if (predictions.size() != golds.size())
    throw ContractError("slot_f1: " + std::to_string(predictions.size()) +
                        " prediction lists vs " + std::to_string(golds.size()) +
                        " gold lists");
  PrfCounts total;
  for (size_t i = 0; i < predictions.size(); ++i)
    total += match_counts(predictions[i], golds[i]);
  return {total.precision(), total.recall(), total.f1(), total.gold};
}

F1Score span_f1(const std::vector<std::vector<SlotSpan>>& predictions,
                const std::vector<std::vector<SlotSpan>>& golds) {
  if (predictions.size() != golds.size())
    throw ContractError("span_f1: prediction/gold list size mismatch");
  PrfCounts total;
  for (size_t i = 0; i < predictions.size(); ++i) {
    total.predicted += static_cast<long>(predictions[i].size());
    total.gold += static_cast<long>(golds[i].size());
    std::vector<bool> used(golds[i].size(), false);
    for (const auto& p : predictions[i]) {
      for (size_t g = 0; g < golds[i].size(); ++g) {
        if (used[g] || !(golds[i][g] == p)) continue;
        used[g] = true;
        ++total.matched;
        break;
      }
    }
  }
  return {total.precision(), total.recall(), total.f1(), total.gold};
}

}  // namespace roslu
