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

#include <vector>

#include "roslu/data/example.hpp"
#include "roslu/eval/parse.hpp"

namespace roslu {

struct PrfCounts {
  long matched = 0;
  long predicted = 0;
  long gold = 0;

  PrfCounts& operator+=(const PrfCounts& o) {
    matched += o.matched;
    predicted += o.predicted;
    gold += o.gold;
    return *this;
  }
  double precision() const { return predicted ? double(matched) / predicted : 0.0; }
  double recall() const { return gold ? double(matched) / gold : 0.0; }
  double f1() const {
    const double p = precision(), r = recall();
    return p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0;
  }
};

/// Greedy multiset matching inside one utterance: a predicted (label, value)
/// matches an unmatched gold pair under exact token-sequence and label
/// equality. Generation omits O tokens, so positions carry no anchor and
/// multiset matching is the coherent granularity.
PrfCounts match_counts(const std::vector<PredictedSlot>& predicted,
                       const std::vector<PredictedSlot>& gold);

struct F1Score {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  long support = 0;  // gold slot count
};

/// Micro-averaged over parallel utterance lists.
F1Score slot_f1(const std::vector<std::vector<PredictedSlot>>& predictions,
                const std::vector<std::vector<PredictedSlot>>& golds);

/// Positional span-level scoring (exact start/end/label), for tagging
/// baselines in their native convention.
F1Score span_f1(const std::vector<std::vector<SlotSpan>>& predictions,
                const std::vector<std::vector<SlotSpan>>& golds);

}  // namespace roslu
