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

#include <string>
#include <vector>

#include "roslu/data/vocab.hpp"

namespace roslu {

/// A generated slot: value tokens plus the slot-label string (lowercase).
struct PredictedSlot {
  std::vector<std::string> value;
  std::string label;

  bool operator==(const PredictedSlot&) const = default;
};

struct ParseResult {
  std::vector<PredictedSlot> slots;
  bool malformed = false;  // repairs were needed
};

/// Inverse of the target format: scan left to right accumulating word
/// tokens; every label token closes the accumulation as one slot. Trailing
/// words without a closing label are dropped, as is a label token with an
/// empty accumulation; both set the malformed flag. BOS/EOS/PAD must be
/// stripped by the caller.
ParseResult parse_generated(const std::vector<int>& ids, const Vocab& vocab);

}  // namespace roslu
