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

#include "roslu/eval/parse.hpp"

#include <algorithm>
#include <cctype>

namespace roslu {

namespace {

std::string lowercase(const std::string& s) {
  std::string out = s;
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

}  // namespace

ParseResult parse_generated(const std::vector<int>& ids, const Vocab& vocab) {
  ParseResult res;
  std::vector<std::string> pending;
  for (int id : ids) {
    if (vocab.is_label(id)) {
      if (pending.empty()) {
        res.malformed = true;  // label with nothing to close
        continue;
      }
      PredictedSlot slot;
      slot.value = std::move(pending);
      pending.clear();
      slot.label = lowercase(vocab.token(id));
      res.slots.push_back(std::move(slot));
    } else {
      pending.push_back(vocab.token(id));
    }
  }
  if (!pending.empty()) res.malformed = true;  // trailing unlabeled words
  return res;
}

}  // namespace roslu
