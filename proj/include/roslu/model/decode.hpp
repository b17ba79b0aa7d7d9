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

#include <cstdint>
#include <string>
#include <vector>

#include "roslu/model/params.hpp"

namespace roslu {

struct DecodeResult {
  std::vector<int> ids;  // generated target, BOS/EOS stripped
  bool truncated = false;  // no EOS within max_target_len
  double logprob = 0.0;
};

/// Autoregressive decoding; beam_width 1 is greedy argmax per step. Ties
/// break toward the lower token id, so greedy and beam(1) are identical.
DecodeResult greedy_decode(const ModelParams& p, const std::vector<int>& src_ids,
                           const std::vector<uint8_t>& src_mask,
                           int max_target_len, int beam_width = 1);

/// Per-token BIO labels from the tagging baseline, one per real non-DOM
/// source token.
std::vector<std::string> tagging_baseline_decode(
    const ModelParams& p, const std::vector<std::string>& tags,
    const std::vector<int>& src_ids, const std::vector<uint8_t>& src_mask);

}  // namespace roslu
