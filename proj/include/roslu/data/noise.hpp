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
#include <vector>

#include "roslu/data/example.hpp"

namespace roslu {

/// Word-level perturbation settings. A run selects round(ratio * |corpus|)
/// sentences without replacement and perturbs each exactly once with a
/// uniformly chosen strategy: Drop removes a token, Replace substitutes a
/// word drawn uniformly from the replacement pool (excluding the original),
/// Swap exchanges a token with its right neighbour (left when it is the
/// last token). With protect_slots no perturbation may touch a slot chunk.
struct NoiseConfig {
  double ratio = 0.2;
  std::vector<NoiseKind> strategies = {NoiseKind::Drop, NoiseKind::Replace,
                                       NoiseKind::Swap};
  bool protect_slots = true;
  uint64_t seed = 0;
  /// Replacement words; when empty the pool is the distinct words of the
  /// corpus being noised.
  std::vector<std::string> replace_pool;
};

struct NoiseResult {
  std::vector<RawExample> noisy;      // perturbed sentences, re-indexed
  std::vector<RawExample> untouched;  // the remaining clean partition
};

NoiseResult inject_noise(const std::vector<RawExample>& corpus,
                         const NoiseConfig& cfg);

}  // namespace roslu
