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

namespace roslu {

enum class Domain { Clean, Noisy };

enum class NoiseKind { Drop, Replace, Swap };

std::string to_string(NoiseKind k);
NoiseKind noise_kind_from_string(const std::string& s);

/// How a forged sentence was perturbed. `position` indexes the token in the
/// unperturbed source sentence (for Swap it is the chosen token; its partner
/// is the right neighbour, or the left one when the token is last).
struct Perturbation {
  NoiseKind kind = NoiseKind::Drop;
  int position = 0;
  bool in_slot = false;
};

/// One utterance with word-level BIO slot annotation.
struct RawExample {
  std::string id;
  std::vector<std::string> tokens;
  std::vector<std::string> bio_tags;  // may be empty for external noisy data
  Domain domain = Domain::Clean;
  std::string clean_ref_id;  // set on forge output
  std::optional<Perturbation> perturbation;
};

/// Half-open token range [start, end) carrying one slot label.
struct SlotSpan {
  int start = 0;
  int end = 0;
  std::string label;

  bool operator==(const SlotSpan&) const = default;
};

}  // namespace roslu
