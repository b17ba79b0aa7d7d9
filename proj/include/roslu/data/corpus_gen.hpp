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
#include <filesystem>
#include <vector>

#include "roslu/data/example.hpp"

namespace roslu {

/// Sizes and seed for the bundled synthetic assistant corpus (three-file
/// layout, word-level BIO tags over template-generated utterances).
struct CorpusGenConfig {
  int n_train = 600;
  int n_valid = 150;
  int n_test = 200;
  uint64_t seed = 11;
};

/// Deterministic template sampling; `stream` separates the splits.
std::vector<RawExample> generate_sentences(int n, uint64_t seed,
                                           uint64_t stream);

/// Writes train/ valid/ test/ under out_root (seq.in, seq.out, label).
void generate_sample_corpus(const std::filesystem::path& out_root,
                            const CorpusGenConfig& cfg);

}  // namespace roslu
