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

#include "roslu/data/example.hpp"
#include "roslu/data/vocab.hpp"

namespace roslu {

/// One utterance ready for the model: ids with a leading DOM token, padded
/// to the batch-wide source length, plus the key mask (1 = real position).
struct EncodedExample {
  std::string id;
  Domain domain = Domain::Clean;
  std::vector<int> src;        // DOM + token ids + padding
  std::vector<uint8_t> mask;   // parallel to src
  std::vector<int> tgt;        // target ids + EOS; empty for noisy examples
  int corpus_index = -1;       // position in the originating corpus
};

struct Batch {
  std::vector<EncodedExample> clean;
  std::vector<EncodedExample> noisy;
  int max_src_len = 0;
  size_t size() const { return clean.size() + noisy.size(); }
};

/// Splits `total_size`-sized batches between clean and noisy in proportion
/// to the corpus sizes using largest-remainder rounding, then guarantees at
/// least one member of each kind per batch that can hold both. Returns per
/// batch (clean_count, noisy_count); the counts sum to the corpus sizes.
std::vector<std::pair<int, int>> mixed_batch_allocation(
    size_t n_clean, size_t n_noisy, int batch_size);

/// Deterministic epoch batching: shuffles both corpora with substreams of
/// (seed, epoch), allocates proportionally, prepends DOM, pads sources to
/// the batch max length and builds generation targets for clean members
/// only. Raises DataError when a source or target exceeds the configured
/// maxima.
std::vector<Batch> epoch_batches(const std::vector<RawExample>& clean,
                                 const std::vector<RawExample>& noisy,
                                 const Vocab& vocab, int batch_size,
                                 uint64_t seed, int epoch, int max_source_len,
                                 int max_target_len);

/// Encodes a single utterance for inference (no padding beyond DOM).
EncodedExample encode_source(const RawExample& ex, const Vocab& vocab,
                             int max_source_len);

}  // namespace roslu
