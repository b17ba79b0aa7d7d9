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

#include "roslu/model/params.hpp"
#include "roslu/tensor/rng.hpp"

namespace roslu {

/// Per-sentence dropout state. Masks are drawn from a substream derived
/// from (seed, step, sentence), so results do not depend on worker count.
struct DropoutCtx {
  Rng rng{0};
  double rate = 0.0;
  bool active() const { return rate > 0.0; }
};

/// Contextual hidden states for a DOM-prefixed source. `src_ids[0]` must be
/// the DOM id; `key_mask` marks real positions with 1 and padding with 0.
/// Padded positions never influence the output rows of real positions.
Var encode(const ModelParams& p, const std::vector<int>& src_ids,
           const std::vector<uint8_t>& key_mask, DropoutCtx* dropout_ctx);

/// Decoder stack under teacher forcing: `tgt_in_ids` starts with BOS.
/// Returns final-normalized hidden states, one row per target position.
Var decode_hidden(const ModelParams& p, const Var& enc_hidden,
                  const std::vector<uint8_t>& src_key_mask,
                  const std::vector<int>& tgt_in_ids, DropoutCtx* dropout_ctx);

/// Vocabulary logits via the shared embedding: hidden * embedding^T.
Var output_logits(const ModelParams& p, const Var& dec_hidden);

/// Discriminator logit from the DOM position (row 0) of encoder output.
/// With `reversed`, a gradient-reversal layer with the given lambda sits
/// between the encoder and the discriminator input.
Var discriminator_logit(const ModelParams& p, const Var& enc_hidden,
                        double lambda, bool reversed);

/// P(clean) in (0, 1) for an encoded utterance (evaluation path).
double discriminate(const ModelParams& p, const Var& enc_hidden);

/// Per-token tag logits over rows 1..n_real-1 (DOM and padding excluded).
Var tagger_logits(const ModelParams& p, const Var& enc_hidden, int n_real);

/// Tag strings of a tagger model: "O" first, then B-/I- per label, sorted.
std::vector<std::string> tag_inventory(
    const std::vector<std::string>& label_inventory);

}  // namespace roslu
