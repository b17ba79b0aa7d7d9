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

#include "roslu/data/batch.hpp"
#include "roslu/model/transformer.hpp"

namespace roslu {

struct AdvLossOptions {
  double lambda = 1.0;
  bool reversed = true;  // remove the GRL entirely (diagnostics only)
  bool reverse_clean_term = true;
};

struct AdvLossResult {
  Var loss;  // batch-summed
  int n_clean = 0;
  int n_noisy = 0;
  bool noisy_empty = false;  // "w/o noisy" mode: only the clean term exists
};

/// Domain-adversarial objective over already-encoded hidden states:
/// sum over clean of -log D(.) plus sum over noisy of -log(1 - D(.)),
/// computed from logits with softplus for stability. The GRL sits between
/// each DOM hidden state and the discriminator input, so a single backward
/// trains D normally while the encoder receives reversed gradients.
AdvLossResult adversarial_loss_from_hidden(const ModelParams& p,
                                           const std::vector<Var>& clean_hidden,
                                           const std::vector<Var>& noisy_hidden,
                                           const AdvLossOptions& opts);

/// Same objective starting from raw batches (each example encoded here).
AdvLossResult adversarial_loss(const ModelParams& p,
                               const std::vector<EncodedExample>& clean,
                               const std::vector<EncodedExample>& noisy,
                               const AdvLossOptions& opts,
                               Rng* step_rng = nullptr);

/// log p(y | x) under teacher forcing; `tgt_ids` is the target including
/// trailing EOS. The decoder consumes BOS + tgt[:-1].
Var s2s_logprob(const ModelParams& p, const std::vector<int>& src_ids,
                const std::vector<uint8_t>& src_mask,
                const std::vector<int>& tgt_ids,
                DropoutCtx* dropout_ctx = nullptr);

/// Negative log-likelihood summed over a clean batch. A noisy example in
/// the batch violates the clean-only generation contract.
Var s2s_loss(const ModelParams& p, const std::vector<EncodedExample>& clean,
             Rng* step_rng = nullptr);

struct JointLossResult {
  Var loss;
  double s2s_sum = 0.0;
  double adv_sum = 0.0;
  int n_clean = 0;
  int n_noisy = 0;
  int n_target_tokens = 0;
  bool noisy_empty = false;
};

/// Joint objective: s2s_loss(clean) + alpha * adversarial_loss(clean, noisy)
/// with clean encodings shared between the two terms. alpha == 0 skips the
/// adversarial subgraph entirely, so discriminator parameters receive no
/// gradient at all.
JointLossResult joint_loss(const ModelParams& p, const Batch& batch,
                           double alpha, Rng* step_rng = nullptr);

/// Per-token tagging cross-entropy for the baseline model (clean only).
/// `tag_ids` are gold tag indices per non-DOM token.
Var tagging_loss(const ModelParams& p,
                 const std::vector<EncodedExample>& clean,
                 const std::vector<std::vector<int>>& tag_ids,
                 Rng* step_rng = nullptr);

/// Joint objective for the tagger baseline, mirroring joint_loss.
JointLossResult tagger_joint_loss(const ModelParams& p, const Batch& batch,
                                  const std::vector<std::vector<int>>& tag_ids,
                                  double alpha, Rng* step_rng = nullptr);

}  // namespace roslu
