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

#include "roslu/model/losses.hpp"

#include "roslu/data/vocab.hpp"
#include "roslu/error.hpp"
#include "roslu/tensor/ops.hpp"

namespace roslu {

namespace {

// Per-sentence dropout substream. Clean members come first, so sentence k
// of the noisy sub-batch uses index n_clean + k.
DropoutCtx sentence_ctx(const ModelParams& p, Rng* step_rng, size_t index) {
  DropoutCtx ctx;
  if (step_rng && p.config.dropout_rate > 0.0) {
    ctx.rng = step_rng->fork(0xD80, index);
    ctx.rate = p.config.dropout_rate;
  }
  return ctx;
}

Var chain_add(Var acc, Var term) {
  return acc.defined() ? add(acc, term) : term;
}

std::vector<int> decoder_input(const std::vector<int>& tgt_ids) {
  std::vector<int> in;
  in.reserve(tgt_ids.size());
  in.push_back(Vocab::kBos);
  in.insert(in.end(), tgt_ids.begin(), tgt_ids.end() - 1);
  return in;
}

Var example_nll(const ModelParams& p, const Var& enc_hidden,
                const EncodedExample& ex, DropoutCtx* ctx) {
  if (ex.tgt.empty())
    throw ContractError("generation loss needs a target for example " + ex.id);
  auto hidden = decode_hidden(p, enc_hidden, ex.mask, decoder_input(ex.tgt), ctx);
  return cross_entropy_sum(output_logits(p, hidden), ex.tgt);
}

}  // namespace

AdvLossResult adversarial_loss_from_hidden(
    const ModelParams& p, const std::vector<Var>& clean_hidden,
    const std::vector<Var>& noisy_hidden, const AdvLossOptions& opts) {
  if (clean_hidden.empty() && noisy_hidden.empty())
    throw ContractError("adversarial_loss: both batches empty");
  AdvLossResult res;
  res.n_clean = static_cast<int>(clean_hidden.size());
  res.n_noisy = static_cast<int>(noisy_hidden.size());
  res.noisy_empty = noisy_hidden.empty();

  Var total;
  for (const auto& h : clean_hidden) {
    auto z = discriminator_logit(p, h, opts.lambda,
                                 opts.reversed && opts.reverse_clean_term);
    total = chain_add(total, softplus(neg(z)));  // -log D
  }
  for (const auto& h : noisy_hidden) {
    auto z = discriminator_logit(p, h, opts.lambda, opts.reversed);
    total = chain_add(total, softplus(z));  // -log (1 - D)
  }
  res.loss = total;
  return res;
}

AdvLossResult adversarial_loss(const ModelParams& p,
                               const std::vector<EncodedExample>& clean,
                               const std::vector<EncodedExample>& noisy,
                               const AdvLossOptions& opts, Rng* step_rng) {
  std::vector<Var> clean_h, noisy_h;
  size_t index = 0;
  for (const auto& ex : clean) {
    auto ctx = sentence_ctx(p, step_rng, index++);
    clean_h.push_back(encode(p, ex.src, ex.mask, ctx.active() ? &ctx : nullptr));
  }
  for (const auto& ex : noisy) {
    auto ctx = sentence_ctx(p, step_rng, index++);
    noisy_h.push_back(encode(p, ex.src, ex.mask, ctx.active() ? &ctx : nullptr));
  }
  return adversarial_loss_from_hidden(p, clean_h, noisy_h, opts);
}

Var s2s_logprob(const ModelParams& p, const std::vector<int>& src_ids,
                const std::vector<uint8_t>& src_mask,
                const std::vector<int>& tgt_ids, DropoutCtx* ctx) {
  if (tgt_ids.empty())
    throw ContractError("s2s_logprob: empty target (needs at least EOS)");
  auto enc = encode(p, src_ids, src_mask, ctx);
  auto hidden = decode_hidden(p, enc, src_mask, decoder_input(tgt_ids), ctx);
  return neg(cross_entropy_sum(output_logits(p, hidden), tgt_ids));
}

Var s2s_loss(const ModelParams& p, const std::vector<EncodedExample>& clean,
             Rng* step_rng) {
  if (clean.empty()) throw ContractError("s2s_loss: empty batch");
  Var total;
  size_t index = 0;
  for (const auto& ex : clean) {
    if (ex.domain != Domain::Clean)
      throw ContractError(
          "s2s_loss: noisy example '" + ex.id +
          "' in the generation batch; only clean samples contribute");
    auto ctx = sentence_ctx(p, step_rng, index++);
    DropoutCtx* cp = ctx.active() ? &ctx : nullptr;
    auto enc = encode(p, ex.src, ex.mask, cp);
    total = chain_add(total, example_nll(p, enc, ex, cp));
  }
  return total;
}

JointLossResult joint_loss(const ModelParams& p, const Batch& batch,
                           double alpha, Rng* step_rng) {
  if (alpha < 0.0) throw ConfigError("joint_loss: alpha must be >= 0");
  if (batch.clean.empty())
    throw ContractError("joint_loss: batch has no clean examples");

  JointLossResult res;
  res.n_clean = static_cast<int>(batch.clean.size());
  res.n_noisy = static_cast<int>(batch.noisy.size());

  Var s2s;
  std::vector<Var> clean_h;
  size_t index = 0;
  for (const auto& ex : batch.clean) {
    if (ex.domain != Domain::Clean)
      throw ContractError("joint_loss: noisy example '" + ex.id +
                          "' in the clean sub-batch");
    auto ctx = sentence_ctx(p, step_rng, index++);
    DropoutCtx* cp = ctx.active() ? &ctx : nullptr;
    auto enc = encode(p, ex.src, ex.mask, cp);
    if (alpha > 0.0) clean_h.push_back(enc);
    s2s = chain_add(s2s, example_nll(p, enc, ex, cp));
    res.n_target_tokens += static_cast<int>(ex.tgt.size());
  }
  res.s2s_sum = static_cast<double>(s2s.item());

  if (alpha == 0.0) {
    res.noisy_empty = batch.noisy.empty();
    res.loss = s2s;
    return res;
  }

  std::vector<Var> noisy_h;
  for (const auto& ex : batch.noisy) {
    auto ctx = sentence_ctx(p, step_rng, index++);
    noisy_h.push_back(encode(p, ex.src, ex.mask, ctx.active() ? &ctx : nullptr));
  }
  AdvLossOptions opts;
  opts.lambda = p.config.grl_lambda;
  opts.reverse_clean_term = p.config.reverse_clean_term;
  auto adv = adversarial_loss_from_hidden(p, clean_h, noisy_h, opts);
  res.adv_sum = static_cast<double>(adv.loss.item());
  res.noisy_empty = adv.noisy_empty;
  res.loss = add(s2s, scale(adv.loss, real_t(alpha)));
  return res;
}

Var tagging_loss(const ModelParams& p,
                 const std::vector<EncodedExample>& clean,
                 const std::vector<std::vector<int>>& tag_ids, Rng* step_rng) {
  if (clean.empty()) throw ContractError("tagging_loss: empty batch");
  if (clean.size() != tag_ids.size())
    throw ContractError("tagging_loss: tag rows do not match batch");
  Var total;
  size_t index = 0;
  for (size_t i = 0; i < clean.size(); ++i) {
    const auto& ex = clean[i];
    if (ex.domain != Domain::Clean)
      throw ContractError("tagging_loss: noisy example '" + ex.id +
                          "' in the clean batch");
    auto ctx = sentence_ctx(p, step_rng, index++);
    DropoutCtx* cp = ctx.active() ? &ctx : nullptr;
    auto enc = encode(p, ex.src, ex.mask, cp);
    const int n_real =
        static_cast<int>(std::count(ex.mask.begin(), ex.mask.end(), 1));
    auto logits = tagger_logits(p, enc, n_real);
    if (static_cast<int>(tag_ids[i].size()) != n_real - 1)
      throw ContractError("tagging_loss: tag count mismatch for '" + ex.id +
                          "'");
    total = chain_add(total, cross_entropy_sum(logits, tag_ids[i]));
  }
  return total;
}

JointLossResult tagger_joint_loss(const ModelParams& p, const Batch& batch,
                                  const std::vector<std::vector<int>>& tag_ids,
                                  double alpha, Rng* step_rng) {
  if (alpha < 0.0) throw ConfigError("tagger_joint_loss: alpha must be >= 0");
  if (batch.clean.empty())
    throw ContractError("tagger_joint_loss: batch has no clean examples");

  JointLossResult res;
  res.n_clean = static_cast<int>(batch.clean.size());
  res.n_noisy = static_cast<int>(batch.noisy.size());

  Var task;
  std::vector<Var> clean_h;
  size_t index = 0;
  for (size_t i = 0; i < batch.clean.size(); ++i) {
    const auto& ex = batch.clean[i];
    auto ctx = sentence_ctx(p, step_rng, index++);
    DropoutCtx* cp = ctx.active() ? &ctx : nullptr;
    auto enc = encode(p, ex.src, ex.mask, cp);
    if (alpha > 0.0) clean_h.push_back(enc);
    const int n_real =
        static_cast<int>(std::count(ex.mask.begin(), ex.mask.end(), 1));
    auto logits = tagger_logits(p, enc, n_real);
    task = chain_add(task, cross_entropy_sum(logits, tag_ids[i]));
    res.n_target_tokens += static_cast<int>(tag_ids[i].size());
  }
  res.s2s_sum = static_cast<double>(task.item());

  if (alpha == 0.0) {
    res.noisy_empty = batch.noisy.empty();
    res.loss = task;
    return res;
  }
  std::vector<Var> noisy_h;
  for (const auto& ex : batch.noisy) {
    auto ctx = sentence_ctx(p, step_rng, index++);
    noisy_h.push_back(encode(p, ex.src, ex.mask, ctx.active() ? &ctx : nullptr));
  }
  AdvLossOptions opts;
  opts.lambda = p.config.grl_lambda;
  opts.reverse_clean_term = p.config.reverse_clean_term;
  auto adv = adversarial_loss_from_hidden(p, clean_h, noisy_h, opts);
  res.adv_sum = static_cast<double>(adv.loss.item());
  res.noisy_empty = adv.noisy_empty;
  res.loss = add(task, scale(adv.loss, real_t(alpha)));
  return res;
}

}  // namespace roslu
