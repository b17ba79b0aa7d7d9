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

#include "roslu/model/transformer.hpp"

#include <cmath>

#include "roslu/data/vocab.hpp"
#include "roslu/error.hpp"
#include "roslu/tensor/ops.hpp"

namespace roslu {

namespace {

constexpr real_t kMaskFill = real_t(-1e30);

Var maybe_dropout(const Var& x, DropoutCtx* ctx) {
  return ctx && ctx->active() ? dropout(x, ctx->rate, ctx->rng) : x;
}

// key_mask broadcast row (1 x len_kv); entries are exactly 0 or 1.
RMat mask_row(const std::vector<uint8_t>& key_mask) {
  RMat m(1, static_cast<Index>(key_mask.size()));
  for (size_t j = 0; j < key_mask.size(); ++j) m(0, j) = key_mask[j] ? 1 : 0;
  return m;
}

// causal x pad mask for decoder self-attention
RMat causal_mask(Index len) {
  RMat m = RMat::Zero(len, len);
  for (Index i = 0; i < len; ++i)
    for (Index j = 0; j <= i; ++j) m(i, j) = 1;
  return m;
}

Var multi_head_attention(const AttentionParams& a, const Var& q_in,
                         const Var& kv_in, const RMat& mask, int num_heads) {
  const int d = static_cast<int>(q_in.cols());
  const int dh = d / num_heads;
  auto q = add_rowvec(matmul(q_in, a.wq), a.bq);
  auto k = add_rowvec(matmul(kv_in, a.wk), a.bk);
  auto v = add_rowvec(matmul(kv_in, a.wv), a.bv);
  const real_t inv_sqrt = real_t(1.0 / std::sqrt(static_cast<double>(dh)));

  std::vector<Var> heads;
  heads.reserve(num_heads);
  for (int h = 0; h < num_heads; ++h) {
    auto qh = slice_cols(q, h * dh, dh);
    auto kh = slice_cols(k, h * dh, dh);
    auto vh = slice_cols(v, h * dh, dh);
    auto scores = scale(matmul(qh, transpose(kh)), inv_sqrt);
    auto attn = softmax_rows(masked_fill(scores, mask, kMaskFill));
    heads.push_back(matmul(attn, vh));
  }
  return add_rowvec(matmul(concat_cols(heads), a.wo), a.bo);
}

Var embed_with_positions(const ModelParams& p, const std::vector<int>& ids,
                         DropoutCtx* ctx) {
  const int d = p.config.hidden_size;
  auto x = scale(embedding(p.embedding, ids),
                 real_t(std::sqrt(static_cast<double>(d))));
  RMat pe = p.pos_encoding.topRows(static_cast<Index>(ids.size()));
  x = add(x, Var::constant(std::move(pe)));
  return maybe_dropout(x, ctx);
}

}  // namespace

Var encode(const ModelParams& p, const std::vector<int>& src_ids,
           const std::vector<uint8_t>& key_mask, DropoutCtx* ctx) {
  if (src_ids.empty() || src_ids[0] != Vocab::kDom)
    throw ContractError(
        "encode: source must start with the DOM token (id " +
        std::to_string(Vocab::kDom) + ")");
  if (key_mask.size() != src_ids.size())
    throw ContractError("encode: mask length differs from source length");
  if (static_cast<int>(src_ids.size()) > p.config.max_source_len)
    throw DataError("encode: source longer than max_source_len");

  const RMat mask = mask_row(key_mask);
  Var x = embed_with_positions(p, src_ids, ctx);
  for (const auto& blk : p.encoder) {
    auto xn = layer_norm_rows(x, blk.ln1_g, blk.ln1_b);
    auto attn = multi_head_attention(blk.attn, xn, xn, mask, p.config.num_heads);
    x = add(x, maybe_dropout(attn, ctx));
    auto xn2 = layer_norm_rows(x, blk.ln2_g, blk.ln2_b);
    auto ff = add_rowvec(
        matmul(relu(add_rowvec(matmul(xn2, blk.ff_w1), blk.ff_b1)), blk.ff_w2),
        blk.ff_b2);
    x = add(x, maybe_dropout(ff, ctx));
  }
  return layer_norm_rows(x, p.enc_ln_g, p.enc_ln_b);
}

Var decode_hidden(const ModelParams& p, const Var& enc_hidden,
                  const std::vector<uint8_t>& src_key_mask,
                  const std::vector<int>& tgt_in_ids, DropoutCtx* ctx) {
  if (p.kind != ModelKind::Generator)
    throw ContractError("decode_hidden: model has no decoder stack");
  if (tgt_in_ids.empty() || tgt_in_ids[0] != Vocab::kBos)
    throw ContractError("decode_hidden: decoder input must start with BOS");
  if (static_cast<int>(tgt_in_ids.size()) > p.config.max_target_len)
    throw DataError("decode_hidden: target longer than max_target_len");

  const RMat self_mask = causal_mask(static_cast<Index>(tgt_in_ids.size()));
  const RMat cross_mask = mask_row(src_key_mask);
  Var y = embed_with_positions(p, tgt_in_ids, ctx);
  for (const auto& blk : p.decoder) {
    auto yn = layer_norm_rows(y, blk.ln1_g, blk.ln1_b);
    auto self_out =
        multi_head_attention(blk.self_attn, yn, yn, self_mask, p.config.num_heads);
    y = add(y, maybe_dropout(self_out, ctx));
    auto yn2 = layer_norm_rows(y, blk.ln2_g, blk.ln2_b);
    auto cross_out = multi_head_attention(blk.cross_attn, yn2, enc_hidden,
                                          cross_mask, p.config.num_heads);
    y = add(y, maybe_dropout(cross_out, ctx));
    auto yn3 = layer_norm_rows(y, blk.ln3_g, blk.ln3_b);
    auto ff = add_rowvec(
        matmul(relu(add_rowvec(matmul(yn3, blk.ff_w1), blk.ff_b1)), blk.ff_w2),
        blk.ff_b2);
    y = add(y, maybe_dropout(ff, ctx));
  }
  return layer_norm_rows(y, p.dec_ln_g, p.dec_ln_b);
}

Var output_logits(const ModelParams& p, const Var& dec_hidden) {
  return matmul(dec_hidden, transpose(p.embedding));
}

Var discriminator_logit(const ModelParams& p, const Var& enc_hidden,
                        double lambda, bool reversed) {
  auto dom = slice_rows(enc_hidden, 0, 1);
  auto in = reversed ? grad_reverse(dom, real_t(lambda)) : dom;
  auto hidden = roslu::tanh(add_rowvec(matmul(in, p.dis_w1), p.dis_b1));
  return add_rowvec(matmul(hidden, p.dis_w2), p.dis_b2);
}

double discriminate(const ModelParams& p, const Var& enc_hidden) {
  auto z = discriminator_logit(p, enc_hidden, 0.0, /*reversed=*/false);
  return static_cast<double>(sigmoid(z).item());
}

Var tagger_logits(const ModelParams& p, const Var& enc_hidden, int n_real) {
  if (p.kind != ModelKind::Tagger)
    throw ContractError("tagger_logits: model has no tagging head");
  if (n_real < 2)
    throw ContractError("tagger_logits: need at least one non-DOM position");
  auto tokens = slice_rows(enc_hidden, 1, n_real - 1);
  return add_rowvec(matmul(tokens, p.tag_w), p.tag_b);
}

std::vector<std::string> tag_inventory(
    const std::vector<std::string>& label_inventory) {
  std::vector<std::string> tags{"O"};
  for (const auto& label : label_inventory) {
    tags.push_back("B-" + label);
    tags.push_back("I-" + label);
  }
  return tags;
}

}  // namespace roslu
