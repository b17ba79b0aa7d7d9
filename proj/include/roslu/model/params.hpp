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

#include "roslu/model/config.hpp"
#include "roslu/real.hpp"

namespace roslu {

enum class ModelKind { Generator, Tagger };

std::string to_string(ModelKind k);
ModelKind model_kind_from_string(const std::string& s);

/// Which loss owns a parameter: enc.* (embedding included), dec.*, dis.*
/// and tag.* for the sequential-tagging baseline head.
enum class ParamGroup { Encoder, Decoder, Discriminator, TagHead };

ParamGroup param_group(const std::string& name);

struct AttentionParams {
  Var wq, bq, wk, bk, wv, bv, wo, bo;
};

struct EncoderBlock {
  Var ln1_g, ln1_b;
  AttentionParams attn;
  Var ln2_g, ln2_b;
  Var ff_w1, ff_b1, ff_w2, ff_b2;
};

struct DecoderBlock {
  Var ln1_g, ln1_b;
  AttentionParams self_attn;
  Var ln2_g, ln2_b;
  AttentionParams cross_attn;
  Var ln3_g, ln3_b;
  Var ff_w1, ff_b1, ff_w2, ff_b2;
};

/// All trainable weights. The embedding matrix is shared between encoder
/// input, decoder input and the decoder output projection, and belongs to
/// the encoder group. Tagger-kind models have no decoder stack; generator
/// models have no tagging head.
struct ModelParams {
  ModelConfig config;
  ModelKind kind = ModelKind::Generator;
  int num_tags = 0;

  Var embedding;  // vocab x d
  std::vector<EncoderBlock> encoder;
  Var enc_ln_g, enc_ln_b;
  std::vector<DecoderBlock> decoder;
  Var dec_ln_g, dec_ln_b;
  Var dis_w1, dis_b1, dis_w2, dis_b2;
  Var tag_w, tag_b;

  RMat pos_encoding;  // fixed sinusoidal table, not trained

  /// Every parameter exactly once, in a fixed, name-stable order.
  const std::vector<Var>& all() const { return all_; }
  std::vector<Var> group(ParamGroup g) const;
  Var find(const std::string& name) const;

  /// Xavier-uniform weights, zero biases, unit layer-norm gains.
  static ModelParams init(const ModelConfig& cfg, ModelKind kind, int num_tags,
                          uint64_t seed);

  /// Deep copy with detached storage (for snapshots).
  ModelParams clone() const;

  std::vector<Var> all_;  // populated by init/load
};

}  // namespace roslu
