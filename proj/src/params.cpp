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

#include "roslu/model/params.hpp"

#include <cmath>

#include "roslu/error.hpp"
#include "roslu/tensor/rng.hpp"

namespace roslu {

std::string to_string(ModelKind k) {
  return k == ModelKind::Generator ? "generator" : "tagger";
}

ModelKind model_kind_from_string(const std::string& s) {
  if (s == "generator") return ModelKind::Generator;
  if (s == "tagger") return ModelKind::Tagger;
  throw ConfigError("unknown model kind '" + s + "'");
}

ParamGroup param_group(const std::string& name) {
  if (name.rfind("enc.", 0) == 0) return ParamGroup::Encoder;
  if (name.rfind("dec.", 0) == 0) return ParamGroup::Decoder;
  if (name.rfind("dis.", 0) == 0) return ParamGroup::Discriminator;
  if (name.rfind("tag.", 0) == 0) return ParamGroup::TagHead;
  throw ConfigError("parameter '" + name + "' belongs to no known group");
}

namespace {

struct Builder {
  Rng rng;
  std::vector<Var>* all;

  Var xavier(const std::string& name, Index rows, Index cols) {
    const double limit =
        std::sqrt(6.0 / (static_cast<double>(rows) + static_cast<double>(cols)));
    RMat m(rows, cols);
    for (Index i = 0; i < rows; ++i)
      for (Index j = 0; j < cols; ++j)
        m(i, j) = static_cast<real_t>(rng.uniform(-limit, limit));
    auto v = Var::param(name, std::move(m));
    all->push_back(v);
    return v;
  }

  Var fill(const std::string& name, Index rows, Index cols, real_t value) {
    auto v = Var::param(name, RMat::Constant(rows, cols, value));
    all->push_back(v);
    return v;
  }

  AttentionParams attention(const std::string& prefix, int d) {
    AttentionParams a;
    a.wq = xavier(prefix + ".wq", d, d);
    a.bq = fill(prefix + ".bq", 1, d, 0);
    a.wk = xavier(prefix + ".wk", d, d);
    a.bk = fill(prefix + ".bk", 1, d, 0);
    a.wv = xavier(prefix + ".wv", d, d);
    a.bv = fill(prefix + ".bv", 1, d, 0);
    a.wo = xavier(prefix + ".wo", d, d);
    a.bo = fill(prefix + ".bo", 1, d, 0);
    return a;
  }
};

RMat sinusoidal_table(int max_len, int d) {
  RMat pe(max_len, d);
  for (int pos = 0; pos < max_len; ++pos) {
    for (int i = 0; i < d; i += 2) {
      const double angle =
          pos / std::pow(10000.0, static_cast<double>(i) / d);
      pe(pos, i) = static_cast<real_t>(std::sin(angle));
      if (i + 1 < d) pe(pos, i + 1) = static_cast<real_t>(std::cos(angle));
    }
  }
  return pe;
}

}  // namespace

ModelParams ModelParams::init(const ModelConfig& cfg, ModelKind kind,
                              int num_tags, uint64_t seed) {
  if (kind == ModelKind::Tagger && num_tags < 1)
    throw ConfigError("tagger model needs a positive tag count");

  ModelParams p;
  p.config = cfg;
  p.kind = kind;
  p.num_tags = num_tags;
  const int d = cfg.hidden_size;

  Builder b{Rng(seed, 0x9A12A5), &p.all_};
  p.embedding = b.xavier("enc.embed", cfg.vocab_size, d);

  for (int l = 0; l < cfg.num_layers; ++l) {
    const std::string pre = "enc.L" + std::to_string(l);
    EncoderBlock blk;
    blk.ln1_g = b.fill(pre + ".ln1.g", 1, d, 1);
    blk.ln1_b = b.fill(pre + ".ln1.b", 1, d, 0);
    blk.attn = b.attention(pre + ".attn", d);
    blk.ln2_g = b.fill(pre + ".ln2.g", 1, d, 1);
    blk.ln2_b = b.fill(pre + ".ln2.b", 1, d, 0);
    blk.ff_w1 = b.xavier(pre + ".ff.w1", d, cfg.ff());
    blk.ff_b1 = b.fill(pre + ".ff.b1", 1, cfg.ff(), 0);
    blk.ff_w2 = b.xavier(pre + ".ff.w2", cfg.ff(), d);
    blk.ff_b2 = b.fill(pre + ".ff.b2", 1, d, 0);
    p.encoder.push_back(std::move(blk));
  }
  p.enc_ln_g = b.fill("enc.ln.g", 1, d, 1);
  p.enc_ln_b = b.fill("enc.ln.b", 1, d, 0);

  if (kind == ModelKind::Generator) {
    for (int l = 0; l < cfg.num_layers; ++l) {
      const std::string pre = "dec.L" + std::to_string(l);
      DecoderBlock blk;
      blk.ln1_g = b.fill(pre + ".ln1.g", 1, d, 1);
      blk.ln1_b = b.fill(pre + ".ln1.b", 1, d, 0);
      blk.self_attn = b.attention(pre + ".self", d);
      blk.ln2_g = b.fill(pre + ".ln2.g", 1, d, 1);
      blk.ln2_b = b.fill(pre + ".ln2.b", 1, d, 0);
      blk.cross_attn = b.attention(pre + ".cross", d);
      blk.ln3_g = b.fill(pre + ".ln3.g", 1, d, 1);
      blk.ln3_b = b.fill(pre + ".ln3.b", 1, d, 0);
      blk.ff_w1 = b.xavier(pre + ".ff.w1", d, cfg.ff());
      blk.ff_b1 = b.fill(pre + ".ff.b1", 1, cfg.ff(), 0);
      blk.ff_w2 = b.xavier(pre + ".ff.w2", cfg.ff(), d);
      blk.ff_b2 = b.fill(pre + ".ff.b2", 1, d, 0);
      p.decoder.push_back(std::move(blk));
    }
    p.dec_ln_g = b.fill("dec.ln.g", 1, d, 1);
    p.dec_ln_b = b.fill("dec.ln.b", 1, d, 0);
  } else {
    p.tag_w = b.xavier("tag.w", d, num_tags);
    p.tag_b = b.fill("tag.b", 1, num_tags, 0);
  }

  p.dis_w1 = b.xavier("dis.w1", d, d);
  p.dis_b1 = b.fill("dis.b1", 1, d, 0);
  p.dis_w2 = b.xavier("dis.w2", d, 1);
  p.dis_b2 = b.fill("dis.b2", 1, 1, 0);

  p.pos_encoding =
      sinusoidal_table(std::max(cfg.max_source_len, cfg.max_target_len), d);
  return p;
}

std::vector<Var> ModelParams::group(ParamGroup g) const {
  std::vector<Var> out;
  for (const auto& v : all_)
    if (param_group(v.name()) == g) out.push_back(v);
  return out;
}

Var ModelParams::find(const std::string& name) const {
  for (const auto& v : all_)
    if (v.name() == name) return v;
  throw ConfigError("no parameter named '" + name + "'");
}

ModelParams ModelParams::clone() const {
  // Rebuild the structure, then overwrite values with deep copies.
  ModelParams fresh = ModelParams::init(config, kind, num_tags, /*seed=*/0);
  for (size_t i = 0; i < all_.size(); ++i)
    fresh.all_[i].mutable_value() = all_[i].value();
  return fresh;
}

}  // namespace roslu
