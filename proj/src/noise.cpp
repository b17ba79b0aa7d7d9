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

#include "roslu/data/noise.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "roslu/data/spans.hpp"
#include "roslu/error.hpp"
#include "roslu/tensor/rng.hpp"

namespace roslu {

namespace {

// Token positions lying inside any gold span.
std::vector<bool> in_slot_mask(const RawExample& ex) {
  std::vector<bool> mask(ex.tokens.size(), false);
  for (const auto& s : bio_to_spans(ex.bio_tags))
    for (int i = s.start; i < s.end; ++i) mask[i] = true;
  return mask;
}

int swap_partner(int pos, int len) { return pos + 1 < len ? pos + 1 : pos - 1; }

// Positions a strategy may legally perturb under the config.
std::vector<int> eligible_positions(const RawExample& ex,
                                    const std::vector<bool>& slot,
                                    NoiseKind kind, const NoiseConfig& cfg,
                                    const std::vector<std::string>& pool) {
  const int len = static_cast<int>(ex.tokens.size());
  std::vector<int> out;
  for (int i = 0; i < len; ++i) {
    if (cfg.protect_slots && slot[i]) continue;
    switch (kind) {
      case NoiseKind::Drop:
        if (len >= 2) out.push_back(i);  // never empty a sentence
        break;
      case NoiseKind::Replace:
        // needs at least one pool word different from the original
        if (pool.size() >= 2 || (pool.size() == 1 && pool[0] != ex.tokens[i]))
          out.push_back(i);
        break;
      case NoiseKind::Swap: {
        if (len < 2) break;
        const int j = swap_partner(i, len);
        if (cfg.protect_slots && slot[j]) break;
        out.push_back(i);
        break;
      }
    }
  }
  return out;
}

void apply_drop(RawExample& ex, int pos) {
  ex.tokens.erase(ex.tokens.begin() + pos);
  const bool dropped_b = ex.bio_tags[pos][0] == 'B';
  const std::string dropped_label =
      ex.bio_tags[pos] == "O" ? "" : ex.bio_tags[pos].substr(2);
  ex.bio_tags.erase(ex.bio_tags.begin() + pos);
  // dropping B-X ahead of I-X promotes the survivor to B-X
  if (dropped_b && static_cast<size_t>(pos) < ex.bio_tags.size() &&
      ex.bio_tags[pos] == "I-" + dropped_label)
    ex.bio_tags[pos] = "B-" + dropped_label;
}

void apply_replace(RawExample& ex, int pos,
                   const std::vector<std::string>& pool, Rng& rng) {
  const std::string& orig = ex.tokens[pos];
  std::string pick = pool[rng.uniform_int(pool.size())];
  while (pick == orig && pool.size() > 1)
    pick = pool[rng.uniform_int(pool.size())];
  ex.tokens[pos] = pick;
}

void apply_swap(RawExample& ex, int pos) {
  const int j = swap_partner(pos, static_cast<int>(ex.tokens.size()));
  std::swap(ex.tokens[pos], ex.tokens[j]);
  // tags stay positional; the moved word now carries the position's tag
}

}  // namespace

NoiseResult inject_noise(const std::vector<RawExample>& corpus,
                         const NoiseConfig& cfg) {
  if (corpus.empty()) throw DataError("inject_noise: empty corpus");
  if (cfg.ratio < 0.0 || cfg.ratio > 1.0)
    throw ConfigError("inject_noise: ratio must be in [0, 1]");
  if (cfg.strategies.empty())
    throw ConfigError("inject_noise: at least one strategy required");

  const size_t n = corpus.size();
  const size_t want = static_cast<size_t>(
      std::floor(cfg.ratio * static_cast<double>(n) + 0.5));

  std::vector<std::string> pool = cfg.replace_pool;
  if (pool.empty()) {
    std::set<std::string> words;
    for (const auto& ex : corpus) words.insert(ex.tokens.begin(), ex.tokens.end());
    pool.assign(words.begin(), words.end());
  } else {
    std::sort(pool.begin(), pool.end());
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  }

  const bool use_replace =
      std::find(cfg.strategies.begin(), cfg.strategies.end(),
                NoiseKind::Replace) != cfg.strategies.end();
  if (use_replace && pool.empty())
    throw DataError("inject_noise: empty replacement pool");

  Rng rng(cfg.seed);
  std::vector<size_t> order(n);
  for (size_t i = 0; i < n; ++i) order[i] = i;
  shuffle(order, rng);

  // Walk the shuffled order, skipping sentences with no eligible
  // perturbation (all tokens inside protected slots, for instance).
  std::vector<bool> selected(n, false);
  size_t taken = 0, skipped = 0;
  for (size_t idx : order) {
    if (taken == want) break;
    const auto& ex = corpus[idx];
    const auto slot = in_slot_mask(ex);
    bool any = false;
    for (NoiseKind k : cfg.strategies)
      if (!eligible_positions(ex, slot, k, cfg, pool).empty()) {
        any = true;
        break;
      }
    if (!any) {
      ++skipped;
      continue;
    }
    selected[idx] = true;
    ++taken;
  }
  if (taken < want)
    throw DataError("inject_noise: eligible pool exhausted: wanted " +
                    std::to_string(want) + " sentences, found " +
                    std::to_string(taken) + " eligible (" +
                    std::to_string(skipped) + " skipped)");

  NoiseResult res;
  for (size_t idx = 0; idx < n; ++idx) {
    if (!selected[idx]) {
      res.untouched.push_back(corpus[idx]);
      continue;
    }
    const RawExample& src = corpus[idx];
    Rng sub = rng.fork(idx);
    const auto slot = in_slot_mask(src);

    std::vector<NoiseKind> usable;
    for (NoiseKind k : cfg.strategies)
      if (!eligible_positions(src, slot, k, cfg, pool).empty())
        usable.push_back(k);
    const NoiseKind kind = usable[sub.uniform_int(usable.size())];
    const auto positions = eligible_positions(src, slot, kind, cfg, pool);
    const int pos = positions[sub.uniform_int(positions.size())];

    RawExample out = src;
    out.domain = Domain::Noisy;
    out.clean_ref_id = src.id;
    Perturbation p;
    p.kind = kind;
    p.position = pos;
    p.in_slot = slot[pos] ||
                (kind == NoiseKind::Swap &&
                 slot[swap_partner(pos, static_cast<int>(src.tokens.size()))]);
    switch (kind) {
      case NoiseKind::Drop: apply_drop(out, pos); break;
      case NoiseKind::Replace: apply_replace(out, pos, pool, sub); break;
      case NoiseKind::Swap: apply_swap(out, pos); break;
    }
    out.perturbation = p;
    out.id = std::to_string(res.noisy.size());
    res.noisy.push_back(std::move(out));
  }
  return res;
}

}  // namespace roslu
