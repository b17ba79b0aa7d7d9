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

#include "roslu/data/batch.hpp"

#include <algorithm>
#include <numeric>

#include "roslu/data/spans.hpp"
#include "roslu/error.hpp"
#include "roslu/tensor/rng.hpp"

namespace roslu {

std::vector<std::pair<int, int>> mixed_batch_allocation(size_t n_clean,
                                                        size_t n_noisy,
                                                        int batch_size) {
  if (batch_size < 1) throw ConfigError("batch_size must be >= 1");
  if (n_noisy > 0 && batch_size < 2)
    throw ConfigError("batch_size must be >= 2 when noisy data is present");
  const size_t total = n_clean + n_noisy;
  if (total == 0) return {};
  const size_t n_batches = (total + batch_size - 1) / batch_size;

  std::vector<int> sizes(n_batches, batch_size);
  sizes.back() = static_cast<int>(total - batch_size * (n_batches - 1));

  // Largest-remainder apportionment of the clean count over batches.
  std::vector<int> clean_counts(n_batches);
  std::vector<std::pair<double, size_t>> remainders;
  size_t assigned = 0;
  for (size_t b = 0; b < n_batches; ++b) {
    const double ideal =
        static_cast<double>(sizes[b]) * static_cast<double>(n_clean) /
        static_cast<double>(total);
    clean_counts[b] = static_cast<int>(ideal);
    assigned += clean_counts[b];
    remainders.push_back({ideal - clean_counts[b], b});
  }
  std::sort(remainders.begin(), remainders.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;  // ties to the earlier batch
  });
  for (size_t i = 0; i < n_clean - assigned; ++i)
    ++clean_counts[remainders[i].second];

  std::vector<std::pair<int, int>> out(n_batches);
  for (size_t b = 0; b < n_batches; ++b)
    out[b] = {clean_counts[b], sizes[b] - clean_counts[b]};

  // Ensure every batch that can hold both kinds gets at least one of each.
  if (n_noisy > 0 && n_clean > 0) {
    auto donor = [&](bool clean_needed) -> int {
      int best = -1;
      for (size_t b = 0; b < n_batches; ++b) {
        const int spare = clean_needed ? out[b].first : out[b].second;
        if (spare >= 2 && (best < 0 ||
                           spare > (clean_needed ? out[best].first
                                                 : out[best].second)))
          best = static_cast<int>(b);
      }
      return best;
    };
    for (size_t b = 0; b < n_batches; ++b) {
      if (sizes[b] < 2) continue;
      if (out[b].first == 0) {
        const int d = donor(true);
        if (d >= 0) {
          --out[d].first;
          ++out[d].second;
          ++out[b].first;
          --out[b].second;
        }
      } else if (out[b].second == 0) {
        const int d = donor(false);
        if (d >= 0) {
          --out[d].second;
          ++out[d].first;
          ++out[b].second;
          --out[b].first;
        }
      }
    }
  }
  return out;
}

EncodedExample encode_source(const RawExample& ex, const Vocab& vocab,
                             int max_source_len) {
  EncodedExample enc;
  enc.id = ex.id;
  enc.domain = ex.domain;
  enc.src.push_back(Vocab::kDom);
  for (const auto& w : ex.tokens) enc.src.push_back(vocab.id(w));
  if (static_cast<int>(enc.src.size()) > max_source_len)
    throw DataError("source of " + std::to_string(enc.src.size()) +
                    " positions (with DOM) exceeds max_source_len " +
                    std::to_string(max_source_len) + " for example " + ex.id);
  enc.mask.assign(enc.src.size(), uint8_t{1});
  return enc;
}

namespace {

EncodedExample encode_for_training(const RawExample& ex, const Vocab& vocab,
                                   int max_source_len, int max_target_len,
                                   int corpus_index) {
  EncodedExample enc = encode_source(ex, vocab, max_source_len);
  enc.corpus_index = corpus_index;
  if (ex.domain == Domain::Clean) {
    auto target = make_target(ex.tokens, bio_to_spans(ex.bio_tags));
    enc.tgt = vocab.encode_target(target);
    enc.tgt.push_back(Vocab::kEos);
    if (static_cast<int>(enc.tgt.size()) > max_target_len)
      throw DataError("target of " + std::to_string(enc.tgt.size()) +
                      " tokens (with EOS) exceeds max_target_len " +
                      std::to_string(max_target_len) + " for example " +
                      ex.id);
  }
  return enc;
}

void pad_batch(Batch& b) {
  int max_len = 0;
  for (const auto& e : b.clean)
    max_len = std::max(max_len, static_cast<int>(e.src.size()));
  for (const auto& e : b.noisy)
    max_len = std::max(max_len, static_cast<int>(e.src.size()));
  b.max_src_len = max_len;
  auto pad = [max_len](EncodedExample& e) {
    e.src.resize(max_len, Vocab::kPad);
    e.mask.resize(max_len, uint8_t{0});
  };
  for (auto& e : b.clean) pad(e);
  for (auto& e : b.noisy) pad(e);
}

}  // namespace

std::vector<Batch> epoch_batches(const std::vector<RawExample>& clean,
                                 const std::vector<RawExample>& noisy,
                                 const Vocab& vocab, int batch_size,
                                 uint64_t seed, int epoch, int max_source_len,
                                 int max_target_len) {
  for (const auto& ex : noisy)
    if (ex.domain != Domain::Noisy)
      throw ContractError("epoch_batches: clean example '" + ex.id +
                          "' in the noisy corpus");

  Rng rng = Rng(seed).fork(0xBA7C4, static_cast<uint64_t>(epoch));
  std::vector<int> clean_order(clean.size()), noisy_order(noisy.size());
  std::iota(clean_order.begin(), clean_order.end(), 0);
  std::iota(noisy_order.begin(), noisy_order.end(), 0);
  Rng rc = rng.fork(1), rn = rng.fork(2);
  shuffle(clean_order, rc);
  shuffle(noisy_order, rn);

  const auto alloc = mixed_batch_allocation(clean.size(), noisy.size(), batch_size);
  std::vector<Batch> batches(alloc.size());
  size_t ci = 0, ni = 0;
  for (size_t b = 0; b < alloc.size(); ++b) {
    for (int k = 0; k < alloc[b].first; ++k, ++ci) {
      const int idx = clean_order[ci];
      batches[b].clean.push_back(encode_for_training(
          clean[idx], vocab, max_source_len, max_target_len, idx));
    }
    for (int k = 0; k < alloc[b].second; ++k, ++ni) {
      const int idx = noisy_order[ni];
      batches[b].noisy.push_back(encode_for_training(
          noisy[idx], vocab, max_source_len, max_target_len, idx));
    }
    pad_batch(batches[b]);
  }
  return batches;
}

}  // namespace roslu
