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

#include "roslu/model/decode.hpp"

#include <algorithm>
#include <cmath>

#include "roslu/data/vocab.hpp"
#include "roslu/error.hpp"
#include "roslu/model/transformer.hpp"
#include "roslu/tensor/ops.hpp"

namespace roslu {

namespace {

struct Hypothesis {
  std::vector<int> ids;  // generated tokens, no BOS
  double logprob = 0.0;
  bool finished = false;
};

// Log-softmax over the last decoder position for a given prefix.
Eigen::RowVectorXd next_token_logprobs(const ModelParams& p,
                                       const Var& enc_hidden,
                                       const std::vector<uint8_t>& src_mask,
                                       const std::vector<int>& prefix) {
  std::vector<int> dec_in;
  dec_in.reserve(prefix.size() + 1);
  dec_in.push_back(Vocab::kBos);
  dec_in.insert(dec_in.end(), prefix.begin(), prefix.end());
  auto hidden = decode_hidden(p, enc_hidden, src_mask, dec_in, nullptr);
  auto logits = output_logits(p, hidden);
  const auto row = logits.value().row(logits.rows() - 1);
  const double mx = row.maxCoeff();
  double z = 0.0;
  for (Index j = 0; j < row.cols(); ++j) z += std::exp(row(j) - mx);
  const double lse = std::log(z) + mx;
  Eigen::RowVectorXd lp(row.cols());
  for (Index j = 0; j < row.cols(); ++j)
    lp(j) = static_cast<double>(row(j)) - lse;
  return lp;
}

}  // namespace

DecodeResult greedy_decode(const ModelParams& p, const std::vector<int>& src_ids,
                           const std::vector<uint8_t>& src_mask,
                           int max_target_len, int beam_width) {
  if (beam_width < 1) throw ConfigError("beam_width must be >= 1");
  auto enc = encode(p, src_ids, src_mask, nullptr);

  std::vector<Hypothesis> beams{Hypothesis{}};
  for (int step = 0; step < max_target_len; ++step) {
    bool all_done = true;
    for (const auto& b : beams) all_done = all_done && b.finished;
    if (all_done) break;

    // candidates: finished beams carry over, live beams expand over vocab
    std::vector<Hypothesis> candidates;
    for (const auto& b : beams) {
      if (b.finished) {
        candidates.push_back(b);
        continue;
      }
      const auto lp = next_token_logprobs(p, enc, src_mask, b.ids);
      if (beam_width == 1) {
        Index best = 0;
        lp.maxCoeff(&best);  // first maximum, ties to the lower id
        Hypothesis h = b;
        h.logprob += lp(best);
        if (static_cast<int>(best) == Vocab::kEos) {
          h.finished = true;
        } else {
          h.ids.push_back(static_cast<int>(best));
        }
        candidates.push_back(std::move(h));
        continue;
      }
      for (Index t = 0; t < lp.cols(); ++t) {
        Hypothesis h = b;
        h.logprob += lp(t);
        if (static_cast<int>(t) == Vocab::kEos) {
          h.finished = true;
        } else {
          h.ids.push_back(static_cast<int>(t));
        }
        candidates.push_back(std::move(h));
      }
    }
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Hypothesis& a, const Hypothesis& b) {
                       return a.logprob > b.logprob;
                     });
    if (static_cast<int>(candidates.size()) > beam_width)
      candidates.resize(beam_width);
    beams = std::move(candidates);
  }

  // best finished beam wins; otherwise the best live prefix, truncated
  const Hypothesis* best = nullptr;
  for (const auto& b : beams)
    if (b.finished && (!best || b.logprob > best->logprob)) best = &b;
  DecodeResult res;
  if (best) {
    res.ids = best->ids;
    res.logprob = best->logprob;
  } else {
    res.ids = beams.front().ids;
    res.logprob = beams.front().logprob;
    res.truncated = true;
  }
  return res;
}

std::vector<std::string> tagging_baseline_decode(
    const ModelParams& p, const std::vector<std::string>& tags,
    const std::vector<int>& src_ids, const std::vector<uint8_t>& src_mask) {
  auto enc = encode(p, src_ids, src_mask, nullptr);
  const int n_real =
      static_cast<int>(std::count(src_mask.begin(), src_mask.end(), 1));
  auto logits = tagger_logits(p, enc, n_real);
  std::vector<std::string> out;
  out.reserve(n_real - 1);
  for (Index i = 0; i < logits.rows(); ++i) {
    Index best = 0;
    logits.value().row(i).maxCoeff(&best);
    out.push_back(tags.at(static_cast<size_t>(best)));
  }
  return out;
}

}  // namespace roslu
