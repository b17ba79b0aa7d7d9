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

#include "roslu/eval/evaluate.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "roslu/data/batch.hpp"
#include "roslu/data/spans.hpp"
#include "roslu/error.hpp"
#include "roslu/eval/parse.hpp"

namespace roslu {

namespace {

std::vector<PredictedSlot> gold_from_tags(const RawExample& ex) {
  std::vector<PredictedSlot> out;
  for (const auto& [label, value] :
       span_values(ex.tokens, bio_to_spans(ex.bio_tags)))
    out.push_back({value, label});
  return out;
}

nlohmann::ordered_json slots_json(const std::vector<PredictedSlot>& slots) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& s : slots) {
    std::string value;
    for (size_t i = 0; i < s.value.size(); ++i)
      value += (i ? " " : "") + s.value[i];
    arr.push_back({{"value", value}, {"label", s.label}});
  }
  return arr;
}

nlohmann::ordered_json split_json(const SplitReport& s) {
  if (!s.present) return nullptr;
  return nlohmann::ordered_json{{"precision", s.precision},
                                {"recall", s.recall},
                                {"f1", s.f1},
                                {"support", s.support},
                                {"utterances", s.n_utterances}};
}

SplitReport to_split(const F1Score& f, long n_utts) {
  return {true, f.precision, f.recall, f.f1, f.support, n_utts};
}

}  // namespace

nlohmann::ordered_json EvalReport::to_json() const {
  nlohmann::ordered_json j;
  j["clean"] = split_json(clean);
  j["noisy"] = split_json(noisy);
  j["global"] = split_json(global);
  j["malformed_rate"] = malformed_rate;
  j["excluded_noisy"] = excluded_noisy;
  j["matching"] = "multiset(label,value)";  // not conlleval-comparable
  if (native_span) {
    j["native_span_f1"] = {{"precision", native_span->precision},
                           {"recall", native_span->recall},
                           {"f1", native_span->f1},
                           {"support", native_span->support}};
  }
  return j;
}

nlohmann::ordered_json AuditLine::to_json() const {
  nlohmann::ordered_json j;
  j["id"] = id;
  j["domain"] = domain == Domain::Clean ? "clean" : "noisy";
  j["gold"] = slots_json(gold);
  j["predicted"] = slots_json(predicted);
  j["malformed"] = malformed;
  j["verdict"] = verdict;
  return j;
}

CorpusPredictions predict_corpus(const ModelParams& params, const Vocab& vocab,
                                 const std::vector<std::string>& tag_strings,
                                 const std::vector<RawExample>& examples,
                                 const EvalOptions& opts) {
  CorpusPredictions out;
  out.slots.resize(examples.size());
  out.malformed.assign(examples.size(), false);
  if (params.kind == ModelKind::Tagger) out.tagged_spans.resize(examples.size());

  const int n_threads = std::max(1, opts.threads);
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= examples.size()) break;
      const auto enc = encode_source(examples[i], vocab,
                                     params.config.max_source_len);
      if (params.kind == ModelKind::Generator) {
        auto dec = greedy_decode(params, enc.src, enc.mask,
                                 params.config.max_target_len, opts.beam_width);
        auto parsed = parse_generated(dec.ids, vocab);
        out.slots[i] = std::move(parsed.slots);
        out.malformed[i] = parsed.malformed || dec.truncated;
      } else {
        auto tags =
            tagging_baseline_decode(params, tag_strings, enc.src, enc.mask);
        auto spans = bio_to_spans(tags);
        out.tagged_spans[i] = spans;
        for (const auto& [label, value] :
             span_values(examples[i].tokens, spans))
          out.slots[i].push_back({value, label});
      }
    }
  };
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return out;
}

std::optional<std::vector<PredictedSlot>> resolve_gold(
    const RawExample& ex, const std::vector<RawExample>& refs) {
  if (ex.domain == Domain::Clean) {
    if (ex.bio_tags.empty() && !ex.tokens.empty()) return std::nullopt;
    return gold_from_tags(ex);
  }
  if (ex.clean_ref_id.empty()) {
    // external noisy data may carry its own (possibly corrupted) tags
    if (!ex.bio_tags.empty()) return gold_from_tags(ex);
    return std::nullopt;
  }
  size_t idx = 0;
  try {
    idx = std::stoul(ex.clean_ref_id);
  } catch (...) {
    return std::nullopt;
  }
  if (idx >= refs.size()) return std::nullopt;
  return gold_from_tags(refs[idx]);
}

EvalReport score_predictions(const std::vector<RawExample>& clean_test,
                             const std::vector<RawExample>& noisy_test,
                             const std::vector<RawExample>& noisy_refs,
                             const CorpusPredictions& clean_pred,
                             const CorpusPredictions& noisy_pred,
                             bool tagger_native_spans,
                             std::vector<AuditLine>* audit) {
  EvalReport rep;
  std::vector<std::vector<PredictedSlot>> preds_clean, golds_clean;
  std::vector<std::vector<PredictedSlot>> preds_noisy, golds_noisy;
  long malformed = 0, decoded = 0;

  auto push_audit = [&](const RawExample& ex,
                        const std::vector<PredictedSlot>& gold,
                        const std::vector<PredictedSlot>& pred,
                        bool is_malformed) {
    if (!audit) return;
    AuditLine line;
    line.id = ex.id;
    line.domain = ex.domain;
    line.gold = gold;
    line.predicted = pred;
    line.malformed = is_malformed;
    const auto c = match_counts(pred, gold);
    line.verdict = (c.matched == c.gold && c.matched == c.predicted)
                       ? "match"
                       : "mismatch";
    audit->push_back(std::move(line));
  };

  for (size_t i = 0; i < clean_test.size(); ++i) {
    auto gold = resolve_gold(clean_test[i], noisy_refs);
    ++decoded;
    malformed += clean_pred.malformed[i];
    if (!gold) continue;  // clean without tags cannot be scored
    preds_clean.push_back(clean_pred.slots[i]);
    golds_clean.push_back(*gold);
    push_audit(clean_test[i], *gold, clean_pred.slots[i],
               clean_pred.malformed[i]);
  }
  for (size_t i = 0; i < noisy_test.size(); ++i) {
    auto gold = resolve_gold(noisy_test[i], noisy_refs);
    ++decoded;
    malformed += noisy_pred.malformed[i];
    if (!gold) {
      ++rep.excluded_noisy;
      continue;
    }
    preds_noisy.push_back(noisy_pred.slots[i]);
    golds_noisy.push_back(*gold);
    push_audit(noisy_test[i], *gold, noisy_pred.slots[i],
               noisy_pred.malformed[i]);
  }

  rep.clean = to_split(slot_f1(preds_clean, golds_clean),
                       static_cast<long>(preds_clean.size()));
  if (!noisy_test.empty()) {
    rep.noisy = to_split(slot_f1(preds_noisy, golds_noisy),
                         static_cast<long>(preds_noisy.size()));
  }
  // global = union with no reweighting
  std::vector<std::vector<PredictedSlot>> preds_all = preds_clean;
  preds_all.insert(preds_all.end(), preds_noisy.begin(), preds_noisy.end());
  std::vector<std::vector<PredictedSlot>> golds_all = golds_clean;
  golds_all.insert(golds_all.end(), golds_noisy.begin(), golds_noisy.end());
  rep.global = to_split(slot_f1(preds_all, golds_all),
                        static_cast<long>(preds_all.size()));
  rep.malformed_rate = decoded ? static_cast<double>(malformed) / decoded : 0.0;

  if (tagger_native_spans) {
    std::vector<std::vector<SlotSpan>> pspans, gspans;
    for (size_t i = 0; i < clean_test.size(); ++i) {
      if (clean_test[i].bio_tags.empty()) continue;
      pspans.push_back(clean_pred.tagged_spans[i]);
      gspans.push_back(bio_to_spans(clean_test[i].bio_tags));
    }
    rep.native_span = span_f1(pspans, gspans);
  }
  return rep;
}

EvalReport evaluate(const ModelParams& params, const Vocab& vocab,
                    const std::vector<std::string>& tag_strings,
                    const std::vector<RawExample>& clean_test,
                    const std::vector<RawExample>& noisy_test,
                    const std::vector<RawExample>& noisy_refs,
                    const EvalOptions& opts, std::vector<AuditLine>* audit) {
  auto clean_pred = predict_corpus(params, vocab, tag_strings, clean_test, opts);
  auto noisy_pred = predict_corpus(params, vocab, tag_strings, noisy_test, opts);
  return score_predictions(clean_test, noisy_test, noisy_refs, clean_pred,
                           noisy_pred, params.kind == ModelKind::Tagger, audit);
}

}  // namespace roslu
