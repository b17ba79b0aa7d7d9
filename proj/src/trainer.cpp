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

#include "roslu/train/trainer.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>

#include "json.hpp"
#include "roslu/data/spans.hpp"
#include "roslu/error.hpp"
#include "roslu/eval/evaluate.hpp"

namespace roslu {

std::string to_string(TrainMode m) {
  return m == TrainMode::CleanOnly ? "clean-only" : "global";
}

TrainMode train_mode_from_string(const std::string& s) {
  if (s == "clean-only") return TrainMode::CleanOnly;
  if (s == "global") return TrainMode::Global;
  throw ConfigError("unknown train mode '" + s + "'");
}

void TrainConfig::validate() const {
  if (alpha < 0.0 || alpha > 1.0)
    throw ConfigError("alpha must be in [0, 1]");
  if (!(lr > 0.0)) throw ConfigError("lr must be positive");
  if (momentum < 0.0 || momentum >= 1.0)
    throw ConfigError("momentum must be in [0, 1)");
  if (batch_size < 1) throw ConfigError("batch_size must be >= 1");
  if (max_epochs < 1) throw ConfigError("max_epochs must be >= 1");
  if (patience < 1) throw ConfigError("patience must be >= 1");
  if (eval_every < 1) throw ConfigError("eval_every must be >= 1");
  if (threads < 1) throw ConfigError("threads must be >= 1");
}

namespace {

// SGD with an optional momentum buffer (off by default).
class SgdOptimizer {
 public:
  SgdOptimizer(double lr, double momentum) : lr_(lr), momentum_(momentum) {}

  void step(const std::vector<Var>& params) {
    if (momentum_ == 0.0) {
      sgd_step(params, real_t(lr_));
      return;
    }
    if (velocity_.empty())
      for (const auto& p : params)
        velocity_.push_back(RMat::Zero(p.rows(), p.cols()));
    for (const auto& p : params)
      if (p.has_grad() && !p.grad().allFinite())
        throw StepError("sgd_step: non-finite gradient for parameter '" +
                        p.name() + "'");
    for (size_t i = 0; i < params.size(); ++i) {
      if (!params[i].has_grad()) continue;
      velocity_[i] = real_t(momentum_) * velocity_[i] + params[i].grad();
      params[i].node().value -= real_t(lr_) * velocity_[i];
    }
  }

 private:
  double lr_, momentum_;
  std::vector<RMat> velocity_;
};

std::vector<std::vector<int>> gold_tag_ids(
    const std::vector<RawExample>& corpus,
    const std::vector<std::string>& tag_strings) {
  std::map<std::string, int> index;
  for (size_t i = 0; i < tag_strings.size(); ++i)
    index[tag_strings[i]] = static_cast<int>(i);
  std::vector<std::vector<int>> out(corpus.size());
  for (size_t i = 0; i < corpus.size(); ++i) {
    out[i].reserve(corpus[i].bio_tags.size());
    for (const auto& t : corpus[i].bio_tags) {
      auto it = index.find(t);
      if (it == index.end())
        throw DataError("tag '" + t + "' missing from the tag inventory");
      out[i].push_back(it->second);
    }
  }
  return out;
}

double discriminator_accuracy(const ModelParams& params, const Vocab& vocab,
                              const std::vector<RawExample>& clean,
                              const std::vector<RawExample>& noisy) {
  long correct = 0, total = 0;
  auto run = [&](const std::vector<RawExample>& xs, bool is_clean) {
    for (const auto& ex : xs) {
      const auto enc = encode_source(ex, vocab, params.config.max_source_len);
      const auto hidden = encode(params, enc.src, enc.mask, nullptr);
      const double p = discriminate(params, hidden);
      correct += is_clean ? (p > 0.5) : (p < 0.5);
      ++total;
    }
  };
  run(clean, true);
  run(noisy, false);
  return total ? static_cast<double>(correct) / total : 0.0;
}

}  // namespace

TrainResult train(const TrainConfig& cfg, const Corpora& corpora,
                  const std::filesystem::path& out_dir, std::ostream* console) {
  cfg.validate();
  if (corpora.train_clean.empty())
    throw DataError("train: clean training corpus is empty");
  if (corpora.dev_clean.empty() && corpora.dev_noisy.empty())
    throw DataError("train: dev set is empty");

  const bool use_noisy =
      cfg.mode == TrainMode::Global && !corpora.train_noisy.empty();
  const std::vector<RawExample> no_noisy;
  const auto& noisy_train = use_noisy ? corpora.train_noisy : no_noisy;
  // With no noisy corpus the adversarial term has no negative class; train
  // pure generation instead ("w/o noisy" setting).
  const double alpha = use_noisy ? cfg.alpha : 0.0;

  std::vector<const std::vector<RawExample>*> vocab_sources{
      &corpora.train_clean};
  if (use_noisy) vocab_sources.push_back(&noisy_train);
  const auto labels = Vocab::label_inventory(vocab_sources);
  const Vocab vocab = Vocab::build(vocab_sources, labels);

  ModelConfig mc = cfg.model;
  mc.vocab_size = vocab.size();
  mc.validate(vocab.num_labels());

  std::vector<std::string> tag_strings;
  std::vector<std::vector<int>> train_tag_ids;
  if (cfg.model_kind == ModelKind::Tagger) {
    tag_strings = tag_inventory(labels);
    train_tag_ids = gold_tag_ids(corpora.train_clean, tag_strings);
  }

  ModelParams params = ModelParams::init(
      mc, cfg.model_kind,
      static_cast<int>(tag_strings.empty() ? 0 : tag_strings.size()),
      cfg.seed);
  SgdOptimizer opt(cfg.lr, cfg.momentum);

  std::filesystem::create_directories(out_dir);
  TrainResult result;
  result.vocab = vocab;
  result.tag_strings = tag_strings;
  result.metrics_path = out_dir / "metrics.jsonl";
  result.best_checkpoint = out_dir / "best.ckpt";
  std::ofstream metrics(result.metrics_path, std::ios::trunc);
  if (!metrics) throw IoError("cannot write " + result.metrics_path.string());

  {
    nlohmann::ordered_json head;
    head["type"] = "config";
    head["alpha"] = alpha;
    head["lr"] = cfg.lr;
    head["momentum"] = cfg.momentum;
    head["batch_size"] = cfg.batch_size;
    head["max_epochs"] = cfg.max_epochs;
    head["patience"] = cfg.patience;
    head["eval_every"] = cfg.eval_every;
    head["seed"] = cfg.seed;
    head["mode"] = to_string(cfg.mode);
    head["model_kind"] = to_string(cfg.model_kind);
    head["model"] = mc.to_json();
    head["train_clean"] = corpora.train_clean.size();
    head["train_noisy"] = noisy_train.size();
    head["vocab_size"] = vocab.size();
    head["vocab_hash"] = vocab.hash();
    metrics << head.dump() << "\n";
  }

  TrainState state;
  EvalOptions eval_opts;
  eval_opts.threads = cfg.threads;
  Rng root(cfg.seed);
  int stale_evals = 0;
  bool stop = false;
  bool saved_any = false;

  auto eval_point = [&]() {
    auto report = evaluate(params, vocab, tag_strings, corpora.dev_clean,
                           corpora.dev_noisy, corpora.dev_refs, eval_opts);
    const double disc_acc = discriminator_accuracy(
        params, vocab, corpora.dev_clean, corpora.dev_noisy);
    nlohmann::ordered_json line;
    line["type"] = "eval";
    line["step"] = state.step;
    line["epoch"] = state.epoch;
    // optimization uses batch sums; logs report per-token / per-example means
    line["s2s_loss"] =
        state.window_tokens ? state.s2s_sum / state.window_tokens : 0.0;
    line["adv_loss"] =
        state.window_examples ? state.adv_sum / state.window_examples : 0.0;
    line["joint_loss"] =
        state.window_examples ? state.joint_sum / state.window_examples : 0.0;
    line["dev_f1_clean"] = report.clean.f1;
    line["dev_f1_noisy"] = report.noisy.present ? report.noisy.f1 : 0.0;
    line["dev_f1_global"] = report.global.f1;
    line["disc_acc"] = disc_acc;
    metrics << line.dump() << "\n";
    metrics.flush();
    if (console)
      *console << "step " << state.step << " dev_f1_global "
               << report.global.f1 << " disc_acc " << disc_acc << "\n";

    state.s2s_sum = state.adv_sum = state.joint_sum = 0.0;
    state.window_steps = state.window_tokens = state.window_examples = 0;

    if (report.global.f1 > state.best_dev_f1) {
      state.best_dev_f1 = report.global.f1;
      result.best_dev_f1 = report.global.f1;
      result.best_dev_f1_clean = report.clean.f1;
      result.best_dev_f1_noisy = report.noisy.present ? report.noisy.f1 : 0.0;
      result.best_step = state.step;
      save_checkpoint(result.best_checkpoint, params, vocab, tag_strings);
      saved_any = true;
      stale_evals = 0;
    } else {
      if (++stale_evals >= cfg.patience) stop = true;
    }
  };

  for (int epoch = 0; epoch < cfg.max_epochs && !stop; ++epoch) {
    state.epoch = epoch;
    auto batches =
        epoch_batches(corpora.train_clean, noisy_train, vocab, cfg.batch_size,
                      cfg.seed, epoch, mc.max_source_len, mc.max_target_len);
    for (const auto& batch : batches) {
      ++state.step;
      Rng step_rng = root.fork(0x57E9, static_cast<uint64_t>(state.step));
      JointLossResult joint;
      if (cfg.model_kind == ModelKind::Generator) {
        joint = joint_loss(params, batch, alpha, &step_rng);
      } else {
        std::vector<std::vector<int>> batch_tags;
        for (const auto& ex : batch.clean)
          batch_tags.push_back(train_tag_ids.at(ex.corpus_index));
        joint = tagger_joint_loss(params, batch, batch_tags, alpha, &step_rng);
      }
      const double loss_value = static_cast<double>(joint.loss.item());
      if (!std::isfinite(loss_value)) {
        if (!saved_any)
          save_checkpoint(result.best_checkpoint, params, vocab, tag_strings);
        result.diverged = true;
        nlohmann::ordered_json line;
        line["type"] = "diverged";
        line["step"] = state.step;
        metrics << line.dump() << "\n";
        if (console)
          *console << "diverged at step " << state.step
                   << "; last-good checkpoint kept\n";
        stop = true;
        break;
      }
      backward(joint.loss);
      opt.step(params.all());
      zero_grad(params.all());

      state.s2s_sum += joint.s2s_sum;
      state.adv_sum += joint.adv_sum;
      state.joint_sum += joint.s2s_sum + alpha * joint.adv_sum;
      ++state.window_steps;
      state.window_tokens += joint.n_target_tokens;
      state.window_examples += joint.n_clean + joint.n_noisy;

      if (state.step % cfg.eval_every == 0) {
        eval_point();
        if (stop) break;
      }
    }
    result.epochs = epoch + 1;
  }
  if (!result.diverged && state.window_steps > 0) eval_point();
  if (!saved_any && !result.diverged)
    save_checkpoint(result.best_checkpoint, params, vocab, tag_strings);

  result.steps = state.step;
  return result;
}

}  // namespace roslu
