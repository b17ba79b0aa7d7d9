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

// Command-line front end: noise-gen, train, gridsearch, eval, decode.
// Configuration is flat key=value with flags taking precedence; every
// command writes a replayable snapshot of its effective configuration next
// to its artifacts. Exit codes: 0 success, 1 runtime failure, 2 usage error.

#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "roslu/data/corpus.hpp"
#include "roslu/data/noise.hpp"
#include "roslu/data/spans.hpp"
#include "roslu/error.hpp"
#include "roslu/eval/correction.hpp"
#include "roslu/eval/evaluate.hpp"
#include "roslu/run_config.hpp"
#include "roslu/train/gridsearch.hpp"
#include "roslu/train/trainer.hpp"

namespace {

using roslu::RunConfig;

/// Binds config keys to CLI flags with flag > config-file > default
/// precedence and provenance tracking.
class Binder {
 public:
  explicit Binder(CLI::App* cmd) : cmd_(cmd) {
    cmd_->add_option("--config", config_path_,
                     "flat key=value configuration file");
  }

  void opt(const std::string& key, const std::string& flag,
           const std::string& def, const std::string& help) {
    rc_.set_default(key, def);
    vals_[key] = def;
    opts_[key] = cmd_->add_option(flag, vals_[key], help);
  }

  void flag(const std::string& key, const std::string& flag_spec, bool def,
            const std::string& help) {
    rc_.set_default(key, def ? "true" : "false");
    bools_[key] = def;
    opts_[key] = cmd_->add_flag(flag_spec, bools_[key], help);
  }

  RunConfig finalize() {
    if (!config_path_.empty()) rc_.load_file(config_path_);
    for (auto& [key, opt] : opts_) {
      if (opt->count() == 0) continue;
      if (bools_.count(key))
        rc_.set_from_flag(key, bools_[key] ? "true" : "false");
      else
        rc_.set_from_flag(key, vals_[key]);
    }
    return rc_;
  }

 private:
  CLI::App* cmd_;
  std::string config_path_;
  RunConfig rc_;
  std::map<std::string, std::string> vals_;
  std::map<std::string, bool> bools_;
  std::map<std::string, CLI::Option*> opts_;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

uint64_t require_seed(const RunConfig& rc) {
  if (rc.get("seed").empty())
    throw UsageError(
        "--seed is required: randomized commands never fall back to a clock "
        "seed");
  return rc.get_u64("seed");
}

std::vector<roslu::NoiseKind> parse_strategies(const std::string& csv) {
  std::vector<roslu::NoiseKind> out;
  std::istringstream is(csv);
  std::string item;
  while (std::getline(is, item, ','))
    if (!item.empty()) out.push_back(roslu::noise_kind_from_string(item));
  if (out.empty()) throw UsageError("no noise strategies given");
  return out;
}

std::vector<roslu::RawExample> load_noisy_split(const std::string& dir) {
  auto examples = roslu::load_split(dir);
  if (roslu::has_meta(dir)) {
    roslu::load_meta(dir, examples);
  } else {
    for (auto& ex : examples) ex.domain = roslu::Domain::Noisy;
  }
  return examples;
}

void add_model_options(Binder& b) {
  b.opt("layers", "--layers", "4", "transformer layers per stack");
  b.opt("heads", "--heads", "8", "attention heads");
  b.opt("hidden", "--hidden", "96", "hidden size");
  b.opt("ff", "--ff", "0", "feedforward size (0 = 4*hidden)");
  b.opt("max-source-len", "--max-source-len", "64",
        "maximum source positions incl. DOM");
  b.opt("max-target-len", "--max-target-len", "48",
        "maximum target positions incl. EOS");
  b.opt("dropout", "--dropout", "0.1", "dropout rate");
  b.opt("grl-lambda", "--grl-lambda", "1.0", "gradient reversal scale");
  b.flag("reverse-clean-term", "--reverse-clean-term,!--no-reverse-clean-term",
         true, "also reverse the clean term of the adversarial loss");
}

void add_train_options(Binder& b) {
  b.opt("train-clean", "--train-clean", "", "clean training split directory");
  b.opt("train-noisy", "--train-noisy", "", "noisy training split directory");
  b.opt("dev-clean", "--dev-clean", "", "clean dev split directory");
  b.opt("dev-noisy", "--dev-noisy", "", "noisy dev split directory");
  b.opt("dev-ref", "--dev-ref", "",
        "corpus the dev forge ran on (gold for noisy dev)");
  b.opt("out", "--out", "", "output directory");
  b.opt("lr", "--lr", "0.001", "SGD learning rate");
  b.opt("momentum", "--momentum", "0", "SGD momentum (0 = plain SGD)");
  b.opt("batch-size", "--batch-size", "32", "batch size");
  b.opt("max-epochs", "--max-epochs", "60", "epoch limit");
  b.opt("patience", "--patience", "10",
        "evaluations without dev improvement before stopping");
  b.opt("eval-every", "--eval-every", "100", "steps between dev evaluations");
  b.opt("seed", "--seed", "", "random seed (required)");
  b.opt("threads", "--threads", "1", "decoding threads");
  b.opt("mode", "--mode", "global", "global | clean-only");
  b.opt("model-kind", "--model-kind", "generator", "generator | tagger");
  add_model_options(b);
}

roslu::TrainConfig train_config_from(const RunConfig& rc) {
  roslu::TrainConfig cfg;
  cfg.lr = rc.get_double("lr");
  cfg.momentum = rc.get_double("momentum");
  cfg.batch_size = static_cast<int>(rc.get_int("batch-size"));
  cfg.max_epochs = static_cast<int>(rc.get_int("max-epochs"));
  cfg.patience = static_cast<int>(rc.get_int("patience"));
  cfg.eval_every = static_cast<int>(rc.get_int("eval-every"));
  cfg.seed = require_seed(rc);
  cfg.threads = static_cast<int>(rc.get_int("threads"));
  cfg.mode = roslu::train_mode_from_string(rc.get("mode"));
  cfg.model_kind = roslu::model_kind_from_string(rc.get("model-kind"));
  cfg.model.num_layers = static_cast<int>(rc.get_int("layers"));
  cfg.model.num_heads = static_cast<int>(rc.get_int("heads"));
  cfg.model.hidden_size = static_cast<int>(rc.get_int("hidden"));
  cfg.model.feedforward_size = static_cast<int>(rc.get_int("ff"));
  cfg.model.max_source_len = static_cast<int>(rc.get_int("max-source-len"));
  cfg.model.max_target_len = static_cast<int>(rc.get_int("max-target-len"));
  cfg.model.dropout_rate = rc.get_double("dropout");
  cfg.model.grl_lambda = rc.get_double("grl-lambda");
  cfg.model.reverse_clean_term = rc.get_bool("reverse-clean-term");
  return cfg;
}

roslu::Corpora corpora_from(const RunConfig& rc) {
  roslu::Corpora c;
  if (rc.get("train-clean").empty())
    throw UsageError("--train-clean is required");
  if (rc.get("dev-clean").empty()) throw UsageError("--dev-clean is required");
  c.train_clean = roslu::load_split(rc.get("train-clean"));
  if (!rc.get("train-noisy").empty())
    c.train_noisy = load_noisy_split(rc.get("train-noisy"));
  c.dev_clean = roslu::load_split(rc.get("dev-clean"));
  if (!rc.get("dev-noisy").empty())
    c.dev_noisy = load_noisy_split(rc.get("dev-noisy"));
  if (!rc.get("dev-ref").empty())
    c.dev_refs = roslu::load_split(rc.get("dev-ref"));
  return c;
}

int cmd_noise_gen(const RunConfig& rc) {
  if (rc.get("in").empty()) throw UsageError("--in is required");
  if (rc.get("out-noisy").empty() || rc.get("out-clean").empty())
    throw UsageError("--out-noisy and --out-clean are required");
  roslu::NoiseConfig cfg;
  cfg.ratio = rc.get_double("ratio");
  cfg.strategies = parse_strategies(rc.get("strategies"));
  cfg.protect_slots = rc.get_bool("protect-slots");
  cfg.seed = require_seed(rc);
  if (!rc.get("replace-vocab").empty()) {
    std::set<std::string> words;
    for (const auto& ex : roslu::load_split(rc.get("replace-vocab")))
      words.insert(ex.tokens.begin(), ex.tokens.end());
    cfg.replace_pool.assign(words.begin(), words.end());
  }
  const auto corpus = roslu::load_split(rc.get("in"));
  const auto res = roslu::inject_noise(corpus, cfg);
  roslu::write_split(rc.get("out-noisy"), res.noisy);
  roslu::write_split(rc.get("out-clean"), res.untouched);
  rc.write_snapshot(std::filesystem::path(rc.get("out-noisy")) /
                    "config.snapshot");
  long in_slot = 0;
  for (const auto& ex : res.noisy) in_slot += ex.perturbation->in_slot;
  std::cout << "perturbed=" << res.noisy.size()
            << " untouched=" << res.untouched.size() << " in_slot=" << in_slot
            << "\n";
  return 0;
}

int cmd_train(const RunConfig& rc) {
  if (rc.get("out").empty()) throw UsageError("--out is required");
  auto cfg = train_config_from(rc);
  cfg.alpha = rc.get_double("alpha");
  const auto corpora = corpora_from(rc);
  const std::filesystem::path out = rc.get("out");
  rc.write_snapshot(out / "config.snapshot");
  auto result = roslu::train(cfg, corpora, out, &std::cout);
  std::cout << "best_dev_f1_global=" << result.best_dev_f1
            << " best_dev_f1_clean=" << result.best_dev_f1_clean
            << " best_dev_f1_noisy=" << result.best_dev_f1_noisy << " steps="
            << result.steps << " checkpoint=" << result.best_checkpoint.string()
            << (result.diverged ? " DIVERGED" : "") << "\n";
  return result.diverged ? 1 : 0;
}

int cmd_gridsearch(const RunConfig& rc) {
  if (rc.get("out").empty()) throw UsageError("--out is required");
  auto cfg = train_config_from(rc);
  const auto corpora = corpora_from(rc);
  const std::filesystem::path out = rc.get("out");
  rc.write_snapshot(out / "config.snapshot");
  auto grid = roslu::grid_search_alpha(cfg, corpora, out,
                                       roslu::default_alpha_grid(), &std::cout);
  std::cout << "best_alpha=" << grid.best_alpha
            << " table=" << grid.table_path.string() << "\n";
  return 0;
}

int cmd_eval(const RunConfig& rc) {
  if (rc.get("checkpoint").empty()) throw UsageError("--checkpoint is required");
  if (rc.get("test-clean").empty()) throw UsageError("--test-clean is required");
  auto ck = roslu::load_checkpoint(rc.get("checkpoint"));

  auto clean_test = roslu::load_split(rc.get("test-clean"));
  std::vector<roslu::RawExample> noisy_test, refs;
  if (!rc.get("test-noisy").empty())
    noisy_test = load_noisy_split(rc.get("test-noisy"));
  if (!rc.get("test-ref").empty()) refs = roslu::load_split(rc.get("test-ref"));

  roslu::EvalOptions opts;
  opts.threads = static_cast<int>(rc.get_int("threads"));
  opts.beam_width = static_cast<int>(rc.get_int("beam"));

  std::vector<roslu::AuditLine> audit;
  auto report =
      roslu::evaluate(ck.params, ck.vocab, ck.tag_strings, clean_test,
                      noisy_test, refs, opts, &audit);

  const std::filesystem::path report_path = rc.get("report");
  if (!report_path.empty()) {
    if (report_path.has_parent_path())
      std::filesystem::create_directories(report_path.parent_path());
    nlohmann::ordered_json j = report.to_json();

    // optional correction analysis over forged in-slot noise
    if (!rc.get("correction-report").empty()) {
      if (noisy_test.empty())
        throw roslu::DataError("correction analysis needs --test-noisy");
      std::vector<roslu::CorrectionVerdict> verdicts;
      std::optional<roslu::Checkpoint> baseline;
      if (!rc.get("baseline-checkpoint").empty())
        baseline = roslu::load_checkpoint(rc.get("baseline-checkpoint"));
      auto correction = roslu::correction_analysis(
          ck.params, ck.vocab, noisy_test, refs, opts,
          baseline ? &baseline->params : nullptr,
          baseline ? &baseline->tag_strings : nullptr, &verdicts);
      std::ofstream cr(rc.get("correction-report"), std::ios::trunc);
      nlohmann::ordered_json cj = correction.to_json();
      auto arr = nlohmann::ordered_json::array();
      for (const auto& v : verdicts) arr.push_back(v.to_json());
      cj["verdicts"] = arr;
      cr << cj.dump(2) << "\n";
    }

    std::ofstream out(report_path, std::ios::trunc);
    if (!out) throw roslu::IoError("cannot write " + report_path.string());
    out << j.dump(2) << "\n";
    rc.write_snapshot(report_path.string() + ".config");
  }
  if (!rc.get("audit").empty()) {
    std::ofstream out(rc.get("audit"), std::ios::trunc);
    if (!out) throw roslu::IoError("cannot write " + rc.get("audit"));
    for (const auto& line : audit) out << line.to_json().dump() << "\n";
  }
  std::cout << report.to_json().dump(2) << "\n";
  return 0;
}

int cmd_decode(const RunConfig& rc) {
  if (rc.get("checkpoint").empty()) throw UsageError("--checkpoint is required");
  auto ck = roslu::load_checkpoint(rc.get("checkpoint"));
  if (ck.params.kind != roslu::ModelKind::Generator)
    throw roslu::ContractError("decode needs a generator checkpoint");

  std::istream* in = &std::cin;
  std::ifstream fin;
  if (rc.get("input") != "-") {
    fin.open(rc.get("input"));
    if (!fin) throw roslu::IoError("cannot open " + rc.get("input"));
    in = &fin;
  }
  std::ostream* out = &std::cout;
  std::ofstream fout;
  if (rc.get("output") != "-") {
    fout.open(rc.get("output"), std::ios::trunc);
    if (!fout) throw roslu::IoError("cannot write " + rc.get("output"));
    out = &fout;
    rc.write_snapshot(rc.get("output") + ".config");
  }
  const int beam = static_cast<int>(rc.get_int("beam"));

  std::string line;
  while (std::getline(*in, line)) {
    std::istringstream is(line);
    roslu::RawExample ex;
    std::string tok;
    while (is >> tok) ex.tokens.push_back(tok);
    const auto enc =
        roslu::encode_source(ex, ck.vocab, ck.params.config.max_source_len);
    const auto dec = roslu::greedy_decode(ck.params, enc.src, enc.mask,
                                          ck.params.config.max_target_len, beam);
    const auto parsed = roslu::parse_generated(dec.ids, ck.vocab);
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& slot : parsed.slots) {
      std::string value;
      for (size_t i = 0; i < slot.value.size(); ++i)
        value += (i ? " " : "") + slot.value[i];
      arr.push_back({{"value", value}, {"label", roslu::label_token(slot.label)}});
    }
    *out << arr.dump() << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "robust slot filling: adversarial domain adaptation over a "
      "denoising slot generator"};
  app.require_subcommand(1);

  std::function<int()> action;

  auto* noise = app.add_subcommand(
      "noise-gen", "perturb a corpus into noisy/clean partitions");
  {
    auto binder = std::make_shared<Binder>(noise);
    binder->opt("in", "--in", "", "input split directory");
    binder->opt("out-noisy", "--out-noisy", "",
                "output directory for perturbed sentences (+ meta.jsonl)");
    binder->opt("out-clean", "--out-clean", "",
                "output directory for the untouched remainder");
    binder->opt("ratio", "--ratio", "0.2", "fraction of sentences to perturb");
    binder->opt("strategies", "--strategies", "drop,replace,swap",
                "comma list of drop|replace|swap");
    binder->flag("protect-slots", "--protect-slots,!--no-protect-slots", true,
                 "keep perturbations out of slot chunks");
    binder->opt("replace-vocab", "--replace-vocab", "",
                "directory whose words form the replacement pool");
    binder->opt("seed", "--seed", "", "random seed (required)");
    binder->opt("threads", "--threads", "1", "accepted for interface parity");
    noise->callback(
        [binder, &action]() { action = [binder]() { return cmd_noise_gen(binder->finalize()); }; });
  }

  auto* train = app.add_subcommand("train", "joint adversarial training");
  {
    auto binder = std::make_shared<Binder>(train);
    binder->opt("alpha", "--alpha", "0.5",
                "adversarial loss weight in the joint objective");
    add_train_options(*binder);
    train->callback(
        [binder, &action]() { action = [binder]() { return cmd_train(binder->finalize()); }; });
  }

  auto* grid = app.add_subcommand("gridsearch",
                                  "train one model per alpha in 0.0..1.0");
  {
    auto binder = std::make_shared<Binder>(grid);
    add_train_options(*binder);
    grid->callback(
        [binder, &action]() { action = [binder]() { return cmd_gridsearch(binder->finalize()); }; });
  }

  auto* eval = app.add_subcommand("eval", "score a checkpoint on test splits");
  {
    auto binder = std::make_shared<Binder>(eval);
    binder->opt("checkpoint", "--checkpoint", "", "model checkpoint");
    binder->opt("test-clean", "--test-clean", "", "clean test directory");
    binder->opt("test-noisy", "--test-noisy", "", "noisy test directory");
    binder->opt("test-ref", "--test-ref", "",
                "corpus the test forge ran on (gold for noisy test)");
    binder->opt("report", "--report", "", "write EvalReport JSON here");
    binder->opt("audit", "--audit", "", "write per-utterance JSONL here");
    binder->opt("correction-report", "--correction-report", "",
                "write in-slot correction analysis JSON here");
    binder->opt("baseline-checkpoint", "--baseline-checkpoint", "",
                "tagging baseline checkpoint for the correction analysis");
    binder->opt("beam", "--beam", "1", "beam width (1 = greedy)");
    binder->opt("threads", "--threads", "1", "decoding threads");
    eval->callback(
        [binder, &action]() { action = [binder]() { return cmd_eval(binder->finalize()); }; });
  }

  auto* dec = app.add_subcommand("decode",
                                 "parse utterances (one per line) into slots");
  {
    auto binder = std::make_shared<Binder>(dec);
    binder->opt("checkpoint", "--checkpoint", "", "model checkpoint");
    binder->opt("input", "--input", "-", "utterance file or - for stdin");
    binder->opt("output", "--output", "-", "JSONL output file or - for stdout");
    binder->opt("beam", "--beam", "1", "beam width (1 = greedy)");
    binder->opt("threads", "--threads", "1", "accepted for interface parity");
    dec->callback(
        [binder, &action]() { action = [binder]() { return cmd_decode(binder->finalize()); }; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    return action ? action() : 2;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const roslu::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
