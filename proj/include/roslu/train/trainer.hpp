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

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "roslu/data/noise.hpp"
#include "roslu/model/checkpoint.hpp"
#include "roslu/model/losses.hpp"

namespace roslu {

enum class TrainMode { CleanOnly, Global };

std::string to_string(TrainMode m);
TrainMode train_mode_from_string(const std::string& s);

struct TrainConfig {
  double alpha = 0.0;
  double lr = 0.001;
  double momentum = 0.0;  // plain SGD by default
  int batch_size = 32;
  int max_epochs = 60;
  int patience = 10;  // evaluations without dev improvement
  int eval_every = 100;  // steps
  uint64_t seed = 0;
  int threads = 1;
  TrainMode mode = TrainMode::Global;
  ModelKind model_kind = ModelKind::Generator;
  ModelConfig model;

  void validate() const;
};

struct TrainState {
  long step = 0;
  int epoch = 0;
  double best_dev_f1 = -1.0;
  std::string best_checkpoint_path;
  // running sums since the last eval point
  double s2s_sum = 0.0, adv_sum = 0.0, joint_sum = 0.0;
  long window_steps = 0, window_tokens = 0, window_examples = 0;
};

struct Corpora {
  std::vector<RawExample> train_clean;
  std::vector<RawExample> train_noisy;
  std::vector<RawExample> dev_clean;
  std::vector<RawExample> dev_noisy;
  std::vector<RawExample> dev_refs;  // corpus the dev forge ran on
};

struct TrainResult {
  double best_dev_f1 = 0.0;
  double best_dev_f1_clean = 0.0;
  double best_dev_f1_noisy = 0.0;
  long best_step = 0;
  std::filesystem::path best_checkpoint;
  std::filesystem::path metrics_path;
  bool diverged = false;
  long steps = 0;
  int epochs = 0;
  Vocab vocab;
  std::vector<std::string> tag_strings;
};

/// Joint optimization: each iteration computes the joint loss on one mixed
/// batch, runs a single backward pass (the GRL realizes the min-max game)
/// and updates encoder, decoder and discriminator together. Dev slot-F1 is
/// evaluated every eval_every steps; the best checkpoint is retained and
/// training stops at max_epochs or when patience runs out. A non-finite
/// loss aborts with the last-good parameters saved.
TrainResult train(const TrainConfig& cfg, const Corpora& corpora,
                  const std::filesystem::path& out_dir,
                  std::ostream* console = nullptr);

}  // namespace roslu
