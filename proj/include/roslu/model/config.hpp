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

#include <string>

#include "json.hpp"

namespace roslu {

/// Architecture hyperparameters. Positional encodings are fixed sinusoidal;
/// blocks are pre-norm with a final layer norm after each stack.
struct ModelConfig {
  int num_layers = 4;
  int num_heads = 8;
  int hidden_size = 96;
  int feedforward_size = 0;  // 0 means 4 * hidden_size
  int vocab_size = 0;
  int max_source_len = 64;
  int max_target_len = 48;
  double dropout_rate = 0.1;
  double grl_lambda = 1.0;
  /// DANN-style symmetric reversal: the clean term of the adversarial loss
  /// also back-propagates reversed into the encoder. Disable for ablation.
  bool reverse_clean_term = true;

  int ff() const { return feedforward_size > 0 ? feedforward_size : 4 * hidden_size; }
  int head_dim() const { return hidden_size / num_heads; }

  /// Raises ConfigError on violated invariants.
  void validate(int num_labels) const;

  nlohmann::json to_json() const;
  static ModelConfig from_json(const nlohmann::json& j);
};

}  // namespace roslu
