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

#include "roslu/model/config.hpp"

#include "roslu/data/vocab.hpp"
#include "roslu/error.hpp"

namespace roslu {

void ModelConfig::validate(int num_labels) const {
  if (num_layers < 1) throw ConfigError("num_layers must be >= 1");
  if (num_heads < 1) throw ConfigError("num_heads must be >= 1");
  if (hidden_size < 1) throw ConfigError("hidden_size must be >= 1");
  if (hidden_size % num_heads != 0)
    throw ConfigError("hidden_size " + std::to_string(hidden_size) +
                      " not divisible by num_heads " +
                      std::to_string(num_heads));
  if (max_source_len < 2 || max_target_len < 2)
    throw ConfigError("max sequence lengths must be >= 2");
  if (vocab_size < Vocab::kNumSpecials + num_labels)
    throw ConfigError("vocab_size " + std::to_string(vocab_size) +
                      " smaller than reserved specials plus " +
                      std::to_string(num_labels) + " labels");
  if (dropout_rate < 0.0 || dropout_rate >= 1.0)
    throw ConfigError("dropout_rate must be in [0, 1)");
  if (grl_lambda < 0.0) throw ConfigError("grl_lambda must be >= 0");
}

nlohmann::json ModelConfig::to_json() const {
  return nlohmann::json{{"num_layers", num_layers},
                        {"num_heads", num_heads},
                        {"hidden_size", hidden_size},
                        {"feedforward_size", feedforward_size},
                        {"vocab_size", vocab_size},
                        {"max_source_len", max_source_len},
                        {"max_target_len", max_target_len},
                        {"dropout_rate", dropout_rate},
                        {"grl_lambda", grl_lambda},
                        {"reverse_clean_term", reverse_clean_term}};
}

ModelConfig ModelConfig::from_json(const nlohmann::json& j) {
  ModelConfig c;
  c.num_layers = j.at("num_layers").get<int>();
  c.num_heads = j.at("num_heads").get<int>();
  c.hidden_size = j.at("hidden_size").get<int>();
  c.feedforward_size = j.at("feedforward_size").get<int>();
  c.vocab_size = j.at("vocab_size").get<int>();
  c.max_source_len = j.at("max_source_len").get<int>();
  c.max_target_len = j.at("max_target_len").get<int>();
  c.dropout_rate = j.at("dropout_rate").get<double>();
  c.grl_lambda = j.at("grl_lambda").get<double>();
  c.reverse_clean_term = j.at("reverse_clean_term").get<bool>();
  return c;
}

}  // namespace roslu
