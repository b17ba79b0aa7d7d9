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

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "roslu/data/example.hpp"

namespace roslu {

/// Token table with a fixed layout: reserved specials, then the uppercased
/// slot-label tokens (sorted), then words by descending training frequency
/// with lexicographic tie-breaking. The layout is a pure function of the
/// corpora, so two builds over the same data are identical.
class Vocab {
 public:
  static constexpr int kPad = 0;
  static constexpr int kUnk = 1;
  static constexpr int kBos = 2;
  static constexpr int kEos = 3;
  static constexpr int kDom = 4;
  static constexpr int kNumSpecials = 5;

  Vocab() = default;

  static Vocab build(
      const std::vector<const std::vector<RawExample>*>& corpora,
      const std::vector<std::string>& label_inventory);

  /// Reconstructs a vocabulary from an explicit token list (checkpoints).
  static Vocab from_tokens(std::vector<std::string> tokens, int num_labels);

  int size() const { return static_cast<int>(id_to_token_.size()); }
  int num_labels() const { return num_labels_; }

  /// Token id, kUnk when absent.
  int id(const std::string& token) const;
  const std::string& token(int id) const;

  bool is_label(int id) const {
    return id >= kNumSpecials && id < kNumSpecials + num_labels_;
  }

  const std::vector<std::string>& tokens() const { return id_to_token_; }

  /// FNV-1a over the token list; checkpoint loaders compare this.
  uint64_t hash() const;

  std::vector<int> encode(const std::vector<std::string>& words) const;

  /// Encodes a generation target; raises DataError if a label token is
  /// missing from the vocabulary.
  std::vector<int> encode_target(const std::vector<std::string>& target) const;

  std::vector<std::string> decode(const std::vector<int>& ids) const;

  /// Distinct slot labels, lowercase, as found in a tag inventory.
  static std::vector<std::string> label_inventory(
      const std::vector<const std::vector<RawExample>*>& corpora);

 private:
  std::vector<std::string> id_to_token_;
  std::unordered_map<std::string, int> token_to_id_;
  int num_labels_ = 0;
};

}  // namespace roslu
