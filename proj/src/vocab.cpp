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

#include "roslu/data/vocab.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "roslu/data/spans.hpp"
#include "roslu/error.hpp"

namespace roslu {

namespace {
const std::vector<std::string> kSpecials = {"<pad>", "<unk>", "<bos>", "<eos>",
                                            "<dom>"};
}

Vocab Vocab::build(const std::vector<const std::vector<RawExample>*>& corpora,
                   const std::vector<std::string>& label_inventory) {
  if (corpora.empty()) throw DataError("build_vocab: no corpora given");

  Vocab v;
  v.id_to_token_ = kSpecials;

  std::set<std::string> label_tokens;
  for (const auto& label : label_inventory) {
    const std::string tok = label_token(label);
    if (std::find(kSpecials.begin(), kSpecials.end(), tok) != kSpecials.end())
      throw DataError("label '" + label + "' collides with reserved token '" +
                      tok + "'");
    label_tokens.insert(tok);
  }
  for (const auto& tok : label_tokens) v.id_to_token_.push_back(tok);
  v.num_labels_ = static_cast<int>(label_tokens.size());

  // Word frequencies over all corpora (clean and noisy training text).
  std::map<std::string, long> freq;
  for (const auto* corpus : corpora)
    for (const auto& ex : *corpus)
      for (const auto& w : ex.tokens) ++freq[w];

  std::vector<std::pair<std::string, long>> words(freq.begin(), freq.end());
  std::sort(words.begin(), words.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });

  std::set<std::string> present(v.id_to_token_.begin(), v.id_to_token_.end());
  for (const auto& [w, n] : words) {
    (void)n;
    if (present.insert(w).second) v.id_to_token_.push_back(w);
  }

  v.token_to_id_.reserve(v.id_to_token_.size());
  for (size_t i = 0; i < v.id_to_token_.size(); ++i)
    v.token_to_id_[v.id_to_token_[i]] = static_cast<int>(i);
  return v;
}

Vocab Vocab::from_tokens(std::vector<std::string> tokens, int num_labels) {
  if (tokens.size() < kNumSpecials ||
      !std::equal(kSpecials.begin(), kSpecials.end(), tokens.begin()))
    throw DataError("vocab token list does not start with the reserved block");
  Vocab v;
  v.id_to_token_ = std::move(tokens);
  v.num_labels_ = num_labels;
  for (size_t i = 0; i < v.id_to_token_.size(); ++i)
    v.token_to_id_[v.id_to_token_[i]] = static_cast<int>(i);
  return v;
}

int Vocab::id(const std::string& token) const {
  auto it = token_to_id_.find(token);
  return it == token_to_id_.end() ? kUnk : it->second;
}

const std::string& Vocab::token(int id) const {
  if (id < 0 || id >= size())
    throw DataError("token id " + std::to_string(id) + " out of range (" +
                    std::to_string(size()) + ")");
  return id_to_token_[id];
}

uint64_t Vocab::hash() const {
  uint64_t h = 0xcbf29ce484222325ull;
  auto mix = [&h](unsigned char c) {
    h ^= c;
    h *= 0x100000001b3ull;
  };
  for (const auto& tok : id_to_token_) {
    for (unsigned char c : tok) mix(c);
    mix('\n');
  }
  return h;
}

std::vector<int> Vocab::encode(const std::vector<std::string>& words) const {
  std::vector<int> out;
  out.reserve(words.size());
  for (const auto& w : words) out.push_back(id(w));
  return out;
}

std::vector<int> Vocab::encode_target(
    const std::vector<std::string>& target) const {
  std::vector<int> out;
  out.reserve(target.size());
  for (const auto& t : target) {
    const int i = id(t);
    // Label tokens are part of the output alphabet; a target whose label is
    // unknown cannot be generated, so fail loudly rather than emit <unk>.
    if (i == kUnk && t == label_token(t) && token_to_id_.count(t) == 0) {
      bool looks_like_label = !t.empty() && t.find_first_not_of(
          "ABCDEFGHIJKLMNOPQRSTUVWXYZ_0123456789") == std::string::npos;
      if (looks_like_label)
        throw DataError("label token '" + t + "' absent from vocabulary");
    }
    out.push_back(i);
  }
  return out;
}

std::vector<std::string> Vocab::decode(const std::vector<int>& ids) const {
  std::vector<std::string> out;
  out.reserve(ids.size());
  for (int i : ids) out.push_back(token(i));
  return out;
}

std::vector<std::string> Vocab::label_inventory(
    const std::vector<const std::vector<RawExample>*>& corpora) {
  std::set<std::string> labels;
  for (const auto* corpus : corpora)
    for (const auto& ex : *corpus)
      for (const auto& tag : ex.bio_tags)
        if (tag.size() > 2 && tag[1] == '-') labels.insert(tag.substr(2));
  return {labels.begin(), labels.end()};
}

}  // namespace roslu
