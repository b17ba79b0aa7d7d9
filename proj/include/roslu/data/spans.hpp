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
#include <vector>

#include "roslu/data/example.hpp"

namespace roslu {

/// Extracts maximal slot chunks from BIO tags. Lenient in the conlleval
/// sense: a bare I-X with no matching open chunk starts a new span.
std::vector<SlotSpan> bio_to_spans(const std::vector<std::string>& bio_tags);

/// Inverse of bio_to_spans for a sentence of `len` tokens.
std::vector<std::string> spans_to_bio(const std::vector<SlotSpan>& spans,
                                      size_t len);

/// Uppercased form of a slot label, used as its vocabulary token.
std::string label_token(const std::string& label);

/// Builds the generation target: for each span in order, its value tokens
/// followed by the uppercased label token. Tokens outside every span are
/// omitted; the end-of-sequence marker is appended at batching time.
std::vector<std::string> make_target(const std::vector<std::string>& tokens,
                                     const std::vector<SlotSpan>& spans);

/// (label, value tokens) pairs of the gold spans, in sentence order.
std::vector<std::pair<std::string, std::vector<std::string>>> span_values(
    const std::vector<std::string>& tokens, const std::vector<SlotSpan>& spans);

}  // namespace roslu
