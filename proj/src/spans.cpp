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

#include "roslu/data/spans.hpp"

#include <algorithm>
#include <cctype>

#include "roslu/error.hpp"

namespace roslu {

std::vector<SlotSpan> bio_to_spans(const std::vector<std::string>& bio_tags) {
  std::vector<SlotSpan> spans;
  int open_start = -1;
  std::string open_label;
  auto close = [&](int end) {
    if (open_start >= 0) spans.push_back({open_start, end, open_label});
    open_start = -1;
  };
  for (size_t i = 0; i < bio_tags.size(); ++i) {
    const std::string& t = bio_tags[i];
    if (t == "O") {
      close(static_cast<int>(i));
      continue;
    }
    const char head = t[0];
    const std::string label = t.substr(2);
    if (head == 'B' || open_start < 0 || label != open_label) {
      // B- always opens; a stray or label-switching I- opens a new chunk
      close(static_cast<int>(i));
      open_start = static_cast<int>(i);
      open_label = label;
    }
  }
  close(static_cast<int>(bio_tags.size()));
  return spans;
}

std::vector<std::string> spans_to_bio(const std::vector<SlotSpan>& spans,
                                      size_t len) {
  std::vector<std::string> tags(len, "O");
  for (const auto& s : spans) {
    if (s.start < 0 || s.end <= s.start || static_cast<size_t>(s.end) > len)
      throw DataError("span [" + std::to_string(s.start) + ", " +
                      std::to_string(s.end) + ") out of sentence of length " +
                      std::to_string(len));
    tags[s.start] = "B-" + s.label;
    for (int i = s.start + 1; i < s.end; ++i) tags[i] = "I-" + s.label;
  }
  return tags;
}

std::string label_token(const std::string& label) {
  std::string out = label;
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  return out;
}

std::vector<std::string> make_target(const std::vector<std::string>& tokens,
                                     const std::vector<SlotSpan>& spans) {
  std::vector<std::string> target;
  for (const auto& s : spans) {
    if (s.start < 0 || s.end <= s.start ||
        static_cast<size_t>(s.end) > tokens.size())
      throw DataError("span [" + std::to_string(s.start) + ", " +
                      std::to_string(s.end) + ") invalid for sentence of " +
                      std::to_string(tokens.size()) + " tokens");
    for (int i = s.start; i < s.end; ++i) target.push_back(tokens[i]);
    target.push_back(label_token(s.label));
  }
  return target;
}

std::vector<std::pair<std::string, std::vector<std::string>>> span_values(
    const std::vector<std::string>& tokens,
    const std::vector<SlotSpan>& spans) {
  std::vector<std::pair<std::string, std::vector<std::string>>> out;
  for (const auto& s : spans) {
    std::vector<std::string> value(tokens.begin() + s.start,
                                   tokens.begin() + s.end);
    out.emplace_back(s.label, std::move(value));
  }
  return out;
}

}  // namespace roslu
