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
#include <optional>
#include <string>
#include <vector>

#include "roslu/data/vocab.hpp"
#include "roslu/model/params.hpp"

namespace roslu {

/// Versioned binary container: magic, JSON header (config, kind, vocabulary
/// and its hash, tag inventory, parameter names and shapes), a little-endian
/// 64-bit float payload in fixed parameter order, and a trailing checksum
/// over header and payload. Loading verifies the checksum and, when an
/// expected vocabulary hash is supplied, rejects a mismatch.
struct Checkpoint {
  ModelParams params;
  Vocab vocab;
  std::vector<std::string> tag_strings;  // empty for generator models
};

void save_checkpoint(const std::filesystem::path& path, const ModelParams& p,
                     const Vocab& vocab,
                     const std::vector<std::string>& tag_strings = {});

Checkpoint load_checkpoint(const std::filesystem::path& path,
                           std::optional<uint64_t> expected_vocab_hash = {});

}  // namespace roslu
