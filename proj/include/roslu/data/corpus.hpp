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
#include <vector>

#include "roslu/data/example.hpp"

namespace roslu {

/// Reads the conventional three-file split layout: `seq.in` holds one
/// whitespace-tokenized utterance per line, `seq.out` the parallel BIO tags,
/// and an optional `label` file (intent names) is ignored. Examples come
/// back in file order with ids "0", "1", ... and domain Clean.
std::vector<RawExample> load_split(const std::filesystem::path& dir);

/// Writes examples in the same layout. When any example carries a
/// perturbation record, a `meta.jsonl` file is emitted with one object per
/// line: {id, clean_ref_id, kind, position, in_slot}.
void write_split(const std::filesystem::path& dir,
                 const std::vector<RawExample>& examples);

/// Re-attaches forge metadata (clean_ref_id, perturbation) from meta.jsonl
/// to examples previously read with load_split. Returns the number of
/// examples annotated. Missing file raises IoError.
size_t load_meta(const std::filesystem::path& dir,
                 std::vector<RawExample>& examples);

bool has_meta(const std::filesystem::path& dir);

}  // namespace roslu
