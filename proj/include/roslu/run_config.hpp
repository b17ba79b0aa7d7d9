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
#include <map>
#include <string>

namespace roslu {

/// Flat key=value run configuration with per-key provenance. Command-line
/// flags take precedence over the config file, which takes precedence over
/// defaults. Every command writes its effective configuration next to its
/// artifacts; replaying that snapshot reproduces the run bit for bit.
class RunConfig {
 public:
  void set_default(const std::string& key, const std::string& value);
  void set_from_file(const std::string& key, const std::string& value,
                     const std::string& path);
  void set_from_flag(const std::string& key, const std::string& value);

  /// Parses `key=value` lines ('#' starts a comment). Unknown keys error.
  void load_file(const std::filesystem::path& path);

  bool has(const std::string& key) const;
  bool is_default(const std::string& key) const;

  std::string get(const std::string& key) const;
  long get_int(const std::string& key) const;
  uint64_t get_u64(const std::string& key) const;
  double get_double(const std::string& key) const;
  bool get_bool(const std::string& key) const;

  /// Replayable snapshot; provenance goes into comments.
  std::string snapshot() const;
  void write_snapshot(const std::filesystem::path& path) const;

  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
  std::map<std::string, std::string> sources_;
};

}  // namespace roslu
