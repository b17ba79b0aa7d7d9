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

#include "roslu/run_config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "roslu/error.hpp"

namespace roslu {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

void RunConfig::set_default(const std::string& key, const std::string& value) {
  values_[key] = value;
  sources_[key] = "default";
}

void RunConfig::set_from_file(const std::string& key, const std::string& value,
                              const std::string& path) {
  if (!values_.count(key))
    throw ConfigError("unknown config key '" + key + "' in " + path);
  values_[key] = value;
  sources_[key] = "config:" + path;
}

void RunConfig::set_from_flag(const std::string& key,
                              const std::string& value) {
  values_[key] = value;
  sources_[key] = "flag";
}

void RunConfig::load_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path.string());
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("expected key=value at " + path.string() + ":" +
                        std::to_string(line_no));
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    set_from_file(key, value, path.string());
  }
}

bool RunConfig::has(const std::string& key) const {
  return values_.count(key) != 0;
}

bool RunConfig::is_default(const std::string& key) const {
  auto it = sources_.find(key);
  return it == sources_.end() || it->second == "default";
}

std::string RunConfig::get(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("missing config key '" + key + "'");
  return it->second;
}

long RunConfig::get_int(const std::string& key) const {
  try {
    return std::stol(get(key));
  } catch (const ConfigError&) {
    throw;
  } catch (...) {
    throw ConfigError("config key '" + key + "' is not an integer: " +
                      get(key));
  }
}

uint64_t RunConfig::get_u64(const std::string& key) const {
  try {
    return std::stoull(get(key));
  } catch (const ConfigError&) {
    throw;
  } catch (...) {
    throw ConfigError("config key '" + key + "' is not an unsigned integer: " +
                      get(key));
  }
}

double RunConfig::get_double(const std::string& key) const {
  try {
    return std::stod(get(key));
  } catch (const ConfigError&) {
    throw;
  } catch (...) {
    throw ConfigError("config key '" + key + "' is not a number: " + get(key));
  }
}

bool RunConfig::get_bool(const std::string& key) const {
  std::string v = get(key);
  std::transform(v.begin(), v.end(), v.begin(), ::tolower);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("config key '" + key + "' is not a boolean: " + get(key));
}

std::string RunConfig::snapshot() const {
  std::ostringstream os;
  os << "# effective configuration; replay with --config <this file>\n";
  for (const auto& [key, value] : values_) {
    auto src = sources_.find(key);
    os << key << " = " << value;
    if (src != sources_.end() && src->second != "default")
      os << "  # from " << src->second;
    os << "\n";
  }
  return os.str();
}

void RunConfig::write_snapshot(const std::filesystem::path& path) const {
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write config snapshot " + path.string());
  out << snapshot();
}

}  // namespace roslu
