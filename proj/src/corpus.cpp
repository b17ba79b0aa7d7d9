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

#include "roslu/data/corpus.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "roslu/error.hpp"

namespace roslu {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

std::vector<std::string> read_lines(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw IoError("cannot open " + p.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

void check_tag(const std::string& tag, const std::filesystem::path& file,
               size_t line_no) {
  if (tag == "O") return;
  if (tag.size() > 2 && (tag[0] == 'B' || tag[0] == 'I') && tag[1] == '-')
    return;
  throw DataError("unknown tag scheme '" + tag + "' at " + file.string() +
                  ":" + std::to_string(line_no) +
                  " (expected O, B-<label> or I-<label>)");
}

}  // namespace

std::string to_string(NoiseKind k) {
  switch (k) {
    case NoiseKind::Drop: return "drop";
    case NoiseKind::Replace: return "replace";
    case NoiseKind::Swap: return "swap";
  }
  return "?";
}

NoiseKind noise_kind_from_string(const std::string& s) {
  if (s == "drop") return NoiseKind::Drop;
  if (s == "replace") return NoiseKind::Replace;
  if (s == "swap") return NoiseKind::Swap;
  throw DataError("unknown noise kind '" + s + "'");
}

std::vector<RawExample> load_split(const std::filesystem::path& dir) {
  const auto in_path = dir / "seq.in";
  const auto out_path = dir / "seq.out";
  auto tokens = read_lines(in_path);
  auto tags = read_lines(out_path);
  if (tokens.size() != tags.size())
    throw DataError("line count mismatch: " + in_path.string() + " has " +
                    std::to_string(tokens.size()) + " lines, " +
                    out_path.string() + " has " + std::to_string(tags.size()));

  std::vector<RawExample> out;
  out.reserve(tokens.size());
  for (size_t i = 0; i < tokens.size(); ++i) {
    RawExample ex;
    ex.id = std::to_string(i);
    ex.tokens = split_ws(tokens[i]);
    ex.bio_tags = split_ws(tags[i]);
    if (ex.tokens.size() != ex.bio_tags.size())
      throw DataError("token/tag length mismatch at " + in_path.string() +
                      ":" + std::to_string(i + 1) + " (" +
                      std::to_string(ex.tokens.size()) + " tokens vs " +
                      std::to_string(ex.bio_tags.size()) + " tags)");
    for (const auto& t : ex.bio_tags) check_tag(t, out_path, i + 1);
    out.push_back(std::move(ex));
  }
  return out;
}

void write_split(const std::filesystem::path& dir,
                 const std::vector<RawExample>& examples) {
  std::filesystem::create_directories(dir);
  std::ofstream fin(dir / "seq.in", std::ios::binary);
  std::ofstream fout(dir / "seq.out", std::ios::binary);
  if (!fin || !fout) throw IoError("cannot write split under " + dir.string());

  bool any_meta = false;
  for (const auto& ex : examples) {
    for (size_t i = 0; i < ex.tokens.size(); ++i)
      fin << (i ? " " : "") << ex.tokens[i];
    fin << "\n";
    for (size_t i = 0; i < ex.bio_tags.size(); ++i)
      fout << (i ? " " : "") << ex.bio_tags[i];
    fout << "\n";
    any_meta = any_meta || ex.perturbation.has_value();
  }
  if (any_meta) {
    std::ofstream fmeta(dir / "meta.jsonl", std::ios::binary);
    for (const auto& ex : examples) {
      if (!ex.perturbation) continue;
      nlohmann::ordered_json j;
      j["id"] = ex.id;
      j["clean_ref_id"] = ex.clean_ref_id;
      j["kind"] = to_string(ex.perturbation->kind);
      j["position"] = ex.perturbation->position;
      j["in_slot"] = ex.perturbation->in_slot;
      fmeta << j.dump() << "\n";
    }
  }
}

bool has_meta(const std::filesystem::path& dir) {
  return std::filesystem::exists(dir / "meta.jsonl");
}

size_t load_meta(const std::filesystem::path& dir,
                 std::vector<RawExample>& examples) {
  const auto path = dir / "meta.jsonl";
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  size_t applied = 0;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const std::exception& e) {
      throw DataError("bad json at " + path.string() + ":" +
                      std::to_string(line_no) + ": " + e.what());
    }
    const std::string id = j.at("id").get<std::string>();
    size_t idx = 0;
    try {
      idx = std::stoul(id);
    } catch (...) {
      throw DataError("non-numeric id '" + id + "' in " + path.string());
    }
    if (idx >= examples.size())
      throw DataError("meta id " + id + " out of range in " + path.string());
    auto& ex = examples[idx];
    ex.domain = Domain::Noisy;
    ex.clean_ref_id = j.at("clean_ref_id").get<std::string>();
    Perturbation p;
    p.kind = noise_kind_from_string(j.at("kind").get<std::string>());
    p.position = j.at("position").get<int>();
    p.in_slot = j.at("in_slot").get<bool>();
    ex.perturbation = p;
    ++applied;
  }
  return applied;
}

}  // namespace roslu
