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

#include "roslu/model/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include "json.hpp"
#include "roslu/error.hpp"

static_assert(std::endian::native == std::endian::little,
              "checkpoint payload is little-endian");

namespace roslu {

namespace {

constexpr char kMagic[8] = {'R', 'S', 'L', 'U', 'C', 'K', 'P', 'T'};
constexpr uint32_t kVersion = 1;

uint64_t fnv1a(uint64_t h, const void* data, size_t len) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

constexpr uint64_t kFnvOffset = 0xcbf29ce484222325ull;

template <typename T>
void write_pod(std::ofstream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T read_pod(std::ifstream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw DataError("checkpoint truncated");
  return v;
}

}  // namespace

void save_checkpoint(const std::filesystem::path& path, const ModelParams& p,
                     const Vocab& vocab,
                     const std::vector<std::string>& tag_strings) {
  nlohmann::json header;
  header["model_config"] = p.config.to_json();
  header["model_kind"] = to_string(p.kind);
  header["num_tags"] = p.num_tags;
  header["vocab_tokens"] = vocab.tokens();
  header["vocab_num_labels"] = vocab.num_labels();
  header["vocab_hash"] = vocab.hash();
  header["tag_strings"] = tag_strings;
  nlohmann::json names = nlohmann::json::array();
  for (const auto& v : p.all()) {
    names.push_back({{"name", v.name()},
                     {"rows", v.rows()},
                     {"cols", v.cols()}});
  }
  header["params"] = names;
  const std::string header_str = header.dump();

  // payload: row-major 64-bit floats in parameter order
  std::string payload;
  for (const auto& v : p.all()) {
    const auto& m = v.value();
    for (Index i = 0; i < m.rows(); ++i)
      for (Index j = 0; j < m.cols(); ++j) {
        const double d = static_cast<double>(m(i, j));
        payload.append(reinterpret_cast<const char*>(&d), sizeof(double));
      }
  }

  uint64_t checksum = kFnvOffset;
  checksum = fnv1a(checksum, header_str.data(), header_str.size());
  checksum = fnv1a(checksum, payload.data(), payload.size());

  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write checkpoint " + path.string());
  out.write(kMagic, sizeof(kMagic));
  write_pod(out, kVersion);
  write_pod(out, static_cast<uint64_t>(header_str.size()));
  out.write(header_str.data(), static_cast<std::streamsize>(header_str.size()));
  write_pod(out, static_cast<uint64_t>(payload.size()));
  out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
  write_pod(out, checksum);
  if (!out) throw IoError("short write for checkpoint " + path.string());
}

Checkpoint load_checkpoint(const std::filesystem::path& path,
                           std::optional<uint64_t> expected_vocab_hash) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open checkpoint " + path.string());

  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw DataError("not a checkpoint file: " + path.string());
  const uint32_t version = read_pod<uint32_t>(in);
  if (version != kVersion)
    throw DataError("unsupported checkpoint version " +
                    std::to_string(version));

  const uint64_t header_len = read_pod<uint64_t>(in);
  std::string header_str(header_len, '\0');
  in.read(header_str.data(), static_cast<std::streamsize>(header_len));
  const uint64_t payload_len = read_pod<uint64_t>(in);
  std::string payload(payload_len, '\0');
  in.read(payload.data(), static_cast<std::streamsize>(payload_len));
  if (!in) throw DataError("checkpoint truncated: " + path.string());
  const uint64_t stored_checksum = read_pod<uint64_t>(in);

  uint64_t checksum = kFnvOffset;
  checksum = fnv1a(checksum, header_str.data(), header_str.size());
  checksum = fnv1a(checksum, payload.data(), payload.size());
  if (checksum != stored_checksum)
    throw DataError("checkpoint checksum mismatch for " + path.string() +
                    " (file corrupted or tampered)");

  nlohmann::json header = nlohmann::json::parse(header_str);
  Checkpoint ck;
  const auto cfg = ModelConfig::from_json(header.at("model_config"));
  const auto kind = model_kind_from_string(header.at("model_kind"));
  const int num_tags = header.at("num_tags").get<int>();

  ck.vocab = Vocab::from_tokens(
      header.at("vocab_tokens").get<std::vector<std::string>>(),
      header.at("vocab_num_labels").get<int>());
  const uint64_t vocab_hash = header.at("vocab_hash").get<uint64_t>();
  if (ck.vocab.hash() != vocab_hash)
    throw DataError("checkpoint vocabulary does not match its recorded hash");
  if (expected_vocab_hash && *expected_vocab_hash != vocab_hash)
    throw DataError(
        "vocabulary hash mismatch: checkpoint was built over a different "
        "corpus (expected " + std::to_string(*expected_vocab_hash) + ", found " +
        std::to_string(vocab_hash) + ")");
  ck.tag_strings = header.at("tag_strings").get<std::vector<std::string>>();

  ck.params = ModelParams::init(cfg, kind, num_tags, /*seed=*/0);
  const auto& names = header.at("params");
  if (names.size() != ck.params.all().size())
    throw DataError("checkpoint parameter list does not match architecture");

  size_t off = 0;
  auto need = [&](size_t n) {
    if (off + n > payload.size())
      throw DataError("checkpoint payload shorter than declared shapes");
  };
  for (size_t k = 0; k < ck.params.all().size(); ++k) {
    const auto& meta = names[k];
    const Var& v = ck.params.all()[k];
    if (meta.at("name").get<std::string>() != v.name() ||
        meta.at("rows").get<Index>() != v.rows() ||
        meta.at("cols").get<Index>() != v.cols())
      throw DataError("checkpoint parameter '" +
                      meta.at("name").get<std::string>() +
                      "' does not match the rebuilt architecture");
    RMat& m = v.node().value;
    for (Index i = 0; i < m.rows(); ++i)
      for (Index j = 0; j < m.cols(); ++j) {
        need(sizeof(double));
        double d;
        std::memcpy(&d, payload.data() + off, sizeof(double));
        off += sizeof(double);
        m(i, j) = static_cast<real_t>(d);
      }
  }
  if (off != payload.size())
    throw DataError("checkpoint payload longer than declared shapes");
  return ck;
}

}  // namespace roslu
