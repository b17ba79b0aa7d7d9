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
#include <utility>
#include <vector>

#include "roslu/error.hpp"

namespace roslu {

namespace detail {

inline uint64_t rotl64(uint64_t x, int r) { return (x << r) | (x >> (64 - r)); }

// Threefry2x64-20 block function. Key and counter are two 64-bit words each;
// the output block is a pseudorandom function of both.
inline std::pair<uint64_t, uint64_t> threefry2x64(uint64_t k0, uint64_t k1,
                                                  uint64_t c0, uint64_t c1) {
  static constexpr int kRot[8] = {16, 42, 12, 31, 16, 32, 24, 21};
  const uint64_t ks[3] = {k0, k1, k0 ^ k1 ^ 0x1BD11BDAA9FC1A22ull};
  uint64_t x0 = c0 + ks[0];
  uint64_t x1 = c1 + ks[1];
  for (int r = 0; r < 20; ++r) {
    x0 += x1;
    x1 = rotl64(x1, kRot[r % 8]);
    x1 ^= x0;
    if (r % 4 == 3) {
      const uint64_t s = static_cast<uint64_t>(r / 4) + 1;
      x0 += ks[s % 3];
      x1 += ks[(s + 1) % 3] + s;
    }
  }
  return {x0, x1};
}

}  // namespace detail

/// Counter-based deterministic random stream (threefry2x64-20).
///
/// The generator is a pure function of (key, counter): the same seed always
/// produces the same stream, and fork() derives a child stream whose output
/// does not depend on how much the parent has already consumed. Counter
/// blocks use ctr[1] = 0 while fork() sets the top bit of ctr[1], so the two
/// domains never overlap.
class Rng {
 public:
  explicit Rng(uint64_t seed, uint64_t stream = 0)
      : key0_(seed), key1_(stream) {}

  uint64_t next_u64() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    auto [a, b] = detail::threefry2x64(key0_, key1_, ctr_++, 0);
    spare_ = b;
    have_spare_ = true;
    return a;
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Unbiased uniform integer in [0, n).
  uint64_t uniform_int(uint64_t n) {
    if (n == 0) throw ConfigError("Rng::uniform_int: n must be positive");
    const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t v = next_u64();
    while (v >= limit) v = next_u64();
    return v % n;
  }

  /// Child stream keyed by (a, b). Independent of the parent's position.
  Rng fork(uint64_t a, uint64_t b = 0) const {
    auto [x0, x1] =
        detail::threefry2x64(key0_, key1_, a, b | 0x8000000000000000ull);
    return Rng(x0, x1);
  }

 private:
  uint64_t key0_;
  uint64_t key1_;
  uint64_t ctr_ = 0;
  uint64_t spare_ = 0;
  bool have_spare_ = false;
};

/// In-place Fisher-Yates shuffle driven by an Rng.
template <typename T>
void shuffle(std::vector<T>& v, Rng& rng) {
  for (size_t i = v.size(); i > 1; --i) {
    const size_t j = static_cast<size_t>(rng.uniform_int(i));
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace roslu
