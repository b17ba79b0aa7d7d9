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

#include <Eigen/Dense>
#include <atomic>
#include <sstream>
#include <string>

#include "roslu/error.hpp"

namespace roslu {

using Index = Eigen::Index;

/// Dense 2-d storage for all graph values. Scalars are 1x1, row vectors 1xN.
template <typename S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

template <typename S>
inline std::string shape_str(const Mat<S>& m) {
  std::ostringstream os;
  os << "(" << m.rows() << "x" << m.cols() << ")";
  return os.str();
}

/// When enabled, every kernel validates that its forward output is finite.
inline std::atomic<bool>& checked_mode_flag() {
  static std::atomic<bool> flag{false};
  return flag;
}

inline void set_checked_mode(bool on) { checked_mode_flag() = on; }
inline bool checked_mode() { return checked_mode_flag(); }

template <typename S>
inline void check_finite(const char* op, const Mat<S>& m) {
  if (checked_mode() && !m.allFinite()) {
    throw Error(std::string("non-finite value in forward output of ") + op);
  }
}

}  // namespace roslu
