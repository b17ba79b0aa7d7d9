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

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

#include "roslu/real.hpp"
#include "roslu/tensor/graph.hpp"
#include "roslu/tensor/rng.hpp"

namespace roslu::testutil {

// Central finite-difference gradient oracle, independent of the backward
// pass it checks. `loss` must rebuild the whole forward graph from the
// current parameter values on every call.
struct GradCheckResult {
  double max_rel_err = 0.0;
  std::string worst;  // "param[i,j]"
};

inline GradCheckResult finite_diff_check(
    const std::vector<Var>& params, const std::function<double()>& loss,
    const std::function<void()>& run_backward, double eps = 1e-5) {
  run_backward();  // populates analytic grads
  std::vector<RMat> analytic;
  analytic.reserve(params.size());
  for (const auto& p : params) {
    analytic.push_back(p.has_grad()
                           ? p.grad()
                           : RMat::Zero(p.rows(), p.cols()).eval());
  }
  GradCheckResult res;
  for (size_t k = 0; k < params.size(); ++k) {
    RMat& w = params[k].node().value;
    for (Eigen::Index i = 0; i < w.rows(); ++i) {
      for (Eigen::Index j = 0; j < w.cols(); ++j) {
        const double orig = w(i, j);
        w(i, j) = orig + eps;
        const double up = loss();
        w(i, j) = orig - eps;
        const double down = loss();
        w(i, j) = orig;
        const double numeric = (up - down) / (2.0 * eps);
        const double a = analytic[k](i, j);
        const double rel =
            std::abs(a - numeric) / std::max({std::abs(a), std::abs(numeric), 1e-8});
        if (rel > res.max_rel_err) {
          res.max_rel_err = rel;
          res.worst = params[k].name() + "[" + std::to_string(i) + "," +
                      std::to_string(j) + "]";
        }
      }
    }
  }
  return res;
}

inline RMat random_mat(Eigen::Index r, Eigen::Index c, Rng& rng, double lo = -1.0,
                       double hi = 1.0) {
  RMat m(r, c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < c; ++j) m(i, j) = rng.uniform(lo, hi);
  return m;
}

inline std::filesystem::path temp_dir(const std::string& tag) {
  auto p = std::filesystem::temp_directory_path() /
           ("roslu_test_" + tag + "_" + std::to_string(::getpid()));
  std::filesystem::create_directories(p);
  return p;
}

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

inline void spit(const std::filesystem::path& p, const std::string& content) {
  std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  out << content;
}

}  // namespace roslu::testutil
