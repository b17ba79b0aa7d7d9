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

#include <cmath>
#include <vector>

#include "doctest.h"
#include "roslu/real.hpp"
#include "roslu/tensor/ops.hpp"
#include "testutil.hpp"

using namespace roslu;
using testutil::finite_diff_check;
using testutil::random_mat;

namespace {

RMat rowvec(std::initializer_list<double> xs) {
  RMat m(1, static_cast<Index>(xs.size()));
  Index j = 0;
  for (double x : xs) m(0, j++) = x;
  return m;
}

}  // namespace

TEST_CASE("softmax of a constant row is uniform") {
  auto x = Var::constant(rowvec({0.0, 0.0, 0.0}));
  auto y = softmax_rows(x);
  for (int j = 0; j < 3; ++j)
    CHECK(y.value()(0, j) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("softmax rows sum to one") {
  Rng rng(11);
  auto x = Var::constant(random_mat(6, 9, rng, -30.0, 30.0));
  auto y = softmax_rows(x);
  for (Index i = 0; i < y.rows(); ++i)
    CHECK(std::abs(y.value().row(i).sum() - 1.0) < 1e-9);
}

TEST_CASE("layer norm of a constant vector is zero") {
  auto x = Var::constant(rowvec({3.7, 3.7, 3.7, 3.7}));
  auto g = Var::constant(RMat::Ones(1, 4));
  auto b = Var::constant(RMat::Zero(1, 4));
  auto y = layer_norm_rows(x, g, b);
  for (int j = 0; j < 4; ++j) CHECK(std::abs(y.value()(0, j)) < 1e-6);
}

TEST_CASE("matmul by identity is identity") {
  Rng rng(3);
  RMat a = random_mat(3, 3, rng);
  auto va = Var::constant(a);
  auto id = Var::constant(RMat::Identity(3, 3));
  auto y = matmul(id, va);
  CHECK((y.value() - a).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("matmul rejects mismatched shapes with both shapes named") {
  auto a = Var::constant(RMat::Zero(2, 3));
  auto b = Var::constant(RMat::Zero(4, 2));
  try {
    matmul(a, b);
    FAIL("expected ShapeError");
  } catch (const ShapeError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("matmul") != std::string::npos);
    CHECK(msg.find("(2x3)") != std::string::npos);
    CHECK(msg.find("(4x2)") != std::string::npos);
  }
}

TEST_CASE("grad_reverse is the identity forward and -lambda backward") {
  auto x = Var::param("x", rowvec({1.5, -2.0}));
  auto y = grad_reverse(x, 1.0);
  CHECK(y.value()(0, 0) == 1.5);
  CHECK(y.value()(0, 1) == -2.0);

  // upstream grad [0.3, 0.7] arrives via sum of elemwise product
  auto w = Var::constant(rowvec({0.3, 0.7}));
  auto loss = sum(elemmul(y, w));
  backward(loss);
  CHECK(x.grad()(0, 0) == doctest::Approx(-0.3).epsilon(1e-15));
  CHECK(x.grad()(0, 1) == doctest::Approx(-0.7).epsilon(1e-15));
}

TEST_CASE("grad_reverse with lambda zero blocks the gradient") {
  auto x = Var::param("x", rowvec({1.0, 2.0}));
  auto loss = sum(grad_reverse(x, 0.0));
  backward(loss);
  CHECK(x.grad()(0, 0) == 0.0);
  CHECK(x.grad()(0, 1) == 0.0);
}

TEST_CASE("grad_reverse rejects negative lambda") {
  auto x = Var::constant(rowvec({1.0}));
  CHECK_THROWS_AS(grad_reverse(x, -0.5), ConfigError);
}

TEST_CASE("d(x*x)/dx at 3 is 6") {
  auto x = Var::param("x", rowvec({3.0}));
  auto loss = sum(elemmul(x, x));
  backward(loss);
  CHECK(x.grad()(0, 0) == doctest::Approx(6.0).epsilon(1e-14));
}

TEST_CASE("cross entropy gradient is softmax minus one-hot") {
  Rng rng(17);
  auto logits = Var::param("logits", random_mat(4, 7, rng, -2.0, 2.0));
  std::vector<int> targets{2, 0, 6, 3};
  auto loss = cross_entropy_sum(logits, targets);
  CHECK(loss.item() >= 0.0);
  backward(loss);
  auto sm = softmax_rows(Var::constant(logits.value()));
  for (Index i = 0; i < 4; ++i)
    for (Index j = 0; j < 7; ++j) {
      const double expect =
          sm.value()(i, j) - (targets[static_cast<size_t>(i)] == j ? 1.0 : 0.0);
      CHECK(logits.grad()(i, j) == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("cross entropy is non-negative for adversarial inputs") {
  Rng rng(23);
  for (int it = 0; it < 20; ++it) {
    auto logits = Var::constant(random_mat(3, 5, rng, -50.0, 50.0));
    std::vector<int> t{static_cast<int>(rng.uniform_int(5)),
                       static_cast<int>(rng.uniform_int(5)),
                       static_cast<int>(rng.uniform_int(5))};
    CHECK(cross_entropy_sum(logits, t).item() >= 0.0);
  }
}

TEST_CASE("sgd step applies w - lr*g") {
  auto w = Var::param("w", rowvec({1.0}));
  w.node().grad = rowvec({0.5});
  sgd_step<real_t>({w}, 0.1);
  CHECK(w.value()(0, 0) == doctest::Approx(0.95).epsilon(1e-15));
}

TEST_CASE("sgd with vanishing lr leaves parameters unchanged") {
  auto w = Var::param("w", rowvec({2.0, -1.0}));
  w.node().grad = rowvec({10.0, 3.0});
  const RMat before = w.value();
  sgd_step<real_t>({w}, 1e-300);
  CHECK((w.value() - before).cwiseAbs().maxCoeff() < 1e-290);
  CHECK_THROWS_AS(sgd_step<real_t>({w}, 0.0), ConfigError);
}

TEST_CASE("sgd aborts on non-finite gradients") {
  auto w = Var::param("w", rowvec({1.0}));
  w.node().grad = rowvec({std::nan("")});
  const RMat before = w.value();
  CHECK_THROWS_AS(sgd_step<real_t>({w}, 0.1), StepError);
  CHECK(w.value() == before);  // no partial update
}

TEST_CASE("backward twice from the same root is an error") {
  auto x = Var::param("x", rowvec({1.0}));
  auto loss = sum(elemmul(x, x));
  backward(loss);
  CHECK_THROWS_AS(backward(loss), ContractError);
}

TEST_CASE("backward requires a scalar loss") {
  auto x = Var::param("x", rowvec({1.0, 2.0}));
  auto y = elemmul(x, x);
  CHECK_THROWS_AS(backward(y), ShapeError);
}

TEST_CASE("gradients accumulate until zero_grad") {
  auto x = Var::param("x", rowvec({3.0}));
  auto l1 = sum(elemmul(x, x));
  backward(l1);
  auto l2 = sum(elemmul(x, x));
  backward(l2);
  CHECK(x.grad()(0, 0) == doctest::Approx(12.0));
  zero_grad<real_t>({x});
  CHECK_FALSE(x.has_grad());
}

TEST_CASE("nodes unreachable from the loss keep no gradient") {
  auto x = Var::param("x", rowvec({1.0}));
  auto unused = Var::param("unused", rowvec({5.0}));
  auto y = elemmul(unused, unused);  // never consumed by the loss
  auto loss = sum(elemmul(x, x));
  backward(loss);
  CHECK_FALSE(unused.has_grad());
  CHECK_FALSE(y.has_grad());
}

// Finite-difference oracle over every kernel, driven through a random
// one-layer mini model that exercises them jointly.
TEST_CASE("analytic gradients match central finite differences") {
  Rng rng(31);
  const Index n = 4, d = 6, h = 5, v = 8;

  auto emb = Var::param("emb", random_mat(v, d, rng, -0.5, 0.5));
  auto w1 = Var::param("w1", random_mat(d, h, rng, -0.5, 0.5));
  auto b1 = Var::param("b1", random_mat(1, h, rng, -0.1, 0.1));
  auto w2 = Var::param("w2", random_mat(h, d, rng, -0.5, 0.5));
  auto g = Var::param("g", random_mat(1, d, rng, 0.8, 1.2));
  auto b = Var::param("b", random_mat(1, d, rng, -0.1, 0.1));
  auto wout = Var::param("wout", random_mat(d, v, rng, -0.5, 0.5));
  std::vector<Var> params{emb, w1, b1, w2, g, b, wout};

  std::vector<int> ids{1, 4, 7, 2};
  std::vector<int> targets{3, 0, 5, 1};
  RMat key_mask = RMat::Ones(1, n);
  key_mask(0, 3) = 0.0;  // one masked position to cover masked_fill

  auto build = [&]() {
    auto x = embedding(emb, ids);
    auto hmid = relu(add_rowvec(matmul(x, w1), b1));
    auto x2 = layer_norm_rows(matmul(hmid, w2), g, b);
    auto scores = scale(matmul(x2, transpose(x2)), real_t(1.0 / std::sqrt(double(d))));
    auto attn = softmax_rows(masked_fill(scores, key_mask, real_t(-1e30)));
    auto mixed = add(matmul(attn, x2), x2);
    auto halves = concat_cols<real_t>(
        {slice_cols(mixed, 0, d / 2), slice_cols(mixed, d / 2, d / 2)});
    auto act = add(add(roslu::tanh(halves), sigmoid(halves)), softplus(halves));
    auto logits = matmul(act, wout);
    auto ce = cross_entropy_sum(logits, targets);
    return add(ce, scale(mean(elemmul(mixed, mixed)), real_t(0.5)));
  };

  auto res = finite_diff_check(
      params, [&]() { return build().item(); },
      [&]() {
        zero_grad(params);
        backward(build());
      });
  CAPTURE(res.worst);
  CHECK(res.max_rel_err < 1e-4);
}

TEST_CASE("GRL sandwich: reversed gradients equal -lambda times plain ones") {
  Rng rng(37);
  for (double lambda : {0.0, 0.5, 1.0}) {
    auto w = Var::param("w", random_mat(3, 3, rng, -1.0, 1.0));
    auto x = Var::constant(random_mat(2, 3, rng, -1.0, 1.0));

    auto build = [&](bool reversed) {
      auto h = roslu::tanh(matmul(x, w));
      auto piped = reversed ? grad_reverse(h, real_t(lambda)) : h;
      return sum(sigmoid(piped));
    };

    zero_grad<real_t>({w});
    backward(build(false));
    RMat plain = w.grad();

    zero_grad<real_t>({w});
    backward(build(true));
    RMat reversed = w.grad();

    CHECK((reversed + real_t(lambda) * plain).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("dropout scales kept entries and is seed-deterministic") {
  Rng rng(5);
  auto x = Var::constant(RMat::Ones(8, 8));
  Rng m1(99), m2(99);
  auto y1 = dropout(x, 0.4, m1);
  auto y2 = dropout(x, 0.4, m2);
  CHECK((y1.value() - y2.value()).cwiseAbs().maxCoeff() == 0.0);
  int kept = 0;
  for (Index i = 0; i < 8; ++i)
    for (Index j = 0; j < 8; ++j) {
      const double e = y1.value()(i, j);
      CHECK((e == 0.0 || e == doctest::Approx(1.0 / 0.6)));
      kept += e != 0.0;
    }
  CHECK(kept > 16);  // rate 0.4 keeps ~60%
  // rate 0 is a passthrough of the same node
  auto y0 = dropout(x, 0.0, m1);
  CHECK(y0.ptr() == x.ptr());
}

TEST_CASE("checked mode flags non-finite forward values") {
  set_checked_mode(true);
  auto x = Var::constant(rowvec({1e308}));
  CHECK_THROWS_AS(elemmul(scale(x, 10.0), x), roslu::Error);
  set_checked_mode(false);
}

TEST_CASE("determinism: identical seeds give bit-identical training traces") {
  auto run = [](uint64_t seed) {
    Rng rng(seed);
    auto w = Var::param("w", random_mat(4, 4, rng, -1.0, 1.0));
    std::vector<double> trace;
    for (int step = 0; step < 20; ++step) {
      Rng drop = rng.fork(static_cast<uint64_t>(step));
      auto x = Var::constant(random_mat(3, 4, rng, -1.0, 1.0));
      auto y = dropout(roslu::tanh(matmul(x, w)), 0.2, drop);
      auto loss = mean(elemmul(y, y));
      trace.push_back(loss.item());
      zero_grad<real_t>({w});
      backward(loss);
      sgd_step<real_t>({w}, 0.05);
    }
    trace.push_back(w.value().sum());
    return trace;
  };
  auto a = run(123), b = run(123), c = run(124);
  CHECK(a == b);  // exact bit equality
  CHECK(a != c);
}

TEST_CASE("tensor core instantiates for 32-bit scalars") {
  using F = float;
  Mat<F> m(2, 2);
  m << 1.f, 2.f, 3.f, 4.f;
  auto x = Variable<F>::param("x", m);
  auto loss = sum(elemmul(x, x));
  backward(loss);
  CHECK(x.grad()(1, 1) == doctest::Approx(8.f));
  sgd_step<F>({x}, 0.1f);
  CHECK(x.value()(0, 0) == doctest::Approx(0.8f));
}
