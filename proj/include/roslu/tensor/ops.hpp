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
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "roslu/tensor/graph.hpp"
#include "roslu/tensor/rng.hpp"

// Dense kernels as expression-friendly free functions. Every kernel checks
// operand shapes, computes the forward value eagerly and registers a
// backward rule; gradients accumulate into requires_grad inputs only.

namespace roslu {

namespace detail {

template <typename S>
Variable<S> make_op(const char* op, Mat<S> value,
                    std::vector<Variable<S>> inputs,
                    std::function<void(Node<S>&)> backprop) {
  check_finite(op, value);
  auto out = Variable<S>::constant(std::move(value));
  Node<S>& n = out.node();
  n.op = op;
  n.inputs.reserve(inputs.size());
  bool req = false;
  for (auto& in : inputs) {
    req = req || in.requires_grad();
    n.inputs.push_back(in.ptr());
  }
  if (req) {
    n.requires_grad = true;
    n.backprop = std::move(backprop);
  }
  return out;
}

template <typename S>
[[noreturn]] void shape_fail(const char* op, const Mat<S>& a,
                             const Mat<S>& b) {
  throw ShapeError(std::string(op) + ": incompatible shapes " + shape_str(a) +
                   " and " + shape_str(b));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Linear algebra

template <typename S>
Variable<S> matmul(const Variable<S>& a, const Variable<S>& b) {
  if (a.cols() != b.rows()) detail::shape_fail("matmul", a.value(), b.value());
  Mat<S> v = a.value() * b.value();
  return detail::make_op<S>(
      "matmul", std::move(v), {a, b}, [](Node<S>& n) {
        Node<S>& a = *n.inputs[0];
        Node<S>& b = *n.inputs[1];
        if (a.requires_grad)
          accumulate_grad<S>(a, n.grad * b.value.transpose());
        if (b.requires_grad)
          accumulate_grad<S>(b, a.value.transpose() * n.grad);
      });
}

template <typename S>
Variable<S> transpose(const Variable<S>& a) {
  Mat<S> v = a.value().transpose();
  return detail::make_op<S>("transpose", std::move(v), {a}, [](Node<S>& n) {
    accumulate_grad<S>(*n.inputs[0], n.grad.transpose());
  });
}

// ---------------------------------------------------------------------------
// Elementwise / broadcast

template <typename S>
Variable<S> add(const Variable<S>& a, const Variable<S>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    detail::shape_fail("add", a.value(), b.value());
  Mat<S> v = a.value() + b.value();
  return detail::make_op<S>("add", std::move(v), {a, b}, [](Node<S>& n) {
    if (n.inputs[0]->requires_grad) accumulate_grad<S>(*n.inputs[0], n.grad);
    if (n.inputs[1]->requires_grad) accumulate_grad<S>(*n.inputs[1], n.grad);
  });
}

/// Adds a 1xC row vector to every row of a.
template <typename S>
Variable<S> add_rowvec(const Variable<S>& a, const Variable<S>& r) {
  if (r.rows() != 1 || r.cols() != a.cols())
    detail::shape_fail("add_rowvec", a.value(), r.value());
  Mat<S> v = a.value().rowwise() + r.value().row(0);
  return detail::make_op<S>(
      "add_rowvec", std::move(v), {a, r}, [](Node<S>& n) {
        if (n.inputs[0]->requires_grad)
          accumulate_grad<S>(*n.inputs[0], n.grad);
        if (n.inputs[1]->requires_grad)
          accumulate_grad<S>(*n.inputs[1], Mat<S>(n.grad.colwise().sum()));
      });
}

/// Multiply by a compile-time constant scalar.
template <typename S>
Variable<S> scale(const Variable<S>& a, S c) {
  Mat<S> v = a.value() * c;
  return detail::make_op<S>("scale", std::move(v), {a}, [c](Node<S>& n) {
    accumulate_grad<S>(*n.inputs[0], Mat<S>(n.grad * c));
  });
}

template <typename S>
Variable<S> neg(const Variable<S>& a) {
  return scale(a, S(-1));
}

template <typename S>
Variable<S> elemmul(const Variable<S>& a, const Variable<S>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    detail::shape_fail("elemmul", a.value(), b.value());
  Mat<S> v = a.value().cwiseProduct(b.value());
  return detail::make_op<S>("elemmul", std::move(v), {a, b}, [](Node<S>& n) {
    Node<S>& a = *n.inputs[0];
    Node<S>& b = *n.inputs[1];
    if (a.requires_grad)
      accumulate_grad<S>(a, Mat<S>(n.grad.cwiseProduct(b.value)));
    if (b.requires_grad)
      accumulate_grad<S>(b, Mat<S>(n.grad.cwiseProduct(a.value)));
  });
}

// ---------------------------------------------------------------------------
// Structure: concat / slice / embedding lookup

template <typename S>
Variable<S> concat_cols(const std::vector<Variable<S>>& parts) {
  if (parts.empty()) throw ShapeError("concat_cols: no inputs");
  Index rows = parts[0].rows();
  Index cols = 0;
  for (const auto& p : parts) {
    if (p.rows() != rows) detail::shape_fail("concat_cols", parts[0].value(), p.value());
    cols += p.cols();
  }
  Mat<S> v(rows, cols);
  Index off = 0;
  for (const auto& p : parts) {
    v.middleCols(off, p.cols()) = p.value();
    off += p.cols();
  }
  return detail::make_op<S>("concat_cols", std::move(v), parts, [](Node<S>& n) {
    Index off = 0;
    for (auto& in : n.inputs) {
      const Index w = in->value.cols();
      if (in->requires_grad)
        accumulate_grad<S>(*in, Mat<S>(n.grad.middleCols(off, w)));
      off += w;
    }
  });
}

template <typename S>
Variable<S> slice_cols(const Variable<S>& a, Index start, Index n) {
  if (start < 0 || n <= 0 || start + n > a.cols())
    throw ShapeError("slice_cols: range [" + std::to_string(start) + ", " +
                     std::to_string(start + n) + ") out of " +
                     shape_str(a.value()));
  Mat<S> v = a.value().middleCols(start, n);
  return detail::make_op<S>(
      "slice_cols", std::move(v), {a}, [start, n](Node<S>& out) {
        Node<S>& a = *out.inputs[0];
        if (a.grad.size() == 0) a.grad = Mat<S>::Zero(a.value.rows(), a.value.cols());
        a.grad.middleCols(start, n) += out.grad;
      });
}

template <typename S>
Variable<S> slice_rows(const Variable<S>& a, Index start, Index n) {
  if (start < 0 || n <= 0 || start + n > a.rows())
    throw ShapeError("slice_rows: range [" + std::to_string(start) + ", " +
                     std::to_string(start + n) + ") out of " +
                     shape_str(a.value()));
  Mat<S> v = a.value().middleRows(start, n);
  return detail::make_op<S>(
      "slice_rows", std::move(v), {a}, [start, n](Node<S>& out) {
        Node<S>& a = *out.inputs[0];
        if (a.grad.size() == 0) a.grad = Mat<S>::Zero(a.value.rows(), a.value.cols());
        a.grad.middleRows(start, n) += out.grad;
      });
}

/// Gathers table rows by id: out.row(i) = table.row(ids[i]).
template <typename S>
Variable<S> embedding(const Variable<S>& table, std::vector<int> ids) {
  if (ids.empty()) throw ShapeError("embedding: empty id list");
  for (int id : ids) {
    if (id < 0 || id >= table.rows())
      throw ShapeError("embedding: id " + std::to_string(id) + " out of " +
                       shape_str(table.value()));
  }
  Mat<S> v(static_cast<Index>(ids.size()), table.cols());
  for (size_t i = 0; i < ids.size(); ++i) v.row(static_cast<Index>(i)) = table.value().row(ids[i]);
  return detail::make_op<S>(
      "embedding", std::move(v), {table}, [ids = std::move(ids)](Node<S>& n) {
        Node<S>& t = *n.inputs[0];
        if (t.grad.size() == 0) t.grad = Mat<S>::Zero(t.value.rows(), t.value.cols());
        for (size_t i = 0; i < ids.size(); ++i)
          t.grad.row(ids[i]) += n.grad.row(static_cast<Index>(i));
      });
}

// ---------------------------------------------------------------------------
// Nonlinearities

template <typename S>
Variable<S> relu(const Variable<S>& a) {
  Mat<S> v = a.value().cwiseMax(S(0));
  return detail::make_op<S>("relu", std::move(v), {a}, [](Node<S>& n) {
    Node<S>& a = *n.inputs[0];
    Mat<S> g =
        ((a.value.array() > S(0)).template cast<S>() * n.grad.array()).matrix();
    accumulate_grad<S>(a, g);
  });
}

template <typename S>
Variable<S> tanh(const Variable<S>& a) {
  Mat<S> v = a.value().array().tanh().matrix();
  return detail::make_op<S>("tanh", std::move(v), {a}, [](Node<S>& n) {
    Mat<S> g = ((S(1) - n.value.array().square()) * n.grad.array()).matrix();
    accumulate_grad<S>(*n.inputs[0], g);
  });
}

template <typename S>
Variable<S> sigmoid(const Variable<S>& a) {
  Mat<S> v = a.value().unaryExpr([](S x) {
    if (x >= S(0)) return S(1) / (S(1) + std::exp(-x));
    const S e = std::exp(x);
    return e / (S(1) + e);
  });
  return detail::make_op<S>("sigmoid", std::move(v), {a}, [](Node<S>& n) {
    Mat<S> g =
        (n.value.array() * (S(1) - n.value.array()) * n.grad.array()).matrix();
    accumulate_grad<S>(*n.inputs[0], g);
  });
}

/// log(1 + exp(x)), evaluated stably; gradient is sigmoid(x).
template <typename S>
Variable<S> softplus(const Variable<S>& a) {
  Mat<S> v = a.value().unaryExpr([](S x) {
    const S m = x > S(0) ? x : S(0);
    return m + std::log1p(std::exp(-std::abs(x)));
  });
  return detail::make_op<S>("softplus", std::move(v), {a}, [](Node<S>& n) {
    Node<S>& a = *n.inputs[0];
    Mat<S> sig = a.value.unaryExpr([](S x) {
      if (x >= S(0)) return S(1) / (S(1) + std::exp(-x));
      const S e = std::exp(x);
      return e / (S(1) + e);
    });
    accumulate_grad<S>(a, Mat<S>(sig.cwiseProduct(n.grad)));
  });
}

// ---------------------------------------------------------------------------
// Rows as distributions

/// Row-wise softmax with max subtraction.
template <typename S>
Variable<S> softmax_rows(const Variable<S>& a) {
  Mat<S> v = a.value();
  for (Index i = 0; i < v.rows(); ++i) {
    const S mx = v.row(i).maxCoeff();
    v.row(i) = (v.row(i).array() - mx).exp();
    v.row(i) /= v.row(i).sum();
  }
  return detail::make_op<S>("softmax_rows", std::move(v), {a}, [](Node<S>& n) {
    Mat<S> g(n.value.rows(), n.value.cols());
    for (Index i = 0; i < n.value.rows(); ++i) {
      const S dot = n.grad.row(i).dot(n.value.row(i));
      g.row(i) = n.value.row(i).array() * (n.grad.row(i).array() - dot);
    }
    accumulate_grad<S>(*n.inputs[0], g);
  });
}

/// Keeps entries where mask == 1 and overwrites the rest with `fill`.
/// The mask must be the same shape as x, or a single row broadcast to all.
template <typename S>
Variable<S> masked_fill(const Variable<S>& x, const Mat<S>& mask, S fill) {
  const bool broadcast = mask.rows() == 1 && x.rows() > 1;
  if ((!broadcast && (mask.rows() != x.rows() || mask.cols() != x.cols())) ||
      mask.cols() != x.cols())
    detail::shape_fail("masked_fill", x.value(), mask);
  Mat<S> v(x.rows(), x.cols());
  for (Index i = 0; i < x.rows(); ++i) {
    const Index mi = broadcast ? 0 : i;
    for (Index j = 0; j < x.cols(); ++j)
      v(i, j) = mask(mi, j) == S(1) ? x.value()(i, j) : fill;
  }
  return detail::make_op<S>(
      "masked_fill", std::move(v), {x}, [mask, broadcast](Node<S>& n) {
        Mat<S> g = n.grad;
        for (Index i = 0; i < g.rows(); ++i) {
          const Index mi = broadcast ? 0 : i;
          for (Index j = 0; j < g.cols(); ++j)
            if (mask(mi, j) != S(1)) g(i, j) = S(0);
        }
        accumulate_grad<S>(*n.inputs[0], g);
      });
}

/// Layer normalization over each row with learnable gain and bias (both 1xC).
template <typename S>
Variable<S> layer_norm_rows(const Variable<S>& x, const Variable<S>& gain,
                            const Variable<S>& bias, S eps = S(1e-5)) {
  if (gain.rows() != 1 || gain.cols() != x.cols())
    detail::shape_fail("layer_norm", x.value(), gain.value());
  if (bias.rows() != 1 || bias.cols() != x.cols())
    detail::shape_fail("layer_norm", x.value(), bias.value());
  const Index rows = x.rows(), cols = x.cols();
  Mat<S> xhat(rows, cols);
  Mat<S> inv_std(rows, 1);
  for (Index i = 0; i < rows; ++i) {
    const S mean = x.value().row(i).mean();
    const S var = (x.value().row(i).array() - mean).square().sum() / S(cols);
    inv_std(i, 0) = S(1) / std::sqrt(var + eps);
    xhat.row(i) = (x.value().row(i).array() - mean) * inv_std(i, 0);
  }
  Mat<S> v = ((xhat.array().rowwise() * gain.value().row(0).array()).rowwise() +
              bias.value().row(0).array())
                 .matrix();
  return detail::make_op<S>(
      "layer_norm", std::move(v), {x, gain, bias},
      [xhat = std::move(xhat), inv_std = std::move(inv_std)](Node<S>& n) {
        Node<S>& x = *n.inputs[0];
        Node<S>& gain = *n.inputs[1];
        Node<S>& bias = *n.inputs[2];
        const Index rows = n.value.rows(), cols = n.value.cols();
        if (x.requires_grad) {
          Mat<S> gx(rows, cols);
          for (Index i = 0; i < rows; ++i) {
            // d xhat for this row
            Eigen::Array<S, 1, Eigen::Dynamic> dxh =
                n.grad.row(i).array() * gain.value.row(0).array();
            const S mean_dxh = dxh.mean();
            const S mean_dxh_xh = (dxh * xhat.row(i).array()).mean();
            gx.row(i) = ((dxh - mean_dxh - xhat.row(i).array() * mean_dxh_xh) *
                         inv_std(i, 0))
                            .matrix();
          }
          accumulate_grad<S>(x, gx);
        }
        if (gain.requires_grad) {
          Mat<S> gg = (n.grad.array() * xhat.array()).colwise().sum().matrix();
          accumulate_grad<S>(gain, gg);
        }
        if (bias.requires_grad)
          accumulate_grad<S>(bias, Mat<S>(n.grad.colwise().sum()));
      });
}

// ---------------------------------------------------------------------------
// Dropout

/// Inverted dropout; the mask is drawn from `rng` in row-major order so a
/// fixed substream always yields the same mask. rate == 0 is a passthrough.
template <typename S>
Variable<S> dropout(const Variable<S>& x, double rate, Rng& rng) {
  if (rate < 0.0 || rate >= 1.0)
    throw ConfigError("dropout: rate must be in [0, 1)");
  if (rate == 0.0) return x;
  Mat<S> mask(x.rows(), x.cols());
  const S keep_scale = S(1.0 / (1.0 - rate));
  for (Index i = 0; i < x.rows(); ++i)
    for (Index j = 0; j < x.cols(); ++j)
      mask(i, j) = rng.uniform() >= rate ? keep_scale : S(0);
  Mat<S> v = x.value().cwiseProduct(mask);
  return detail::make_op<S>(
      "dropout", std::move(v), {x}, [mask = std::move(mask)](Node<S>& n) {
        accumulate_grad<S>(*n.inputs[0], Mat<S>(n.grad.cwiseProduct(mask)));
      });
}

// ---------------------------------------------------------------------------
// Reductions and losses

template <typename S>
Variable<S> sum(const Variable<S>& a) {
  Mat<S> v(1, 1);
  v(0, 0) = a.value().sum();
  return detail::make_op<S>("sum", std::move(v), {a}, [](Node<S>& n) {
    Node<S>& a = *n.inputs[0];
    accumulate_grad<S>(
        a, Mat<S>(Mat<S>::Constant(a.value.rows(), a.value.cols(), n.grad(0, 0))));
  });
}

template <typename S>
Variable<S> mean(const Variable<S>& a) {
  Mat<S> v(1, 1);
  v(0, 0) = a.value().mean();
  return detail::make_op<S>("mean", std::move(v), {a}, [](Node<S>& n) {
    Node<S>& a = *n.inputs[0];
    const S g = n.grad(0, 0) / S(a.value.size());
    accumulate_grad<S>(a, Mat<S>(Mat<S>::Constant(a.value.rows(), a.value.cols(), g)));
  });
}

/// Sum over rows of log-sum-exp cross-entropy against integer targets.
/// Row i contributes logsumexp(logits.row(i)) - logits(i, targets[i]).
template <typename S>
Variable<S> cross_entropy_sum(const Variable<S>& logits,
                              std::vector<int> targets) {
  if (static_cast<Index>(targets.size()) != logits.rows())
    throw ShapeError("cross_entropy_sum: " + std::to_string(targets.size()) +
                     " targets for " + shape_str(logits.value()));
  for (int t : targets)
    if (t < 0 || t >= logits.cols())
      throw ShapeError("cross_entropy_sum: target " + std::to_string(t) +
                       " out of " + shape_str(logits.value()));
  if (checked_mode() && !logits.value().allFinite())
    throw Error("non-finite input to cross_entropy_sum");
  const Index rows = logits.rows();
  Mat<S> probs(rows, logits.cols());
  S total = S(0);
  for (Index i = 0; i < rows; ++i) {
    const S mx = logits.value().row(i).maxCoeff();
    Eigen::Array<S, 1, Eigen::Dynamic> ex =
        (logits.value().row(i).array() - mx).exp();
    const S z = ex.sum();
    probs.row(i) = (ex / z).matrix();
    total += std::log(z) + mx - logits.value()(i, targets[i]);
  }
  Mat<S> v(1, 1);
  v(0, 0) = total;
  return detail::make_op<S>(
      "cross_entropy_sum", std::move(v), {logits},
      [probs = std::move(probs), targets = std::move(targets)](Node<S>& n) {
        Mat<S> g = probs;
        for (Index i = 0; i < g.rows(); ++i) g(i, targets[i]) -= S(1);
        g *= n.grad(0, 0);
        accumulate_grad<S>(*n.inputs[0], g);
      });
}

// ---------------------------------------------------------------------------
// Gradient reversal

/// Identity forward; backward multiplies the upstream gradient by -lambda.
template <typename S>
Variable<S> grad_reverse(const Variable<S>& x, S lambda) {
  if (lambda < S(0))
    throw ConfigError(
        "grad_reverse: lambda must be non-negative (the sign flip is built "
        "in)");
  Mat<S> v = x.value();
  return detail::make_op<S>(
      "grad_reverse", std::move(v), {x}, [lambda](Node<S>& n) {
        accumulate_grad<S>(*n.inputs[0], Mat<S>(n.grad * (-lambda)));
      });
}

}  // namespace roslu
