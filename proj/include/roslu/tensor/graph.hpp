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

#include <functional>
#include <memory>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "roslu/tensor/tensor.hpp"

namespace roslu {

/// One vertex of the reverse-mode computation graph.
template <typename S>
struct Node {
  Mat<S> value;
  Mat<S> grad;  // empty until backward reaches this node
  bool requires_grad = false;
  const char* op = "leaf";
  std::string name;  // non-empty for named parameters
  std::vector<std::shared_ptr<Node<S>>> inputs;
  std::function<void(Node<S>&)> backprop;  // reads grad, accumulates into inputs
  bool backward_done = false;              // set on the root after backward()
};

template <typename S>
void accumulate_grad(Node<S>& n, const Mat<S>& g) {
  if (n.grad.size() == 0) {
    n.grad = g;
  } else {
    n.grad += g;
  }
}

/// Handle to a graph node. Copies share the node.
template <typename S>
class Variable {
 public:
  Variable() = default;

  static Variable constant(Mat<S> v) {
    Variable out;
    out.node_ = std::make_shared<Node<S>>();
    out.node_->value = std::move(v);
    return out;
  }

  static Variable scalar(S v) {
    Mat<S> m(1, 1);
    m(0, 0) = v;
    return constant(std::move(m));
  }

  static Variable param(std::string name, Mat<S> v) {
    Variable out;
    out.node_ = std::make_shared<Node<S>>();
    out.node_->value = std::move(v);
    out.node_->requires_grad = true;
    out.node_->op = "param";
    out.node_->name = std::move(name);
    return out;
  }

  bool defined() const { return node_ != nullptr; }
  Node<S>& node() const { return *node_; }
  const std::shared_ptr<Node<S>>& ptr() const { return node_; }

  const Mat<S>& value() const { return node_->value; }
  Mat<S>& mutable_value() { return node_->value; }
  const Mat<S>& grad() const { return node_->grad; }
  bool has_grad() const { return node_->grad.size() != 0; }
  bool requires_grad() const { return node_->requires_grad; }
  const std::string& name() const { return node_->name; }

  Index rows() const { return node_->value.rows(); }
  Index cols() const { return node_->value.cols(); }
  S item() const {
    if (rows() != 1 || cols() != 1)
      throw ShapeError("item: expected scalar, got " +
                       shape_str(node_->value));
    return node_->value(0, 0);
  }

  void zero_grad() { node_->grad.resize(0, 0); }

 private:
  std::shared_ptr<Node<S>> node_;
};

namespace detail {

// Post-order over requires_grad subgraph, iterative to keep deep graphs safe.
template <typename S>
void topo_order(Node<S>* root, std::vector<Node<S>*>& order) {
  std::unordered_set<Node<S>*> seen;
  std::vector<std::pair<Node<S>*, size_t>> stack;
  stack.emplace_back(root, 0);
  seen.insert(root);
  while (!stack.empty()) {
    auto& [n, next] = stack.back();
    if (next < n->inputs.size()) {
      Node<S>* in = n->inputs[next].get();
      ++next;
      if (in->requires_grad && seen.insert(in).second) {
        stack.emplace_back(in, 0);
      }
    } else {
      order.push_back(n);
      stack.pop_back();
    }
  }
}

}  // namespace detail

/// Reverse-mode sweep from a scalar loss. Gradients accumulate (+=) into
/// every reachable requires_grad node; call zero_grad() on parameters
/// between steps. Running backward twice from the same root is an error.
template <typename S>
void backward(const Variable<S>& loss) {
  Node<S>& root = loss.node();
  if (root.value.rows() != 1 || root.value.cols() != 1)
    throw ShapeError("backward: loss must be scalar, got " +
                     shape_str(root.value));
  if (root.backward_done)
    throw ContractError(
        "backward: already ran from this root; rebuild the graph (and "
        "zero_grad parameters) before the next step");
  if (!root.requires_grad)
    throw ContractError("backward: loss does not depend on any parameter");

  std::vector<Node<S>*> order;
  detail::topo_order(&root, order);

  Mat<S> seed(1, 1);
  seed(0, 0) = S(1);
  accumulate_grad(root, seed);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    Node<S>* n = *it;
    if (n->backprop) n->backprop(*n);
  }
  root.backward_done = true;
}

template <typename S>
void zero_grad(const std::vector<Variable<S>>& params) {
  for (const auto& p : params) p.node().grad.resize(0, 0);
}

/// Plain SGD update: w <- w - lr * g. Parameters without a gradient are
/// untouched. Non-finite gradients abort the step before any write.
template <typename S>
void sgd_step(const std::vector<Variable<S>>& params, S lr) {
  if (!(lr > S(0))) throw ConfigError("sgd_step: lr must be positive");
  for (const auto& p : params) {
    if (p.has_grad() && !p.grad().allFinite())
      throw StepError("sgd_step: non-finite gradient for parameter '" +
                      p.name() + "'");
  }
  for (const auto& p : params) {
    if (p.has_grad()) p.node().value -= lr * p.node().grad;
  }
}

}  // namespace roslu
