// Copyright 2026 The twag Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TWAG_AUTODIFF_TENSOR_HPP
#define TWAG_AUTODIFF_TENSOR_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <memory>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "twag/errors.hpp"

namespace twag::ad {

using Shape = std::vector<std::size_t>;

inline std::size_t shape_size(const Shape& shape) {
  return std::accumulate(shape.begin(), shape.end(), std::size_t{1}, std::multiplies<>());
}

inline std::string shape_string(const Shape& shape) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) os << 'x';
    os << shape[i];
  }
  os << ']';
  return os.str();
}

template <typename T>
struct TensorNode {
  Shape shape;
  std::vector<T> value;
  std::vector<T> grad;  // empty until first accumulation
  bool requires_grad = false;
};

/// Dense row-major array with an optional gradient buffer.
///
/// A Tensor is a shared handle: copies alias the same storage, which is what
/// lets the tape route gradients back to parameters held by a model. Use
/// clone() for an independent copy.
template <typename T>
class Tensor {
 public:
  using value_type = T;

  Tensor() = default;

  Tensor(Shape shape, std::vector<T> values, bool requires_grad = false)
      : node_(std::make_shared<TensorNode<T>>()) {
    if (shape_size(shape) != values.size()) {
      throw DimensionError("tensor shape " + shape_string(shape) + " needs " +
                           std::to_string(shape_size(shape)) + " values, got " +
                           std::to_string(values.size()));
    }
    node_->shape = std::move(shape);
    node_->value = std::move(values);
    node_->requires_grad = requires_grad;
  }

  static Tensor zeros(Shape shape, bool requires_grad = false) {
    const std::size_t n = shape_size(shape);
    return Tensor(std::move(shape), std::vector<T>(n, T(0)), requires_grad);
  }

  static Tensor filled(Shape shape, T value) {
    const std::size_t n = shape_size(shape);
    return Tensor(std::move(shape), std::vector<T>(n, value));
  }

  static Tensor scalar(T value, bool requires_grad = false) {
    return Tensor({1, 1}, {value}, requires_grad);
  }

  // 1xN row vector.
  static Tensor row(std::vector<T> values, bool requires_grad = false) {
    const std::size_t n = values.size();
    return Tensor({1, n}, std::move(values), requires_grad);
  }

  static Tensor matrix(std::size_t rows, std::size_t cols, std::vector<T> values,
                       bool requires_grad = false) {
    return Tensor({rows, cols}, std::move(values), requires_grad);
  }

  bool defined() const { return node_ != nullptr; }

  const Shape& shape() const { return node_->shape; }
  std::size_t rank() const { return node_->shape.size(); }
  std::size_t size() const { return node_->value.size(); }

  // Rank-2 accessors.
  std::size_t rows() const { return node_->shape.at(0); }
  std::size_t cols() const { return node_->shape.at(1); }

  std::span<const T> values() const { return node_->value; }
  std::span<T> values() { return node_->value; }
  const std::vector<T>& vector() const { return node_->value; }

  T item() const {
    if (size() != 1) {
      throw ContractError("item() needs a single-element tensor, got " + shape_string(shape()));
    }
    return node_->value[0];
  }

  T at(std::size_t i, std::size_t j) const { return node_->value[i * cols() + j]; }
  T& at(std::size_t i, std::size_t j) { return node_->value[i * cols() + j]; }

  bool requires_grad() const { return node_->requires_grad; }
  void set_requires_grad(bool on) { node_->requires_grad = on; }

  bool has_grad() const { return !node_->grad.empty() || (size() == 0 && requires_grad()); }
  std::span<const T> grad() const { return node_->grad; }

  // Gradient buffer, zero-allocated on first use.
  std::span<T> grad_buffer() const {
    if (node_->grad.size() != node_->value.size()) node_->grad.assign(node_->value.size(), T(0));
    return node_->grad;
  }

  void zero_grad() { node_->grad.assign(node_->value.size(), T(0)); }
  void clear_grad() {
    node_->grad.clear();
    node_->grad.shrink_to_fit();
  }

  Tensor clone() const {
    Tensor out(node_->shape, node_->value, node_->requires_grad);
    out.node_->grad = node_->grad;
    return out;
  }

  // Same values, no gradient tracking.
  Tensor detach() const { return Tensor(node_->shape, node_->value, false); }

  // Overwrite values in place, keeping the handle (and any aliases) intact.
  void assign(std::span<const T> values) {
    if (values.size() != size()) {
      throw DimensionError("assign: expected " + std::to_string(size()) + " values, got " +
                           std::to_string(values.size()));
    }
    std::copy(values.begin(), values.end(), node_->value.begin());
  }

  const std::shared_ptr<TensorNode<T>>& node() const { return node_; }

  bool same_storage(const Tensor& other) const { return node_ == other.node_; }

 private:
  std::shared_ptr<TensorNode<T>> node_;
};

}  // namespace twag::ad

#endif  // TWAG_AUTODIFF_TENSOR_HPP
