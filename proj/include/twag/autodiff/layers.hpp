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

#ifndef TWAG_AUTODIFF_LAYERS_HPP
#define TWAG_AUTODIFF_LAYERS_HPP

#include <cstddef>
#include <string>

#include "twag/autodiff/ops.hpp"
#include "twag/autodiff/optimizer.hpp"
#include "twag/autodiff/tensor.hpp"
#include "twag/util/random.hpp"

namespace twag::ad {

/// y = x·W + b, applied to every row of x.
template <typename T>
struct Linear {
  Tensor<T> weight;  // in x out
  Tensor<T> bias;    // 1 x out

  Linear() = default;
  Linear(std::size_t in, std::size_t out)
      : weight(Tensor<T>::zeros({in, out}, true)), bias(Tensor<T>::zeros({1, out}, true)) {}

  std::size_t in_features() const { return weight.rows(); }
  std::size_t out_features() const { return weight.cols(); }

  Tensor<T> operator()(const Tensor<T>& x) const { return add_row(matmul(x, weight), bias); }

  void init(Rng& rng, double range) { init_uniform(weight, rng, range); }

  void collect(ParameterList<T>& out, const std::string& prefix) const {
    out.push_back({prefix + ".weight", weight});
    out.push_back({prefix + ".bias", bias});
  }
};

/// Gated recurrent unit.
///
///   z = σ(x·Wz + bxz + h·Uz + bhz)
///   r = σ(x·Wr + bxr + h·Ur + bhr)
///   n = tanh(x·Wn + bxn + r ⊙ (h·Un + bhn))
///   h' = n + z ⊙ (h − n)        (= (1 − z) ⊙ n + z ⊙ h)
///
/// The three gates are packed column-wise as [z | r | n] in the input and
/// hidden projections.
template <typename T>
struct GruCell {
  Tensor<T> input_weight;   // in x 3H
  Tensor<T> hidden_weight;  // H x 3H
  Tensor<T> input_bias;     // 1 x 3H
  Tensor<T> hidden_bias;    // 1 x 3H

  GruCell() = default;
  GruCell(std::size_t in, std::size_t hidden)
      : input_weight(Tensor<T>::zeros({in, 3 * hidden}, true)),
        hidden_weight(Tensor<T>::zeros({hidden, 3 * hidden}, true)),
        input_bias(Tensor<T>::zeros({1, 3 * hidden}, true)),
        hidden_bias(Tensor<T>::zeros({1, 3 * hidden}, true)) {}

  std::size_t input_size() const { return input_weight.rows(); }
  std::size_t hidden_size() const { return hidden_weight.rows(); }

  // Input-side projections for a whole sequence at once: [len x 3H].
  Tensor<T> project_inputs(const Tensor<T>& xs) const {
    return add_row(matmul(xs, input_weight), input_bias);
  }

  // One step from a precomputed input projection row [1 x 3H].
  Tensor<T> step_projected(const Tensor<T>& h, const Tensor<T>& xproj) const {
    const std::size_t hs = hidden_size();
    const Tensor<T> hproj = add_row(matmul(h, hidden_weight), hidden_bias);
    const Tensor<T> z = sigmoid(add(slice_cols(xproj, 0, hs), slice_cols(hproj, 0, hs)));
    const Tensor<T> r = sigmoid(add(slice_cols(xproj, hs, 2 * hs), slice_cols(hproj, hs, 2 * hs)));
    const Tensor<T> n =
        tanh(add(slice_cols(xproj, 2 * hs, 3 * hs), mul(r, slice_cols(hproj, 2 * hs, 3 * hs))));
    return add(n, mul(z, sub(h, n)));
  }

  Tensor<T> step(const Tensor<T>& h, const Tensor<T>& x) const {
    return step_projected(h, project_inputs(x));
  }

  void init(Rng& rng, double range) {
    init_uniform(input_weight, rng, range);
    init_uniform(hidden_weight, rng, range);
  }

  void collect(ParameterList<T>& out, const std::string& prefix) const {
    out.push_back({prefix + ".input_weight", input_weight});
    out.push_back({prefix + ".hidden_weight", hidden_weight});
    out.push_back({prefix + ".input_bias", input_bias});
    out.push_back({prefix + ".hidden_bias", hidden_bias});
  }
};

}  // namespace twag::ad

#endif  // TWAG_AUTODIFF_LAYERS_HPP
