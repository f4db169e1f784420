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

// Central finite-difference oracle used by the gradient checks. It only
// perturbs tensor values and re-evaluates a scalar function; it never looks
// at the tape.

#ifndef TWAG_TESTS_FINITE_DIFFERENCE_HPP
#define TWAG_TESTS_FINITE_DIFFERENCE_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "twag/autodiff/optimizer.hpp"
#include "twag/autodiff/tape.hpp"
#include "twag/autodiff/tensor.hpp"

namespace twag::testing {

inline constexpr double kFdStep = 1e-3;
inline constexpr double kFdTolerance = 1e-4;
// Gradients smaller than this are compared on an absolute scale: relative
// error is meaningless for entries that are zero up to O(step²) truncation.
inline constexpr double kFdScaleFloor = 1e-2;

inline double relative_error(double analytic, double numeric) {
  const double scale = std::max({std::abs(analytic), std::abs(numeric), kFdScaleFloor});
  return std::abs(analytic - numeric) / scale;
}

template <typename T>
std::vector<double> numeric_gradient(const std::function<T()>& f, ad::Tensor<T> x,
                                     double step = kFdStep) {
  std::vector<double> out(x.size());
  auto values = x.values();
  for (std::size_t i = 0; i < values.size(); ++i) {
    const T saved = values[i];
    values[i] = static_cast<T>(static_cast<double>(saved) + step);
    const double up = static_cast<double>(f());
    values[i] = static_cast<T>(static_cast<double>(saved) - step);
    const double down = static_cast<double>(f());
    values[i] = saved;
    out[i] = (up - down) / (2.0 * step);
  }
  return out;
}

struct GradCheckResult {
  double max_error = 0.0;
  std::string worst;  // "<param>[index]"
  std::size_t checked = 0;
};

/// Runs `loss` once under a tape for analytic gradients, then compares every
/// entry of every parameter against central differences of `loss` evaluated
/// tape-free.
template <typename T>
GradCheckResult check_gradients(const std::function<ad::Tensor<T>()>& loss,
                                ad::ParameterList<T> params, double step = kFdStep) {
  ad::zero_grads(params);
  {
    ad::Tape<T> tape;
    ad::Tensor<T> root = loss();
    tape.backward(root);
  }
  GradCheckResult result;
  const std::function<T()> scalar = [&] { return loss().item(); };
  for (auto& p : params) {
    const std::vector<T> analytic(p.tensor.grad().begin(), p.tensor.grad().end());
    const std::vector<double> numeric = numeric_gradient<T>(scalar, p.tensor, step);
    for (std::size_t i = 0; i < numeric.size(); ++i) {
      const double err = relative_error(static_cast<double>(analytic[i]), numeric[i]);
      ++result.checked;
      if (err > result.max_error) {
        result.max_error = err;
        result.worst = p.name + "[" + std::to_string(i) + "]";
      }
    }
  }
  return result;
}

}  // namespace twag::testing

#endif  // TWAG_TESTS_FINITE_DIFFERENCE_HPP
