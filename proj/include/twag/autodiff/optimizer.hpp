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

#ifndef TWAG_AUTODIFF_OPTIMIZER_HPP
#define TWAG_AUTODIFF_OPTIMIZER_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "twag/autodiff/tensor.hpp"
#include "twag/errors.hpp"
#include "twag/util/random.hpp"

namespace twag::ad {

template <typename T>
struct NamedParameter {
  std::string name;
  Tensor<T> tensor;
};

template <typename T>
using ParameterList = std::vector<NamedParameter<T>>;

template <typename T>
void zero_grads(ParameterList<T>& params) {
  for (auto& p : params) p.tensor.zero_grad();
}

// Fills weights uniformly in [-range, range]; biases stay zero.
template <typename T>
void init_uniform(Tensor<T>& t, Rng& rng, double range) {
  for (T& v : t.values()) v = static_cast<T>(rng.uniform(-range, range));
}

struct AdamOptions {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

/// Adam with bias-corrected moments. Moments are kept in double regardless of
/// the parameter precision.
template <typename T>
class Adam {
 public:
  explicit Adam(const ParameterList<T>& params, AdamOptions options = {})
      : options_(options) {
    for (const auto& p : params) {
      first_.emplace_back(p.tensor.size(), 0.0);
      second_.emplace_back(p.tensor.size(), 0.0);
    }
  }

  void set_learning_rate(double lr) { options_.learning_rate = lr; }
  double learning_rate() const { return options_.learning_rate; }
  std::uint64_t steps() const { return step_; }
  const AdamOptions& options() const { return options_; }

  const std::vector<double>& first_moment(std::size_t i) const { return first_[i]; }
  const std::vector<double>& second_moment(std::size_t i) const { return second_[i]; }

  /// Applies one update to every parameter. Gradients must be populated
  /// (zero_grads() before the forward pass guarantees that); clearing them
  /// afterwards is the caller's job.
  void step(ParameterList<T>& params) {
    if (params.size() != first_.size()) {
      throw ContractError("Adam::step: optimizer built for " + std::to_string(first_.size()) +
                          " parameters, got " + std::to_string(params.size()));
    }
    for (std::size_t i = 0; i < params.size(); ++i) {
      const auto& p = params[i];
      if (p.tensor.size() != first_[i].size()) {
        throw ContractError("Adam::step: parameter '" + p.name + "' changed size");
      }
      if (p.tensor.size() > 0 && p.tensor.grad().size() != p.tensor.size()) {
        throw ContractError("Adam::step: parameter '" + p.name + "' has no gradient");
      }
    }
    ++step_;
    const double b1 = options_.beta1, b2 = options_.beta2;
    const double c1 = 1.0 - std::pow(b1, static_cast<double>(step_));
    const double c2 = 1.0 - std::pow(b2, static_cast<double>(step_));
    const double lr = options_.learning_rate;
    for (std::size_t i = 0; i < params.size(); ++i) {
      Tensor<T> t = params[i].tensor;
      auto values = t.values();
      auto grad = t.grad();
      auto& m = first_[i];
      auto& v = second_[i];
      for (std::size_t j = 0; j < values.size(); ++j) {
        const double g = static_cast<double>(grad[j]);
        m[j] = b1 * m[j] + (1.0 - b1) * g;
        v[j] = b2 * v[j] + (1.0 - b2) * g * g;
        const double mhat = m[j] / c1;
        const double vhat = v[j] / c2;
        values[j] = static_cast<T>(static_cast<double>(values[j]) -
                                   lr * mhat / (std::sqrt(vhat) + options_.epsilon));
      }
    }
  }

 private:
  AdamOptions options_;
  std::uint64_t step_ = 0;
  std::vector<std::vector<double>> first_;
  std::vector<std::vector<double>> second_;
};

}  // namespace twag::ad

#endif  // TWAG_AUTODIFF_OPTIMIZER_HPP
