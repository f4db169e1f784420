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

// Differentiable operations over ad::Tensor.
//
// Matrix-valued operations take rank-2 tensors; row vectors are 1xN. Every
// operation computes its forward value eagerly and, when a tape is recording
// and any input requires a gradient, records a closure that accumulates the
// input gradients from the output gradient.

#ifndef TWAG_AUTODIFF_OPS_HPP
#define TWAG_AUTODIFF_OPS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "twag/autodiff/tape.hpp"
#include "twag/autodiff/tensor.hpp"
#include "twag/errors.hpp"

namespace twag::ad {

enum class Activation { kTanh, kSigmoid };

namespace detail {

template <typename T>
Tape<T>* recording(std::initializer_list<const Tensor<T>*> inputs) {
  Tape<T>* tape = Tape<T>::current();
  if (tape == nullptr) return nullptr;
  for (const Tensor<T>* t : inputs) {
    if (t->requires_grad()) return tape;
  }
  return nullptr;
}

template <typename T>
Tape<T>* recording(std::span<const Tensor<T>> inputs) {
  Tape<T>* tape = Tape<T>::current();
  if (tape == nullptr) return nullptr;
  for (const Tensor<T>& t : inputs) {
    if (t.requires_grad()) return tape;
  }
  return nullptr;
}

template <typename T>
void require_rank2(const Tensor<T>& t, const char* op) {
  if (t.rank() != 2) {
    throw DimensionError(std::string(op) + ": expected a matrix, got shape " +
                         shape_string(t.shape()));
  }
}

template <typename T>
void require_same_shape(const Tensor<T>& a, const Tensor<T>& b, const char* op) {
  if (a.shape() != b.shape()) {
    throw DimensionError(std::string(op) + ": shape mismatch " + shape_string(a.shape()) +
                         " vs " + shape_string(b.shape()));
  }
}

template <typename T>
T sigmoid_scalar(T x) {
  if (x >= T(0)) return T(1) / (T(1) + std::exp(-x));
  const T e = std::exp(x);
  return e / (T(1) + e);
}

}  // namespace detail

/// C[m×n] = A[m×k] · B[k×n].
template <typename T>
Tensor<T> matmul(const Tensor<T>& a, const Tensor<T>& b) {
  detail::require_rank2(a, "matmul");
  detail::require_rank2(b, "matmul");
  if (a.cols() != b.rows()) {
    throw DimensionError("matmul: inner dimensions disagree, " + shape_string(a.shape()) +
                         " x " + shape_string(b.shape()));
  }
  const std::size_t m = a.rows(), k = a.cols(), n = b.cols();
  Tensor<T> out = Tensor<T>::zeros({m, n});
  const T* pa = a.values().data();
  const T* pb = b.values().data();
  T* pc = out.values().data();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t p = 0; p < k; ++p) {
      const T av = pa[i * k + p];
      if (av == T(0)) continue;
      const T* brow = pb + p * n;
      T* crow = pc + i * n;
      for (std::size_t j = 0; j < n; ++j) crow[j] += av * brow[j];
    }
  }
  if (auto* tape = detail::recording({&a, &b})) {
    out.set_requires_grad(true);
    tape->record(out, [a, b, out, m, k, n]() mutable {
      const T* g = out.grad().data();
      if (a.requires_grad()) {
        // dA = dC · Bᵀ
        T* ga = a.grad_buffer().data();
        const T* pb = b.values().data();
        for (std::size_t i = 0; i < m; ++i) {
          for (std::size_t p = 0; p < k; ++p) {
            T acc = T(0);
            for (std::size_t j = 0; j < n; ++j) acc += g[i * n + j] * pb[p * n + j];
            ga[i * k + p] += acc;
          }
        }
      }
      if (b.requires_grad()) {
        // dB = Aᵀ · dC
        T* gb = b.grad_buffer().data();
        const T* pa = a.values().data();
        for (std::size_t i = 0; i < m; ++i) {
          for (std::size_t p = 0; p < k; ++p) {
            const T av = pa[i * k + p];
            if (av == T(0)) continue;
            for (std::size_t j = 0; j < n; ++j) gb[p * n + j] += av * g[i * n + j];
          }
        }
      }
    });
  }
  return out;
}

template <typename T>
Tensor<T> add(const Tensor<T>& a, const Tensor<T>& b) {
  detail::require_same_shape(a, b, "add");
  Tensor<T> out = a.detach();
  auto ov = out.values();
  auto bv = b.values();
  for (std::size_t i = 0; i < ov.size(); ++i) ov[i] += bv[i];
  if (auto* tape = detail::recording({&a, &b})) {
    out.set_requires_grad(true);
    tape->record(out, [a, b, out]() mutable {
      auto g = out.grad();
      if (a.requires_grad()) {
        auto ga = a.grad_buffer();
        for (std::size_t i = 0; i < g.size(); ++i) ga[i] += g[i];
      }
      if (b.requires_grad()) {
        auto gb = b.grad_buffer();
        for (std::size_t i = 0; i < g.size(); ++i) gb[i] += g[i];
      }
    });
  }
  return out;
}

template <typename T>
Tensor<T> sub(const Tensor<T>& a, const Tensor<T>& b) {
  detail::require_same_shape(a, b, "sub");
  Tensor<T> out = a.detach();
  auto ov = out.values();
  auto bv = b.values();
  for (std::size_t i = 0; i < ov.size(); ++i) ov[i] -= bv[i];
  if (auto* tape = detail::recording({&a, &b})) {
    out.set_requires_grad(true);
    tape->record(out, [a, b, out]() mutable {
      auto g = out.grad();
      if (a.requires_grad()) {
        auto ga = a.grad_buffer();
        for (std::size_t i = 0; i < g.size(); ++i) ga[i] += g[i];
      }
      if (b.requires_grad()) {
        auto gb = b.grad_buffer();
        for (std::size_t i = 0; i < g.size(); ++i) gb[i] -= g[i];
      }
    });
  }
  return out;
}

// Elementwise (Hadamard) product.
template <typename T>
Tensor<T> mul(const Tensor<T>& a, const Tensor<T>& b) {
  detail::require_same_shape(a, b, "mul");
  Tensor<T> out = a.detach();
  auto ov = out.values();
  auto bv = b.values();
  for (std::size_t i = 0; i < ov.size(); ++i) ov[i] *= bv[i];
  if (auto* tape = detail::recording({&a, &b})) {
    out.set_requires_grad(true);
    tape->record(out, [a, b, out]() mutable {
      auto g = out.grad();
      if (a.requires_grad()) {
        auto ga = a.grad_buffer();
        auto bv = b.values();
        for (std::size_t i = 0; i < g.size(); ++i) ga[i] += g[i] * bv[i];
      }
      if (b.requires_grad()) {
        auto gb = b.grad_buffer();
        auto av = a.values();
        for (std::size_t i = 0; i < g.size(); ++i) gb[i] += g[i] * av[i];
      }
    });
  }
  return out;
}

/// out[i, :] = a[i, :] + row[0, :] for every row i.
template <typename T>
Tensor<T> add_row(const Tensor<T>& a, const Tensor<T>& row) {
  detail::require_rank2(a, "add_row");
  detail::require_rank2(row, "add_row");
  if (row.rows() != 1 || row.cols() != a.cols()) {
    throw DimensionError("add_row: cannot broadcast " + shape_string(row.shape()) + " over " +
                         shape_string(a.shape()));
  }
  const std::size_t m = a.rows(), n = a.cols();
  Tensor<T> out = a.detach();
  auto ov = out.values();
  auto rv = row.values();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) ov[i * n + j] += rv[j];
  if (auto* tape = detail::recording({&a, &row})) {
    out.set_requires_grad(true);
    tape->record(out, [a, row, out, m, n]() mutable {
      auto g = out.grad();
      if (a.requires_grad()) {
        auto ga = a.grad_buffer();
        for (std::size_t i = 0; i < g.size(); ++i) ga[i] += g[i];
      }
      if (row.requires_grad()) {
        auto gr = row.grad_buffer();
        for (std::size_t i = 0; i < m; ++i)
          for (std::size_t j = 0; j < n; ++j) gr[j] += g[i * n + j];
      }
    });
  }
  return out;
}

/// scale·x + shift, elementwise, with constant coefficients.
template <typename T>
Tensor<T> affine(const Tensor<T>& x, T scale, T shift) {
  Tensor<T> out = x.detach();
  for (T& v : out.values()) v = scale * v + shift;
  if (auto* tape = detail::recording({&x})) {
    out.set_requires_grad(true);
    tape->record(out, [x, out, scale]() mutable {
      auto g = out.grad();
      auto gx = x.grad_buffer();
      for (std::size_t i = 0; i < g.size(); ++i) gx[i] += scale * g[i];
    });
  }
  return out;
}

template <typename T>
Tensor<T> scale(const Tensor<T>& x, T factor) {
  return affine(x, factor, T(0));
}

template <typename T>
Tensor<T> one_minus(const Tensor<T>& x) {
  return affine(x, T(-1), T(1));
}

/// x scaled by the single value held in s (any shape with one element).
template <typename T>
Tensor<T> mul_scalar(const Tensor<T>& x, const Tensor<T>& s) {
  if (s.size() != 1) {
    throw DimensionError("mul_scalar: factor must hold one value, got shape " +
                         shape_string(s.shape()));
  }
  const T factor = s.item();
  Tensor<T> out = x.detach();
  for (T& v : out.values()) v *= factor;
  if (auto* tape = detail::recording({&x, &s})) {
    out.set_requires_grad(true);
    tape->record(out, [x, s, out]() mutable {
      auto g = out.grad();
      if (x.requires_grad()) {
        const T f = s.item();
        auto gx = x.grad_buffer();
        for (std::size_t i = 0; i < g.size(); ++i) gx[i] += f * g[i];
      }
      if (s.requires_grad()) {
        auto xv = x.values();
        T acc = T(0);
        for (std::size_t i = 0; i < g.size(); ++i) acc += g[i] * xv[i];
        s.grad_buffer()[0] += acc;
      }
    });
  }
  return out;
}

template <typename T>
Tensor<T> activation(const Tensor<T>& x, Activation kind) {
  Tensor<T> out = x.detach();
  for (T& v : out.values()) v = kind == Activation::kTanh ? std::tanh(v) : detail::sigmoid_scalar(v);
  if (auto* tape = detail::recording({&x})) {
    out.set_requires_grad(true);
    tape->record(out, [x, out, kind]() mutable {
      auto g = out.grad();
      auto y = out.values();
      auto gx = x.grad_buffer();
      if (kind == Activation::kTanh) {
        for (std::size_t i = 0; i < g.size(); ++i) gx[i] += g[i] * (T(1) - y[i] * y[i]);
      } else {
        for (std::size_t i = 0; i < g.size(); ++i) gx[i] += g[i] * y[i] * (T(1) - y[i]);
      }
    });
  }
  return out;
}

template <typename T>
Tensor<T> tanh(const Tensor<T>& x) {
  return activation(x, Activation::kTanh);
}

template <typename T>
Tensor<T> sigmoid(const Tensor<T>& x) {
  return activation(x, Activation::kSigmoid);
}

/// Max-subtracted softmax along `axis` of a rank-1 or rank-2 tensor.
template <typename T>
Tensor<T> softmax(const Tensor<T>& x, std::size_t axis) {
  if (x.rank() == 0 || x.rank() > 2 || axis >= x.rank()) {
    throw DimensionError("softmax: axis " + std::to_string(axis) + " invalid for shape " +
                         shape_string(x.shape()));
  }
  // View the tensor as `outer` independent groups of `len` entries spaced by `stride`.
  std::size_t len, outer, stride, step;
  if (x.rank() == 1) {
    len = x.shape()[0], outer = 1, stride = 1, step = 0;
  } else if (axis == 1) {
    len = x.cols(), outer = x.rows(), stride = 1, step = x.cols();
  } else {
    len = x.rows(), outer = x.cols(), stride = x.cols(), step = 1;
  }
  Tensor<T> out = x.detach();
  auto ov = out.values();
  for (std::size_t o = 0; o < outer; ++o) {
    const std::size_t base = o * step;
    T mx = -std::numeric_limits<T>::infinity();
    for (std::size_t i = 0; i < len; ++i) mx = std::max(mx, ov[base + i * stride]);
    T total = T(0);
    for (std::size_t i = 0; i < len; ++i) {
      T& v = ov[base + i * stride];
      v = std::exp(v - mx);
      total += v;
    }
    for (std::size_t i = 0; i < len; ++i) ov[base + i * stride] /= total;
  }
  if (auto* tape = detail::recording({&x})) {
    out.set_requires_grad(true);
    tape->record(out, [x, out, len, outer, stride, step]() mutable {
      auto g = out.grad();
      auto y = out.values();
      auto gx = x.grad_buffer();
      for (std::size_t o = 0; o < outer; ++o) {
        const std::size_t base = o * step;
        T dot = T(0);
        for (std::size_t i = 0; i < len; ++i) dot += g[base + i * stride] * y[base + i * stride];
        for (std::size_t i = 0; i < len; ++i) {
          const std::size_t idx = base + i * stride;
          gx[idx] += y[idx] * (g[idx] - dot);
        }
      }
    });
  }
  return out;
}

/// Natural log with inputs clamped below at `floor`. Clamped entries pass no
/// gradient; `clamp_count`, when given, is incremented once per clamped entry.
template <typename T>
Tensor<T> log(const Tensor<T>& x, T floor = T(1e-12), std::size_t* clamp_count = nullptr) {
  Tensor<T> out = x.detach();
  for (T& v : out.values()) {
    if (!(v > floor)) {
      if (clamp_count != nullptr) ++*clamp_count;
      v = std::log(floor);
    } else {
      v = std::log(v);
    }
  }
  if (auto* tape = detail::recording({&x})) {
    out.set_requires_grad(true);
    tape->record(out, [x, out, floor]() mutable {
      auto g = out.grad();
      auto xv = x.values();
      auto gx = x.grad_buffer();
      for (std::size_t i = 0; i < g.size(); ++i) {
        if (xv[i] > floor) gx[i] += g[i] / xv[i];
      }
    });
  }
  return out;
}

// Sum of all entries as a 1x1 tensor.
template <typename T>
Tensor<T> sum(const Tensor<T>& x) {
  T total = T(0);
  for (T v : x.values()) total += v;
  Tensor<T> out = Tensor<T>::scalar(total);
  if (auto* tape = detail::recording({&x})) {
    out.set_requires_grad(true);
    tape->record(out, [x, out]() mutable {
      const T g = out.grad()[0];
      for (T& v : x.grad_buffer()) v += g;
    });
  }
  return out;
}

template <typename T>
Tensor<T> mean(const Tensor<T>& x) {
  if (x.size() == 0) throw ContractError("mean of an empty tensor");
  return scale(sum(x), T(1) / static_cast<T>(x.size()));
}

/// Columns [begin, end) of a matrix.
template <typename T>
Tensor<T> slice_cols(const Tensor<T>& x, std::size_t begin, std::size_t end) {
  detail::require_rank2(x, "slice_cols");
  if (begin > end || end > x.cols()) {
    throw DimensionError("slice_cols: range [" + std::to_string(begin) + ", " +
                         std::to_string(end) + ") outside " + shape_string(x.shape()));
  }
  const std::size_t m = x.rows(), n = x.cols(), w = end - begin;
  Tensor<T> out = Tensor<T>::zeros({m, w});
  auto xv = x.values();
  auto ov = out.values();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < w; ++j) ov[i * w + j] = xv[i * n + begin + j];
  if (auto* tape = detail::recording({&x})) {
    out.set_requires_grad(true);
    tape->record(out, [x, out, m, n, w, begin]() mutable {
      auto g = out.grad();
      auto gx = x.grad_buffer();
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < w; ++j) gx[i * n + begin + j] += g[i * w + j];
    });
  }
  return out;
}

/// Rows [begin, end) of a matrix.
template <typename T>
Tensor<T> slice_rows(const Tensor<T>& x, std::size_t begin, std::size_t end) {
  detail::require_rank2(x, "slice_rows");
  if (begin > end || end > x.rows()) {
    throw DimensionError("slice_rows: range [" + std::to_string(begin) + ", " +
                         std::to_string(end) + ") outside " + shape_string(x.shape()));
  }
  const std::size_t n = x.cols();
  auto xv = x.values();
  Tensor<T> out({end - begin, n},
                std::vector<T>(xv.begin() + begin * n, xv.begin() + end * n));
  if (auto* tape = detail::recording({&x})) {
    out.set_requires_grad(true);
    tape->record(out, [x, out, begin, n]() mutable {
      auto g = out.grad();
      auto gx = x.grad_buffer();
      for (std::size_t i = 0; i < g.size(); ++i) gx[begin * n + i] += g[i];
    });
  }
  return out;
}

template <typename T>
Tensor<T> row(const Tensor<T>& x, std::size_t i) {
  return slice_rows(x, i, i + 1);
}

// Single entry x[i, j] as a 1x1 tensor.
template <typename T>
Tensor<T> element(const Tensor<T>& x, std::size_t i, std::size_t j) {
  detail::require_rank2(x, "element");
  if (i >= x.rows() || j >= x.cols()) {
    throw std::out_of_range("element: index (" + std::to_string(i) + ", " + std::to_string(j) +
                            ") outside " + shape_string(x.shape()));
  }
  const std::size_t idx = i * x.cols() + j;
  Tensor<T> out = Tensor<T>::scalar(x.values()[idx]);
  if (auto* tape = detail::recording({&x})) {
    out.set_requires_grad(true);
    tape->record(out, [x, out, idx]() mutable { x.grad_buffer()[idx] += out.grad()[0]; });
  }
  return out;
}

/// [a | b] for matrices with equal row counts.
template <typename T>
Tensor<T> concat_cols(const Tensor<T>& a, const Tensor<T>& b) {
  detail::require_rank2(a, "concat_cols");
  detail::require_rank2(b, "concat_cols");
  if (a.rows() != b.rows()) {
    throw DimensionError("concat_cols: row counts disagree, " + shape_string(a.shape()) + " vs " +
                         shape_string(b.shape()));
  }
  const std::size_t m = a.rows(), p = a.cols(), q = b.cols();
  Tensor<T> out = Tensor<T>::zeros({m, p + q});
  auto ov = out.values();
  auto av = a.values();
  auto bv = b.values();
  for (std::size_t i = 0; i < m; ++i) {
    std::copy_n(av.begin() + i * p, p, ov.begin() + i * (p + q));
    std::copy_n(bv.begin() + i * q, q, ov.begin() + i * (p + q) + p);
  }
  if (auto* tape = detail::recording({&a, &b})) {
    out.set_requires_grad(true);
    tape->record(out, [a, b, out, m, p, q]() mutable {
      auto g = out.grad();
      if (a.requires_grad()) {
        auto ga = a.grad_buffer();
        for (std::size_t i = 0; i < m; ++i)
          for (std::size_t j = 0; j < p; ++j) ga[i * p + j] += g[i * (p + q) + j];
      }
      if (b.requires_grad()) {
        auto gb = b.grad_buffer();
        for (std::size_t i = 0; i < m; ++i)
          for (std::size_t j = 0; j < q; ++j) gb[i * q + j] += g[i * (p + q) + p + j];
      }
    });
  }
  return out;
}

/// Stacks matrices with equal column counts. `cols` fixes the width when
/// `parts` is empty (the result is then 0 x cols).
template <typename T>
Tensor<T> concat_rows(std::span<const Tensor<T>> parts, std::size_t cols) {
  std::size_t rows = 0;
  for (const auto& p : parts) {
    detail::require_rank2(p, "concat_rows");
    if (p.cols() != cols) {
      throw DimensionError("concat_rows: expected " + std::to_string(cols) + " columns, got " +
                           shape_string(p.shape()));
    }
    rows += p.rows();
  }
  std::vector<T> values;
  values.reserve(rows * cols);
  for (const auto& p : parts) values.insert(values.end(), p.values().begin(), p.values().end());
  Tensor<T> out({rows, cols}, std::move(values));
  if (auto* tape = detail::recording(parts)) {
    out.set_requires_grad(true);
    std::vector<Tensor<T>> inputs(parts.begin(), parts.end());
    tape->record(out, [inputs, out]() mutable {
      auto g = out.grad();
      std::size_t offset = 0;
      for (auto& p : inputs) {
        if (p.requires_grad()) {
          auto gp = p.grad_buffer();
          for (std::size_t i = 0; i < gp.size(); ++i) gp[i] += g[offset + i];
        }
        offset += p.size();
      }
    });
  }
  return out;
}

template <typename T>
Tensor<T> transpose(const Tensor<T>& x) {
  detail::require_rank2(x, "transpose");
  const std::size_t m = x.rows(), n = x.cols();
  Tensor<T> out = Tensor<T>::zeros({n, m});
  auto xv = x.values();
  auto ov = out.values();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) ov[j * m + i] = xv[i * n + j];
  if (auto* tape = detail::recording({&x})) {
    out.set_requires_grad(true);
    tape->record(out, [x, out, m, n]() mutable {
      auto g = out.grad();
      auto gx = x.grad_buffer();
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) gx[i * n + j] += g[j * m + i];
    });
  }
  return out;
}

/// Gathers rows of `table` [V×D] into a [len×D] matrix; backward scatter-adds.
template <typename T>
Tensor<T> embedding_lookup(const Tensor<T>& table, std::span<const int> ids) {
  detail::require_rank2(table, "embedding_lookup");
  const std::size_t vocab = table.rows(), dim = table.cols();
  for (int id : ids) {
    if (id < 0 || static_cast<std::size_t>(id) >= vocab) {
      throw std::out_of_range("embedding_lookup: id " + std::to_string(id) +
                              " outside table of " + std::to_string(vocab) + " rows");
    }
  }
  Tensor<T> out = Tensor<T>::zeros({ids.size(), dim});
  auto tv = table.values();
  auto ov = out.values();
  for (std::size_t i = 0; i < ids.size(); ++i)
    std::copy_n(tv.begin() + static_cast<std::size_t>(ids[i]) * dim, dim, ov.begin() + i * dim);
  if (auto* tape = detail::recording({&table})) {
    out.set_requires_grad(true);
    std::vector<int> rows(ids.begin(), ids.end());
    tape->record(out, [table, out, rows, dim]() mutable {
      auto g = out.grad();
      auto gt = table.grad_buffer();
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const std::size_t base = static_cast<std::size_t>(rows[i]) * dim;
        for (std::size_t j = 0; j < dim; ++j) gt[base + j] += g[i * dim + j];
      }
    });
  }
  return out;
}

/// Column-wise mean of an [n×d] matrix as [1×d]; n = 0 gives zeros.
template <typename T>
Tensor<T> mean_rows(const Tensor<T>& x) {
  detail::require_rank2(x, "mean_rows");
  const std::size_t n = x.rows(), d = x.cols();
  Tensor<T> out = Tensor<T>::zeros({1, d});
  auto xv = x.values();
  auto ov = out.values();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < d; ++j) ov[j] += xv[i * d + j];
  if (n > 0) {
    for (T& v : ov) v /= static_cast<T>(n);
  }
  if (auto* tape = detail::recording({&x})) {
    out.set_requires_grad(true);
    tape->record(out, [x, out, n, d]() mutable {
      if (n == 0) return;
      auto g = out.grad();
      auto gx = x.grad_buffer();
      const T inv = T(1) / static_cast<T>(n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < d; ++j) gx[i * d + j] += g[j] * inv;
    });
  }
  return out;
}

/// out[0, ids[i]] += x[0, i] into a zero row of `width` columns.
template <typename T>
Tensor<T> scatter_cols(const Tensor<T>& x, std::span<const int> ids, std::size_t width) {
  detail::require_rank2(x, "scatter_cols");
  if (x.rows() != 1 || x.cols() != ids.size()) {
    throw DimensionError("scatter_cols: " + std::to_string(ids.size()) +
                         " target ids for source shape " + shape_string(x.shape()));
  }
  for (int id : ids) {
    if (id < 0 || static_cast<std::size_t>(id) >= width) {
      throw std::out_of_range("scatter_cols: id " + std::to_string(id) + " outside width " +
                              std::to_string(width));
    }
  }
  Tensor<T> out = Tensor<T>::zeros({1, width});
  auto xv = x.values();
  auto ov = out.values();
  for (std::size_t i = 0; i < ids.size(); ++i) ov[static_cast<std::size_t>(ids[i])] += xv[i];
  if (auto* tape = detail::recording({&x})) {
    out.set_requires_grad(true);
    std::vector<int> targets(ids.begin(), ids.end());
    tape->record(out, [x, out, targets]() mutable {
      auto g = out.grad();
      auto gx = x.grad_buffer();
      for (std::size_t i = 0; i < targets.size(); ++i)
        gx[i] += g[static_cast<std::size_t>(targets[i])];
    });
  }
  return out;
}

// Row-major index of the largest entry; ties go to the lowest index.
template <typename T>
std::size_t argmax(std::span<const T> values) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) best = i;
  }
  return best;
}

}  // namespace twag::ad

#endif  // TWAG_AUTODIFF_OPS_HPP
