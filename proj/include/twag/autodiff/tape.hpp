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

#ifndef TWAG_AUTODIFF_TAPE_HPP
#define TWAG_AUTODIFF_TAPE_HPP

#include <cstddef>
#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "twag/autodiff/tensor.hpp"
#include "twag/errors.hpp"

namespace twag::ad {

/// Records executed operations so a single reverse sweep can populate
/// gradients.
///
/// Constructing a Tape makes it the recording tape of the current thread
/// until it is destroyed; tapes nest like scopes. Operations executed while no
/// tape is active (or whose inputs do not require gradients) record nothing,
/// so inference runs tape-free.
template <typename T>
class Tape {
 public:
  Tape() : previous_(current_) { current_ = this; }
  ~Tape() { current_ = previous_; }

  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  static Tape* current() { return current_; }

  void record(const Tensor<T>& output, std::function<void()> backward) {
    entries_.push_back(Entry{output.node(), std::move(backward)});
  }

  std::size_t size() const { return entries_.size(); }

  /// Populates d(root)/d(x) for every requires_grad tensor reachable from
  /// root. Leaf gradients accumulate across calls; intermediate gradients are
  /// reset at the start of every sweep.
  void backward(const Tensor<T>& root) {
    if (!root.defined() || root.size() != 1) {
      throw ContractError("backward() needs a scalar root, got shape " +
                          (root.defined() ? shape_string(root.shape()) : std::string("<null>")));
    }
    if (!root.requires_grad()) {
      throw ContractError("backward() root was not produced under a recording tape");
    }
    for (auto& entry : entries_) entry.output->grad.assign(entry.output->value.size(), T(0));
    Tensor<T> seed = root;
    seed.grad_buffer()[0] += T(1);
    for (auto it = entries_.rbegin(); it != entries_.rend(); ++it) it->backward();
  }

  // Drops every recorded operation and the tensors they kept alive.
  void clear() {
    entries_.clear();
    entries_.shrink_to_fit();
  }

 private:
  template <typename>
  friend class PauseRecording;

  struct Entry {
    std::shared_ptr<TensorNode<T>> output;
    std::function<void()> backward;
  };

  std::vector<Entry> entries_;
  Tape* previous_;
  static inline thread_local Tape* current_ = nullptr;
};

// Suspends recording on the current thread for its lifetime.
template <typename T>
class PauseRecording {
 public:
  PauseRecording() : saved_(Tape<T>::current_) { Tape<T>::current_ = nullptr; }
  ~PauseRecording() { Tape<T>::current_ = saved_; }

  PauseRecording(const PauseRecording&) = delete;
  PauseRecording& operator=(const PauseRecording&) = delete;

 private:
  Tape<T>* saved_;
};

// Backward from a scalar through the thread's active tape.
template <typename T>
void backward(const Tensor<T>& root) {
  auto* tape = Tape<T>::current();
  if (tape == nullptr) throw ContractError("backward() called with no active tape");
  tape->backward(root);
}

}  // namespace twag::ad

#endif  // TWAG_AUTODIFF_TAPE_HPP
