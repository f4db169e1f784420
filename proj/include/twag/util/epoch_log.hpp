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


#ifndef TWAG_UTIL_EPOCH_LOG_HPP
#define TWAG_UTIL_EPOCH_LOG_HPP

#include <chrono>
#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

namespace twag {

struct EpochRecord {
  std::size_t epoch;
  double learning_rate;
  double train_loss;
  double valid_metric;
  double wall_seconds;
};

// Tab-separated, one row per epoch. `metric_name` heads the validation column
// (valid_accuracy for the detector, valid_loss for the generator).
inline void write_epoch_log(std::ostream& out, const std::vector<EpochRecord>& rows,
                            const std::string& metric_name) {
  out << "epoch\tlr\ttrain_loss\t" << metric_name << "\twall_seconds\n";
  for (const auto& r : rows) {
    out << r.epoch << '\t' << r.learning_rate << '\t' << r.train_loss << '\t' << r.valid_metric
        << '\t' << r.wall_seconds << '\n';
  }
}

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace twag

#endif  // TWAG_UTIL_EPOCH_LOG_HPP
