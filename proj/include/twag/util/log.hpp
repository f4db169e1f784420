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

#ifndef TWAG_UTIL_LOG_HPP
#define TWAG_UTIL_LOG_HPP

#include <functional>
#include <iostream>
#include <string>
#include <string_view>
#include <utility>

namespace twag {

using LogSink = std::function<void(std::string_view level, std::string_view message)>;

inline LogSink& log_sink() {
  static LogSink sink = [](std::string_view level, std::string_view message) {
    std::cerr << "[" << level << "] " << message << '\n';
  };
  return sink;
}

inline void log_warning(std::string_view message) { log_sink()("warning", message); }
inline void log_info(std::string_view message) { log_sink()("info", message); }

// Redirects log output for the lifetime of the object.
class ScopedLogSink {
 public:
  explicit ScopedLogSink(LogSink sink) : saved_(std::exchange(log_sink(), std::move(sink))) {}
  ~ScopedLogSink() { log_sink() = std::move(saved_); }

  ScopedLogSink(const ScopedLogSink&) = delete;
  ScopedLogSink& operator=(const ScopedLogSink&) = delete;

 private:
  LogSink saved_;
};

}  // namespace twag

#endif  // TWAG_UTIL_LOG_HPP
