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

#ifndef TWAG_CORPUS_TOKENIZER_HPP
#define TWAG_CORPUS_TOKENIZER_HPP

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "twag/util/strings.hpp"

namespace twag::corpus {

/// Lowercases and splits on whitespace; every ASCII punctuation character is
/// its own token. Bytes >= 0x80 are word characters, so UTF-8 text survives
/// intact.
inline std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) tokens.push_back(to_lower(current));
    current.clear();
  };
  for (char c : text) {
    const auto u = static_cast<unsigned char>(c);
    if (u < 0x80 && std::isspace(u)) {
      flush();
    } else if (u < 0x80 && std::ispunct(u)) {
      flush();
      tokens.emplace_back(1, c);
    } else {
      current += c;
    }
  }
  flush();
  return tokens;
}

}  // namespace twag::corpus

#endif  // TWAG_CORPUS_TOKENIZER_HPP
