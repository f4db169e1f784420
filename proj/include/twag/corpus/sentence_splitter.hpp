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

#ifndef TWAG_CORPUS_SENTENCE_SPLITTER_HPP
#define TWAG_CORPUS_SENTENCE_SPLITTER_HPP

#include <algorithm>
#include <array>
#include <cctype>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "twag/util/strings.hpp"

namespace twag::corpus {

struct SplitOptions {
  // Keep abbreviations ("Dr.", "etc.") and single-letter initials ("K.")
  // attached to the following text.
  bool abbreviation_guard = true;
  // Only split when the next sentence starts with an uppercase letter or a
  // digit. Disable for already-lowercased text.
  bool require_capital = true;
};

namespace detail {

inline bool is_abbreviation(std::string_view word) {
  static constexpr std::array<std::string_view, 32> kAbbreviations = {
      "mr",  "mrs", "ms",   "dr",  "prof", "st",  "jr",  "sr",  "vs",  "etc", "inc",
      "ltd", "co",  "corp", "no",  "gen",  "col", "lt",  "sgt", "mt",  "ft",  "approx",
      "e.g", "i.e", "u.s",  "u.k", "jan",  "feb", "aug", "sept", "oct", "nov"};
  const std::string lower = to_lower(word);
  return std::find(kAbbreviations.begin(), kAbbreviations.end(), lower) != kAbbreviations.end();
}

inline bool is_initial(std::string_view word) {
  return word.size() == 1 && std::isupper(static_cast<unsigned char>(word[0]));
}

inline bool is_terminal(char c) { return c == '.' || c == '!' || c == '?'; }
inline bool is_closer(char c) { return c == '"' || c == '\'' || c == ')' || c == ']'; }

}  // namespace detail

/// Rule-based splitter: a sentence ends at '.', '!' or '?' (plus any closing
/// quotes or brackets) followed by whitespace and, unless disabled, an
/// uppercase letter or digit. Sentences are trimmed substrings of the input,
/// so nothing but inter-sentence whitespace is lost.
inline std::vector<std::string> split_sentences(std::string_view text, SplitOptions options = {}) {
  std::vector<std::string> sentences;
  std::size_t start = 0;
  auto emit = [&](std::size_t end) {
    const std::string_view piece = trim(text.substr(start, end - start));
    if (!piece.empty()) sentences.emplace_back(piece);
    start = end;
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (!detail::is_terminal(text[i])) continue;
    std::size_t end = i + 1;
    while (end < text.size() && (detail::is_terminal(text[end]) || detail::is_closer(text[end])))
      ++end;
    if (end >= text.size() || !std::isspace(static_cast<unsigned char>(text[end]))) {
      i = end - 1;
      continue;
    }
    std::size_t next = end;
    while (next < text.size() && std::isspace(static_cast<unsigned char>(text[next]))) ++next;
    if (next >= text.size()) break;
    const auto first = static_cast<unsigned char>(text[next]);
    if (options.require_capital && !std::isupper(first) && !std::isdigit(first)) {
      i = end - 1;
      continue;
    }
    if (options.abbreviation_guard && text[i] == '.') {
      std::size_t w = i;
      while (w > start && !std::isspace(static_cast<unsigned char>(text[w - 1]))) --w;
      std::string_view word = text.substr(w, i - w);
      while (!word.empty() && (word.front() == '(' || word.front() == '"' || word.front() == '\''))
        word.remove_prefix(1);
      if (detail::is_abbreviation(word) || detail::is_initial(word)) {
        i = end - 1;
        continue;
      }
    }
    emit(end);
    i = end - 1;
  }
  emit(text.size());
  return sentences;
}

/// Pluggable splitter contract.
using SentenceSplitter = std::function<std::vector<std::string>(std::string_view)>;

inline SentenceSplitter rule_based_splitter(SplitOptions options = {}) {
  return [options](std::string_view text) { return split_sentences(text, options); };
}

}  // namespace twag::corpus

#endif  // TWAG_CORPUS_SENTENCE_SPLITTER_HPP
