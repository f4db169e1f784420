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

#ifndef TWAG_CORPUS_VOCABULARY_HPP
#define TWAG_CORPUS_VOCABULARY_HPP

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "twag/errors.hpp"

namespace twag::corpus {

/// Token <-> id bijection with four reserved ids.
class Vocabulary {
 public:
  static constexpr int kPad = 0;
  static constexpr int kUnk = 1;
  static constexpr int kBos = 2;
  static constexpr int kEos = 3;
  static constexpr std::size_t kReserved = 4;

  static constexpr std::string_view kPadToken = "<pad>";
  static constexpr std::string_view kUnkToken = "<unk>";
  static constexpr std::string_view kBosToken = "<bos>";
  static constexpr std::string_view kEosToken = "<eos>";

  Vocabulary() {
    for (auto t : {kPadToken, kUnkToken, kBosToken, kEosToken}) insert(std::string(t));
  }

  std::size_t size() const { return tokens_.size(); }

  bool contains(std::string_view token) const { return index_.count(std::string(token)) > 0; }

  int id(std::string_view token) const {
    auto it = index_.find(std::string(token));
    return it == index_.end() ? kUnk : it->second;
  }

  const std::string& token(int id) const { return tokens_.at(static_cast<std::size_t>(id)); }

  const std::vector<std::string>& tokens() const { return tokens_; }

  std::vector<int> encode(const std::vector<std::string>& tokens) const {
    std::vector<int> ids;
    ids.reserve(tokens.size());
    for (const auto& t : tokens) ids.push_back(id(t));
    return ids;
  }

  std::vector<std::string> decode(const std::vector<int>& ids) const {
    std::vector<std::string> out;
    out.reserve(ids.size());
    for (int i : ids) out.push_back(token(i));
    return out;
  }

  // Appends a token if absent; returns its id.
  int insert(std::string token) {
    auto it = index_.find(token);
    if (it != index_.end()) return it->second;
    const int id = static_cast<int>(tokens_.size());
    index_.emplace(token, id);
    tokens_.push_back(std::move(token));
    return id;
  }

  // One token per line, in id order.
  void write(std::ostream& out) const {
    for (const auto& t : tokens_) out << t << '\n';
  }

  static Vocabulary read(std::istream& in, const std::string& source = "<vocab>") {
    Vocabulary vocab;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line_no <= kReserved) {
        if (line != vocab.tokens_[line_no - 1]) {
          throw ParseError(source, line_no,
                           "expected reserved token " + vocab.tokens_[line_no - 1] + ", got '" +
                               line + "'");
        }
        continue;
      }
      if (line.empty()) throw ParseError(source, line_no, "empty token");
      if (vocab.contains(line)) throw ParseError(source, line_no, "duplicate token '" + line + "'");
      vocab.insert(line);
    }
    if (line_no < kReserved) throw ParseError(source, line_no, "truncated vocabulary");
    return vocab;
  }

  void save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write vocabulary " + path);
    write(out);
  }

  static Vocabulary load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read vocabulary " + path);
    return read(in, path);
  }

  bool operator==(const Vocabulary& other) const { return tokens_ == other.tokens_; }

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, int> index_;
};

/// Keeps the most frequent tokens up to `cap` total entries (reserved ids
/// included). Equal counts are ordered lexicographically.
inline Vocabulary build_vocabulary(const std::vector<std::vector<std::string>>& corpus,
                                   std::size_t cap = 50000) {
  if (cap < Vocabulary::kReserved + 1) {
    throw ValidationError("vocabulary cap must be at least 5, got " + std::to_string(cap));
  }
  std::map<std::string, std::size_t> counts;
  for (const auto& seq : corpus)
    for (const auto& t : seq) ++counts[t];
  Vocabulary reserved;
  std::vector<std::pair<std::string, std::size_t>> ranked;
  for (auto& [token, count] : counts) {
    if (!reserved.contains(token)) ranked.emplace_back(token, count);
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  Vocabulary vocab;
  const std::size_t keep = std::min(ranked.size(), cap - Vocabulary::kReserved);
  for (std::size_t i = 0; i < keep; ++i) vocab.insert(ranked[i].first);
  return vocab;
}

}  // namespace twag::corpus

#endif  // TWAG_CORPUS_VOCABULARY_HPP
