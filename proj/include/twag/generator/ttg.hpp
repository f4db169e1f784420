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


#ifndef TWAG_GENERATOR_TTG_HPP
#define TWAG_GENERATOR_TTG_HPP

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "twag/corpus/summarization_dataset.hpp"
#include "twag/corpus/vocabulary.hpp"
#include "twag/errors.hpp"

namespace twag::generator {

/// Tokens of all paragraphs assigned to one topic, in input order.
struct TopicGroup {
  std::vector<int> ids;
  std::vector<std::string> tokens;

  std::size_t size() const { return ids.size(); }
  bool empty() const { return ids.empty(); }
  bool operator==(const TopicGroup&) const = default;
};

/// One group per real topic. Index `groups.size()` in a topic assignment
/// denotes NOISE.
struct TtgSet {
  std::vector<TopicGroup> groups;

  std::size_t topic_count() const { return groups.size(); }
  std::size_t token_count() const {
    std::size_t n = 0;
    for (const auto& g : groups) n += g.size();
    return n;
  }
  bool operator==(const TtgSet&) const = default;
};

/// Concatenates paragraphs per topic, drops NOISE (z == topic_count) and
/// truncates each group to `cap` tokens.
inline TtgSet group_paragraphs(const std::vector<corpus::TokenizedText>& paragraphs,
                               const std::vector<std::size_t>& topics, std::size_t topic_count,
                               std::size_t cap) {
  if (paragraphs.size() != topics.size()) {
    throw ContractError("group_paragraphs: " + std::to_string(paragraphs.size()) +
                        " paragraphs but " + std::to_string(topics.size()) + " topics");
  }
  TtgSet out;
  out.groups.resize(topic_count);
  for (std::size_t i = 0; i < paragraphs.size(); ++i) {
    const std::size_t z = topics[i];
    if (z == topic_count) continue;
    if (z > topic_count) {
      throw ContractError("group_paragraphs: topic " + std::to_string(z) + " outside " +
                          std::to_string(topic_count) + " topics plus NOISE");
    }
    const auto& p = paragraphs[i];
    if (p.ids.size() != p.tokens.size()) {
      throw ContractError("group_paragraphs: paragraph " + std::to_string(i) + " is not encoded");
    }
    auto& g = out.groups[z];
    const std::size_t take = std::min(p.ids.size(), cap - std::min(cap, g.size()));
    g.ids.insert(g.ids.end(), p.ids.begin(), p.ids.begin() + static_cast<std::ptrdiff_t>(take));
    g.tokens.insert(g.tokens.end(), p.tokens.begin(),
                    p.tokens.begin() + static_cast<std::ptrdiff_t>(take));
  }
  return out;
}

/// Extended ids for the concatenated source U: in-vocabulary tokens keep
/// their id, each distinct out-of-vocabulary surface form gets V + j.
struct SourceMap {
  std::size_t vocab_size = 0;
  std::vector<int> extended_ids;        // one per position of U
  std::vector<std::string> oov_tokens;  // surface form of id V + j

  std::size_t extended_size() const { return vocab_size + oov_tokens.size(); }

  int extended_id(const std::string& token, int vocab_id) const {
    if (vocab_id != corpus::Vocabulary::kUnk) return vocab_id;
    const auto it = std::find(oov_tokens.begin(), oov_tokens.end(), token);
    if (it == oov_tokens.end()) return corpus::Vocabulary::kUnk;
    return static_cast<int>(vocab_size + static_cast<std::size_t>(it - oov_tokens.begin()));
  }

  // Id fed back to the decoder: copied OOV tokens enter as UNK.
  int input_id(int extended) const {
    return static_cast<std::size_t>(extended) < vocab_size ? extended : corpus::Vocabulary::kUnk;
  }

  std::string surface(int extended, const corpus::Vocabulary& vocab) const {
    const auto e = static_cast<std::size_t>(extended);
    return e < vocab_size ? vocab.token(extended) : oov_tokens.at(e - vocab_size);
  }
};

inline SourceMap build_source_map(const TtgSet& ttgs, std::size_t vocab_size) {
  SourceMap map;
  map.vocab_size = vocab_size;
  for (const auto& g : ttgs.groups) {
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (g.ids[i] != corpus::Vocabulary::kUnk) {
        map.extended_ids.push_back(g.ids[i]);
        continue;
      }
      const auto it = std::find(map.oov_tokens.begin(), map.oov_tokens.end(), g.tokens[i]);
      const std::size_t j = static_cast<std::size_t>(it - map.oov_tokens.begin());
      if (it == map.oov_tokens.end()) map.oov_tokens.push_back(g.tokens[i]);
      map.extended_ids.push_back(static_cast<int>(vocab_size + j));
    }
  }
  return map;
}

}  // namespace twag::generator

#endif  // TWAG_GENERATOR_TTG_HPP
