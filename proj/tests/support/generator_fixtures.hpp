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


// Small random generator models and topic groups shared by the generator
// tests and the acceptance suite.

#ifndef TWAG_TESTS_SUPPORT_GENERATOR_FIXTURES_HPP
#define TWAG_TESTS_SUPPORT_GENERATOR_FIXTURES_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "twag/corpus/summarization_dataset.hpp"
#include "twag/corpus/vocabulary.hpp"
#include "twag/generator/model.hpp"
#include "twag/generator/ttg.hpp"
#include "twag/util/random.hpp"

namespace twag::testing {

using corpus::TokenizedText;
using generator::GeneratorModel;
using generator::GeneratorShape;
using generator::TopicGroup;
using generator::TtgSet;

// Every parameter, biases included, uniform in [-range, range].
template <typename T>
GeneratorModel<T> random_model(const GeneratorShape& shape, std::uint64_t seed, double range = 0.5) {
  GeneratorModel<T> m(shape);
  Rng rng(seed);
  for (auto& p : m.parameters()) ad::init_uniform(p.tensor, rng, range);
  return m;
}

inline const GeneratorShape kTiny{.vocab_size = 20, .embed_dim = 6, .hidden = 8, .topic_count = 3};

inline TopicGroup group_of(std::vector<int> ids) {
  TopicGroup g;
  for (int id : ids) {
    g.ids.push_back(id);
    g.tokens.push_back(id == corpus::Vocabulary::kUnk ? "zorblax" : "w" + std::to_string(id));
  }
  return g;
}

inline TtgSet random_ttgs(Rng& rng, std::size_t topics, std::size_t vocab, bool allow_empty = true) {
  TtgSet ttgs;
  for (std::size_t k = 0; k < topics; ++k) {
    std::vector<int> ids;
    const std::size_t n = (allow_empty ? 0 : 1) + rng.below(5);
    for (std::size_t i = 0; i < n; ++i)
      ids.push_back(rng.below(6) == 0 ? corpus::Vocabulary::kUnk
                                      : static_cast<int>(4 + rng.below(vocab - 4)));
    ttgs.groups.push_back(group_of(ids));
  }
  if (ttgs.token_count() == 0) ttgs.groups[0] = group_of({5});
  return ttgs;
}

inline TokenizedText sentence_of(std::vector<int> ids, const std::vector<std::string>& tokens = {}) {
  TokenizedText s{tokens, ids};
  if (s.tokens.empty())
    for (int id : ids) s.tokens.push_back("w" + std::to_string(id));
  return s;
}

}  // namespace twag::testing

#endif  // TWAG_TESTS_SUPPORT_GENERATOR_FIXTURES_HPP
