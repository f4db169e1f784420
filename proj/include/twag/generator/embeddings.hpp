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


#ifndef TWAG_GENERATOR_EMBEDDINGS_HPP
#define TWAG_GENERATOR_EMBEDDINGS_HPP

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "twag/autodiff/optimizer.hpp"
#include "twag/autodiff/tensor.hpp"
#include "twag/corpus/vocabulary.hpp"
#include "twag/errors.hpp"
#include "twag/util/random.hpp"

namespace twag::generator {

using PretrainedVectors = std::unordered_map<std::string, std::vector<double>>;

/// Reads "word v1 ... vD" lines. Every line must carry exactly `dim` values.
inline PretrainedVectors read_pretrained_vectors(std::istream& in, std::size_t dim,
                                                 const std::string& source = "<vectors>") {
  PretrainedVectors out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string word;
    if (!(fields >> word)) continue;
    std::vector<double> v;
    std::string tok;
    while (fields >> tok) {
      try {
        std::size_t used = 0;
        v.push_back(std::stod(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw ParseError(source, line_no, "bad vector component '" + tok + "'");
      }
    }
    if (v.size() != dim) {
      throw ParseError(source, line_no, "expected " + std::to_string(dim) + " components, got " +
                                            std::to_string(v.size()));
    }
    out.emplace(word, std::move(v));
  }
  return out;
}

inline PretrainedVectors load_pretrained_vectors(const std::string& path, std::size_t dim) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read pretrained vectors " + path);
  return read_pretrained_vectors(in, dim, path);
}

/// Embedding table V x dim. Without vectors every row is uniform(-range,
/// range). With vectors, words found get their vector; a word not found gets
/// the mean of the vectors among the 5 tokens before and 5 after its first
/// occurrence in `corpus_tokens`, and stays uniform when none have one.
template <typename T>
ad::Tensor<T> init_embeddings(const corpus::Vocabulary& vocab, std::size_t dim, Rng& rng,
                              const PretrainedVectors* vectors = nullptr,
                              const std::vector<std::string>& corpus_tokens = {},
                              double range = 0.1) {
  auto table = ad::Tensor<T>::zeros({vocab.size(), dim}, true);
  ad::init_uniform(table, rng, range);
  if (vectors == nullptr) return table;
  std::unordered_map<std::string, std::size_t> first;
  for (std::size_t i = 0; i < corpus_tokens.size(); ++i) first.emplace(corpus_tokens[i], i);
  auto values = table.values();
  for (std::size_t id = corpus::Vocabulary::kEos + 1; id < vocab.size(); ++id) {
    const std::string& word = vocab.token(static_cast<int>(id));
    T* row = values.data() + id * dim;
    if (auto it = vectors->find(word); it != vectors->end()) {
      for (std::size_t j = 0; j < dim; ++j) row[j] = static_cast<T>(it->second[j]);
      continue;
    }
    const auto pos = first.find(word);
    if (pos == first.end()) continue;
    const std::size_t at = pos->second;
    std::vector<double> sum(dim, 0.0);
    std::size_t n = 0;
    const std::size_t lo = at >= 5 ? at - 5 : 0;
    const std::size_t hi = std::min(corpus_tokens.size(), at + 6);
    for (std::size_t i = lo; i < hi; ++i) {
      if (i == at) continue;
      const auto ctx = vectors->find(corpus_tokens[i]);
      if (ctx == vectors->end()) continue;
      for (std::size_t j = 0; j < dim; ++j) sum[j] += ctx->second[j];
      ++n;
    }
    if (n == 0) continue;
    for (std::size_t j = 0; j < dim; ++j) row[j] = static_cast<T>(sum[j] / static_cast<double>(n));
  }
  return table;
}

}  // namespace twag::generator

#endif  // TWAG_GENERATOR_EMBEDDINGS_HPP
