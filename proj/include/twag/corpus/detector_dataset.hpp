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

#ifndef TWAG_CORPUS_DETECTOR_DATASET_HPP
#define TWAG_CORPUS_DETECTOR_DATASET_HPP

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "twag/corpus/summarization_dataset.hpp"
#include "twag/corpus/tokenizer.hpp"
#include "twag/corpus/topic_schema.hpp"
#include "twag/corpus/vocabulary.hpp"
#include "twag/corpus/wiki_article.hpp"
#include "twag/errors.hpp"
#include "twag/util/strings.hpp"

namespace twag::corpus {

struct TopicParagraphExample {
  std::size_t topic;
  std::vector<int> ids;

  bool operator==(const TopicParagraphExample&) const = default;
};

// A paragraph assigned to a topic, before vocabulary encoding. `index` counts
// paragraphs within the source document and keys the split.
struct LabeledParagraph {
  std::string title;
  std::size_t index;
  std::size_t topic;
  std::vector<std::string> tokens;

  bool operator==(const LabeledParagraph&) const = default;
};

enum class Split { kTrain, kValid, kTest };

/// 8:1:1 bucket from FNV-1a over "title#index", with the seed folded in as
/// eight trailing little-endian bytes.
inline Split split_of(const std::string& title, std::size_t index, std::uint64_t seed) {
  std::uint64_t h = fnv1a64(title + "#" + std::to_string(index));
  for (int i = 0; i < 8; ++i) {
    h ^= (seed >> (8 * i)) & 0xff;
    h *= 0x100000001b3ULL;
  }
  const std::uint64_t bucket = h % 10;
  if (bucket < 8) return Split::kTrain;
  return bucket == 8 ? Split::kValid : Split::kTest;
}

/// Label-paragraph pairs whose label belongs to a schema topic, plus NOISE
/// paragraphs matched by the schema's regexes (NOISE wins over the label).
/// Noise is matched on the raw text; tokens come from the markup-stripped
/// text. Unallocated labels contribute nothing.
inline std::vector<LabeledParagraph> collect_topic_paragraphs(
    const std::vector<RawArticle>& articles, const TopicSchema& schema) {
  std::vector<LabeledParagraph> out;
  for (const auto& article : articles) {
    std::size_t index = 0;
    for (const auto& section : article.sections) {
      const auto topic = schema.topic_of(section.label);
      for (const auto& raw : split_paragraphs(section.content)) {
        const std::size_t this_index = index++;
        std::size_t assigned;
        if (schema.is_noise(raw)) {
          assigned = schema.noise_index();
        } else if (topic) {
          assigned = *topic;
        } else {
          continue;
        }
        auto tokens = tokenize(strip_markup(raw));
        if (tokens.empty()) continue;
        out.push_back({article.title, this_index, assigned, std::move(tokens)});
      }
    }
  }
  return out;
}

/// NOISE examples mined from web-sourced input paragraphs.
inline std::vector<LabeledParagraph> collect_noise_paragraphs(
    const std::vector<SummarizationRecord>& records, const TopicSchema& schema) {
  std::vector<LabeledParagraph> out;
  for (const auto& record : records) {
    for (std::size_t i = 0; i < record.paragraphs.size(); ++i) {
      if (!schema.is_noise(record.paragraphs[i])) continue;
      auto tokens = tokenize(strip_markup(record.paragraphs[i]));
      if (tokens.empty()) continue;
      out.push_back({"web:" + record.title, i, schema.noise_index(), std::move(tokens)});
    }
  }
  return out;
}

struct DetectorDataset {
  std::vector<TopicParagraphExample> train;
  std::vector<TopicParagraphExample> valid;
  std::vector<TopicParagraphExample> test;

  bool operator==(const DetectorDataset&) const = default;
};

inline DetectorDataset build_detector_dataset(const std::vector<LabeledParagraph>& paragraphs,
                                              const Vocabulary& vocab, std::uint64_t seed) {
  DetectorDataset out;
  for (const auto& p : paragraphs) {
    TopicParagraphExample ex{p.topic, vocab.encode(p.tokens)};
    switch (split_of(p.title, p.index, seed)) {
      case Split::kTrain:
        out.train.push_back(std::move(ex));
        break;
      case Split::kValid:
        out.valid.push_back(std::move(ex));
        break;
      case Split::kTest:
        out.test.push_back(std::move(ex));
        break;
    }
  }
  return out;
}

inline void write_detector_examples(std::ostream& out,
                                    const std::vector<TopicParagraphExample>& examples) {
  for (const auto& ex : examples) {
    out << ex.topic << '\t';
    for (std::size_t i = 0; i < ex.ids.size(); ++i) {
      if (i) out << ' ';
      out << ex.ids[i];
    }
    out << '\n';
  }
}

/// Reads "topic <TAB> id id id" lines. `class_count`, when non-zero, bounds
/// the topic index; `vocab_size` likewise bounds ids.
inline std::vector<TopicParagraphExample> read_detector_examples(
    std::istream& in, const std::string& source = "<detector>", std::size_t class_count = 0,
    std::size_t vocab_size = 0) {
  std::vector<TopicParagraphExample> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) throw ParseError(source, line_no, "missing tab separator");
    TopicParagraphExample ex{};
    try {
      std::size_t used = 0;
      const std::string head = line.substr(0, tab);
      ex.topic = std::stoul(head, &used);
      if (used != head.size()) throw std::invalid_argument(head);
    } catch (const std::exception&) {
      throw ParseError(source, line_no, "bad topic index");
    }
    if (class_count && ex.topic >= class_count) {
      throw ParseError(source, line_no, "topic index " + std::to_string(ex.topic) + " >= " +
                                            std::to_string(class_count));
    }
    std::istringstream ids(line.substr(tab + 1));
    std::string tok;
    while (ids >> tok) {
      int id = 0;
      try {
        std::size_t used = 0;
        id = std::stoi(tok, &used);
        if (used != tok.size() || id < 0) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw ParseError(source, line_no, "bad token id '" + tok + "'");
      }
      if (vocab_size && static_cast<std::size_t>(id) >= vocab_size) {
        throw ParseError(source, line_no, "token id " + tok + " outside vocabulary");
      }
      ex.ids.push_back(id);
    }
    if (ex.ids.empty()) throw ParseError(source, line_no, "empty paragraph");
    out.push_back(std::move(ex));
  }
  return out;
}

inline void save_detector_examples(const std::string& path,
                                   const std::vector<TopicParagraphExample>& examples) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_detector_examples(out, examples);
}

inline std::vector<TopicParagraphExample> load_detector_examples(const std::string& path,
                                                                 std::size_t class_count = 0,
                                                                 std::size_t vocab_size = 0) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  return read_detector_examples(in, path, class_count, vocab_size);
}

}  // namespace twag::corpus

#endif  // TWAG_CORPUS_DETECTOR_DATASET_HPP
