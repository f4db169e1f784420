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

// Summarization records, one per line, UTF-8, three tab-separated fields:
//
//   title <TAB> paragraph ⟨p⟩ paragraph ⟨p⟩ ... <TAB> abstract text
//
// The abstract is split into sentences by the rule-based splitter unless it
// carries explicit ⟨s⟩ sentence separators (which the writer always emits, so
// tokenized datasets round-trip exactly).

#ifndef TWAG_CORPUS_SUMMARIZATION_DATASET_HPP
#define TWAG_CORPUS_SUMMARIZATION_DATASET_HPP

#include <cstddef>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "twag/corpus/sentence_splitter.hpp"
#include "twag/corpus/tokenizer.hpp"
#include "twag/corpus/vocabulary.hpp"
#include "twag/errors.hpp"
#include "twag/util/log.hpp"
#include "twag/util/strings.hpp"

namespace twag::corpus {

inline constexpr std::string_view kParagraphSeparator = "\xE2\x9F\xA8p\xE2\x9F\xA9";  // ⟨p⟩
inline constexpr std::string_view kSentenceSeparator = "\xE2\x9F\xA8s\xE2\x9F\xA9";   // ⟨s⟩

struct SummarizationRecord {
  std::string title;
  std::vector<std::string> paragraphs;  // raw text
  std::string abstract;                 // raw text
};

/// Surface tokens plus their vocabulary ids (ids stay empty until encoded).
/// Out-of-vocabulary tokens encode to UNK; the surface form is kept so the
/// copy mechanism can still emit it.
struct TokenizedText {
  std::vector<std::string> tokens;
  std::vector<int> ids;

  bool operator==(const TokenizedText&) const = default;
};

struct SummarizationExample {
  std::string title;
  std::vector<TokenizedText> paragraphs;
  std::vector<TokenizedText> abstract;  // one entry per sentence

  bool operator==(const SummarizationExample&) const = default;
};

/// Parses records. A line without exactly three fields is a ParseError with
/// its line number; records with an empty abstract are skipped with a warning.
inline std::vector<SummarizationRecord> read_summarization_records(
    std::istream& in, const std::string& source = "<dataset>") {
  std::vector<SummarizationRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    const auto fields = split(line, "\t");
    if (fields.size() != 3) {
      throw ParseError(source, line_no,
                       "expected 3 tab-separated fields, got " + std::to_string(fields.size()));
    }
    SummarizationRecord record;
    record.title = std::string(trim(fields[0]));
    for (const auto& p : split(fields[1], kParagraphSeparator)) {
      const auto t = trim(p);
      if (!t.empty()) record.paragraphs.emplace_back(t);
    }
    record.abstract = std::string(trim(fields[2]));
    if (record.abstract.empty()) {
      log_warning(source + ":" + std::to_string(line_no) + ": empty abstract, record skipped");
      continue;
    }
    if (record.paragraphs.empty()) {
      log_warning(source + ":" + std::to_string(line_no) + ": no input paragraphs, record skipped");
      continue;
    }
    records.push_back(std::move(record));
  }
  return records;
}

inline std::vector<std::string> abstract_sentences(std::string_view abstract) {
  if (abstract.find(kSentenceSeparator) != std::string_view::npos) {
    std::vector<std::string> out;
    for (const auto& s : split(abstract, kSentenceSeparator)) {
      const auto t = trim(s);
      if (!t.empty()) out.emplace_back(t);
    }
    return out;
  }
  return split_sentences(abstract);
}

inline void encode_text(TokenizedText& text, const Vocabulary& vocab) {
  text.ids = vocab.encode(text.tokens);
}

inline void encode_example(SummarizationExample& example, const Vocabulary& vocab) {
  for (auto& p : example.paragraphs) encode_text(p, vocab);
  for (auto& s : example.abstract) encode_text(s, vocab);
}

inline SummarizationExample tokenize_record(const SummarizationRecord& record) {
  SummarizationExample ex;
  ex.title = record.title;
  for (const auto& p : record.paragraphs) {
    auto tokens = tokenize(p);
    if (!tokens.empty()) ex.paragraphs.push_back({std::move(tokens), {}});
  }
  for (const auto& s : abstract_sentences(record.abstract)) {
    auto tokens = tokenize(s);
    if (!tokens.empty()) ex.abstract.push_back({std::move(tokens), {}});
  }
  return ex;
}

inline std::vector<SummarizationExample> read_summarization_dataset(
    std::istream& in, const Vocabulary* vocab = nullptr, const std::string& source = "<dataset>") {
  std::vector<SummarizationExample> out;
  for (const auto& record : read_summarization_records(in, source)) {
    SummarizationExample ex = tokenize_record(record);
    if (ex.paragraphs.empty() || ex.abstract.empty()) {
      log_warning(source + ": record '" + record.title + "' has no tokens, skipped");
      continue;
    }
    if (vocab != nullptr) encode_example(ex, *vocab);
    out.push_back(std::move(ex));
  }
  return out;
}

inline std::vector<SummarizationExample> load_summarization_dataset(
    const std::string& path, const Vocabulary* vocab = nullptr) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read dataset " + path);
  return read_summarization_dataset(in, vocab, path);
}

inline void write_summarization_dataset(std::ostream& out,
                                        const std::vector<SummarizationExample>& examples) {
  const std::string para_sep = " " + std::string(kParagraphSeparator) + " ";
  const std::string sent_sep = " " + std::string(kSentenceSeparator) + " ";
  for (const auto& ex : examples) {
    std::vector<std::string> paragraphs, sentences;
    for (const auto& p : ex.paragraphs) paragraphs.push_back(join(p.tokens, " "));
    for (const auto& s : ex.abstract) sentences.push_back(join(s.tokens, " "));
    out << ex.title << '\t' << join(paragraphs, para_sep) << '\t' << join(sentences, sent_sep)
        << '\n';
  }
}

inline void save_summarization_dataset(const std::string& path,
                                       const std::vector<SummarizationExample>& examples) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write dataset " + path);
  write_summarization_dataset(out, examples);
}

}  // namespace twag::corpus

#endif  // TWAG_CORPUS_SUMMARIZATION_DATASET_HPP
