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

#ifndef TWAG_CORPUS_LABEL_STATS_HPP
#define TWAG_CORPUS_LABEL_STATS_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "twag/corpus/wiki_article.hpp"
#include "twag/util/strings.hpp"

namespace twag::corpus {

struct LabelFrequency {
  std::size_t rank;
  std::string label;
  std::size_t count;

  bool operator==(const LabelFrequency&) const = default;
};

// Section-label rank/frequency table, most frequent first (ties by label).
inline std::vector<LabelFrequency> label_frequency_stats(const std::vector<RawArticle>& articles) {
  std::map<std::string, std::size_t> counts;
  for (const auto& a : articles)
    for (const auto& s : a.sections) ++counts[normalize_label(s.label)];
  std::vector<LabelFrequency> rows;
  for (const auto& [label, count] : counts) rows.push_back({0, label, count});
  std::stable_sort(rows.begin(), rows.end(),
                   [](const auto& a, const auto& b) { return a.count > b.count; });
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i].rank = i + 1;
  return rows;
}

inline void write_rank_frequency(std::ostream& out, const std::vector<LabelFrequency>& rows) {
  out << "rank\tlabel\tcount\n";
  for (const auto& r : rows) out << r.rank << '\t' << r.label << '\t' << r.count << '\n';
}

inline std::vector<std::string> ranked_labels(const std::vector<LabelFrequency>& rows) {
  std::vector<std::string> out;
  for (const auto& r : rows) out.push_back(r.label);
  return out;
}

}  // namespace twag::corpus

#endif  // TWAG_CORPUS_LABEL_STATS_HPP
