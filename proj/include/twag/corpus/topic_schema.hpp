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

// Topic allocation files map curated groups of section labels to topics:
//
//   @domain company
//   history: History, Company history@20, Ownership@30
//   product: Products, Services
//   noise: /cookie/, /href/, /\[\d+\]/
//
// A label suffixed with @N is only allocated when the schema is loaded with
// n_t >= N (it sits among the top-N labels but not the top ones). The
// "noise" line lists regular expressions that identify NOISE paragraphs.

#ifndef TWAG_CORPUS_TOPIC_SCHEMA_HPP
#define TWAG_CORPUS_TOPIC_SCHEMA_HPP

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "twag/errors.hpp"
#include "twag/util/log.hpp"
#include "twag/util/strings.hpp"

namespace twag::corpus {

struct NoiseRule {
  std::string pattern;
  std::regex regex;

  explicit NoiseRule(std::string p)
      : pattern(std::move(p)), regex(pattern, std::regex::ECMAScript | std::regex::icase) {}
};

struct Topic {
  std::string name;
  std::vector<std::string> labels;  // normalized
};

inline const std::vector<std::string>& default_noise_patterns() {
  static const std::vector<std::string> patterns = {"cookie", "href", R"(\[\s*\d+\s*\])"};
  return patterns;
}

/// A domain's topics plus the NOISE class. NOISE always takes the index
/// after the last real topic.
class TopicSchema {
 public:
  std::string domain;
  std::vector<Topic> topics;
  std::vector<NoiseRule> noise_rules;
  std::size_t label_budget = 20;  // n_t used when loading

  std::size_t topic_count() const { return topics.size(); }
  std::size_t noise_index() const { return topics.size(); }
  std::size_t class_count() const { return topics.size() + 1; }

  std::string class_name(std::size_t index) const {
    return index == noise_index() ? std::string("NOISE") : topics.at(index).name;
  }

  std::optional<std::size_t> topic_of(std::string_view label) const {
    const std::string key = normalize_label(label);
    for (std::size_t i = 0; i < topics.size(); ++i) {
      for (const auto& l : topics[i].labels) {
        if (l == key) return i;
      }
    }
    return std::nullopt;
  }

  bool is_noise(std::string_view text) const {
    const std::string s(text);
    for (const auto& rule : noise_rules) {
      if (std::regex_search(s, rule.regex)) return true;
    }
    return false;
  }

  std::size_t label_count() const {
    std::size_t n = 0;
    for (const auto& t : topics) n += t.labels.size();
    return n;
  }
};

namespace detail {

inline std::vector<std::string> parse_regex_list(std::string_view body, const std::string& source,
                                                 std::size_t line_no) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < body.size()) {
    const char c = body[i];
    if (c == ' ' || c == '\t' || c == ',') {
      ++i;
      continue;
    }
    if (c != '/') throw ParseError(source, line_no, "noise patterns must be written as /regex/");
    std::string pattern;
    ++i;
    bool closed = false;
    while (i < body.size()) {
      if (body[i] == '\\' && i + 1 < body.size() && body[i + 1] == '/') {
        pattern += '/';
        i += 2;
      } else if (body[i] == '/') {
        closed = true;
        ++i;
        break;
      } else {
        pattern += body[i++];
      }
    }
    if (!closed) throw ParseError(source, line_no, "unterminated noise pattern");
    out.push_back(pattern);
  }
  return out;
}

}  // namespace detail

/// Parses an allocation file. Labels tagged @N with N > n_t are skipped.
/// A label allocated to two topics is a ValidationError naming the label.
inline TopicSchema parse_topic_schema(std::istream& in, std::size_t n_t = 20,
                                      const std::string& source = "<schema>") {
  TopicSchema schema;
  schema.label_budget = n_t;
  std::map<std::string, std::string> owner;  // label -> topic
  std::set<std::string> topic_names;
  bool saw_noise = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    if (text.starts_with("@domain")) {
      schema.domain = std::string(trim(text.substr(7)));
      continue;
    }
    const std::size_t colon = text.find(':');
    if (colon == std::string_view::npos) {
      throw ParseError(source, line_no, "expected 'topic: label, label, ...'");
    }
    const std::string name(trim(text.substr(0, colon)));
    const std::string_view body = trim(text.substr(colon + 1));
    if (name.empty()) throw ParseError(source, line_no, "empty topic name");
    if (to_lower(name) == "noise") {
      for (auto& p : detail::parse_regex_list(body, source, line_no)) {
        try {
          schema.noise_rules.emplace_back(p);
        } catch (const std::regex_error& e) {
          throw ParseError(source, line_no, "bad noise pattern /" + p + "/: " + e.what());
        }
      }
      saw_noise = true;
      continue;
    }
    if (!topic_names.insert(to_lower(name)).second) {
      throw ValidationError("topic '" + name + "' is defined twice in " + source);
    }
    Topic topic{name, {}};
    for (const auto& raw : split(body, ",")) {
      std::string_view entry = trim(raw);
      if (entry.empty()) continue;
      std::size_t tier = 0;
      if (const auto at = entry.rfind('@'); at != std::string_view::npos) {
        const std::string digits(trim(entry.substr(at + 1)));
        try {
          tier = std::stoul(digits);
        } catch (const std::exception&) {
          throw ParseError(source, line_no, "bad label tier '" + digits + "'");
        }
        entry = trim(entry.substr(0, at));
      }
      const std::string label = normalize_label(entry);
      if (auto [it, inserted] = owner.emplace(label, name); !inserted) {
        throw ValidationError("section label '" + label + "' is allocated to both '" +
                              it->second + "' and '" + name + "'");
      }
      if (tier <= n_t) topic.labels.push_back(label);
    }
    schema.topics.push_back(std::move(topic));
  }
  if (!saw_noise) {
    for (const auto& p : default_noise_patterns()) schema.noise_rules.emplace_back(p);
  }
  if (schema.topics.empty()) throw ValidationError(source + " defines no topics");
  for (const auto& t : schema.topics) {
    if (t.labels.empty()) log_warning("topic '" + t.name + "' has no labels at n_t = " + std::to_string(n_t));
  }
  return schema;
}

inline TopicSchema load_topic_schema(const std::string& path, std::size_t n_t = 20) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read topic schema " + path);
  TopicSchema schema = parse_topic_schema(in, n_t, path);
  if (schema.domain.empty()) schema.domain = std::filesystem::path(path).stem().string();
  return schema;
}

/// Drops allocated labels that are not among the `n_t` most frequent labels
/// of `ranked_labels` (most frequent first), warning for each. Returns the
/// dropped labels.
inline std::vector<std::string> restrict_to_top_labels(TopicSchema& schema,
                                                       const std::vector<std::string>& ranked_labels,
                                                       std::size_t n_t) {
  std::set<std::string> top;
  for (std::size_t i = 0; i < ranked_labels.size() && i < n_t; ++i)
    top.insert(normalize_label(ranked_labels[i]));
  std::vector<std::string> dropped;
  for (auto& topic : schema.topics) {
    std::vector<std::string> kept;
    for (auto& label : topic.labels) {
      if (top.count(label)) {
        kept.push_back(label);
      } else {
        log_warning("label '" + label + "' is outside the top " + std::to_string(n_t) +
                    " labels; ignored");
        dropped.push_back(label);
      }
    }
    topic.labels = std::move(kept);
  }
  return dropped;
}

}  // namespace twag::corpus

#endif  // TWAG_CORPUS_TOPIC_SCHEMA_HPP
