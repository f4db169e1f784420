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

// Reader for section-structured article dumps in a small subset of wikitext:
//
//   = Arctic fox =
//   Lead text (ignored).
//   == Taxonomy ==
//   First paragraph of the section.
//
//   Second paragraph, separated by a blank line.
//   === Subsection ===      (folded into the enclosing section)
//
// Level-1 headings start an article, level-2 headings start a labelled
// section. Templates, infoboxes and other MediaWiki constructs are not
// interpreted beyond what strip_markup() removes.

#ifndef TWAG_CORPUS_WIKI_ARTICLE_HPP
#define TWAG_CORPUS_WIKI_ARTICLE_HPP

#include <cstddef>
#include <fstream>
#include <istream>
#include <map>
#include <regex>
#include <string>
#include <string_view>
#include <vector>

#include "twag/errors.hpp"
#include "twag/util/strings.hpp"

namespace twag::corpus {

struct Section {
  std::string label;
  std::string content;

  bool operator==(const Section&) const = default;
};

struct RawArticle {
  std::string title;
  std::vector<Section> sections;

  bool operator==(const RawArticle&) const = default;
};

namespace detail {

// Returns the heading level and text when `line` is "== text ==" style.
inline std::size_t heading_level(std::string_view line, std::string& text) {
  line = trim(line);
  std::size_t lead = 0;
  while (lead < line.size() && line[lead] == '=') ++lead;
  std::size_t tail = 0;
  while (tail < line.size() - lead && line[line.size() - 1 - tail] == '=') ++tail;
  if (lead == 0 || lead != tail || line.size() <= 2 * lead) return 0;
  text = std::string(trim(line.substr(lead, line.size() - 2 * lead)));
  return lead;
}

// Removes balanced `open ... close` spans; when `keep` is set the span is
// passed to it and its return value is substituted.
template <typename Keep>
std::string replace_balanced(std::string_view text, std::string_view open, std::string_view close,
                             Keep keep) {
  std::string out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text.substr(i, open.size()) != open) {
      out += text[i++];
      continue;
    }
    std::size_t depth = 0;
    std::size_t j = i;
    while (j < text.size()) {
      if (text.substr(j, open.size()) == open) {
        ++depth;
        j += open.size();
      } else if (text.substr(j, close.size()) == close) {
        --depth;
        j += close.size();
        if (depth == 0) break;
      } else {
        ++j;
      }
    }
    if (depth != 0) {  // unbalanced: drop the rest of the opener only
      i += open.size();
      continue;
    }
    out += keep(text.substr(i + open.size(), j - i - open.size() - close.size()));
    i = j;
  }
  return out;
}

}  // namespace detail

/// Strips hyperlinks, graphics and residual markup, keeping link text.
inline std::string strip_markup(std::string_view text) {
  static const std::regex ref_block(R"(<ref[^>]*?/>|<ref[^>]*>[\s\S]*?</ref>)",
                                    std::regex::icase);
  static const std::regex ext_link(R"(\[(?:https?|ftp)://[^\s\]]+\s*([^\]]*)\])");
  static const std::regex bare_url(R"((?:https?|ftp)://\S+|www\.\S+)");
  static const std::regex tag(R"(<[^>]*>)");
  static const std::regex emphasis(R"('{2,})");

  std::string s = std::regex_replace(std::string(text), ref_block, " ");
  s = detail::replace_balanced(s, "{{", "}}", [](std::string_view) { return std::string(" "); });
  s = detail::replace_balanced(s, "[[", "]]", [](std::string_view inner) {
    const std::string lower = to_lower(inner.substr(0, 6));
    if (lower.starts_with("file:") || lower.starts_with("image:")) return std::string(" ");
    const std::size_t bar = inner.rfind('|');
    return std::string(bar == std::string_view::npos ? inner : inner.substr(bar + 1));
  });
  s = std::regex_replace(s, ext_link, "$1");
  s = std::regex_replace(s, bare_url, " ");
  s = std::regex_replace(s, tag, " ");
  s = std::regex_replace(s, emphasis, "");
  return s;
}

/// Blank-line separated paragraphs, trimmed; empty ones are dropped.
inline std::vector<std::string> split_paragraphs(std::string_view content) {
  std::vector<std::string> out;
  std::string current;
  auto flush = [&] {
    const auto t = trim(current);
    if (!t.empty()) out.emplace_back(t);
    current.clear();
  };
  for (const auto& line : split(content, "\n")) {
    if (trim(line).empty()) {
      flush();
    } else {
      if (!current.empty()) current += '\n';
      current += line;
    }
  }
  flush();
  return out;
}

inline std::vector<RawArticle> parse_articles(std::istream& in,
                                              const std::string& source = "<articles>") {
  std::vector<RawArticle> articles;
  std::string line;
  std::size_t line_no = 0;
  bool in_section = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::string heading;
    const std::size_t level = detail::heading_level(line, heading);
    if (level == 1) {
      if (heading.empty()) throw ParseError(source, line_no, "empty article title");
      articles.push_back(RawArticle{heading, {}});
      in_section = false;
      continue;
    }
    if (articles.empty()) {
      if (trim(line).empty()) continue;
      throw ParseError(source, line_no, "text before the first article title");
    }
    if (level == 2) {
      if (heading.empty()) throw ParseError(source, line_no, "empty section label");
      articles.back().sections.push_back(Section{heading, ""});
      in_section = true;
      continue;
    }
    if (!in_section) continue;  // lead text
    std::string& content = articles.back().sections.back().content;
    if (level > 2) {
      content += "\n\n";  // a subsection heading closes the paragraph
      continue;
    }
    content += line;
    content += '\n';
  }
  return articles;
}

inline std::vector<RawArticle> load_articles(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read articles " + path);
  return parse_articles(in, path);
}

}  // namespace twag::corpus

#endif  // TWAG_CORPUS_WIKI_ARTICLE_HPP
