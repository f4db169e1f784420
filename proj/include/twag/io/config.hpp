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


// Run configuration as "key = value" lines; '#' starts a comment. Unknown
// keys and unparsable values are errors with their line number.

#ifndef TWAG_IO_CONFIG_HPP
#define TWAG_IO_CONFIG_HPP

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

#include "twag/errors.hpp"
#include "twag/util/strings.hpp"

namespace twag::io {

struct RunConfig {
  std::uint64_t seed = 42;

  // Corpus.
  std::size_t n_t = 20;
  std::size_t vocab_cap = 50000;
  std::string schema;
  std::string vocab_path;
  std::string detector_train;
  std::string detector_valid;
  std::string detector_test;
  std::string generator_train;
  std::string generator_valid;
  std::string pretrained_vectors;

  // Detector.
  std::size_t detector_embed_dim = 300;
  std::size_t detector_dim = 300;
  std::size_t detector_epochs = 4;
  double detector_lr = 3e-5;

  // Generator.
  std::size_t embed_dim = 300;
  std::size_t hidden = 512;
  std::size_t generator_epochs = 10;
  double generator_first_lr = 1e-4;
  double generator_lr = 1e-5;
  double stop_weight = 1.0;
  std::string detector_checkpoint;  // assigns topics for generator training

  // Decoding and evaluation.
  std::string topic_mode = "soft";
  std::size_t beam_size = 5;
  double stop_threshold = 0.5;
  std::size_t max_sentences = 10;
  std::size_t max_tokens = 60;
  std::size_t ttg_cap = 400;
  double dedup_threshold = 0.5;

  double init_range = 0.1;
};

namespace detail {

struct ConfigField {
  std::string key;
  std::function<void(RunConfig&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

template <typename V>
ConfigField field(std::string key, V RunConfig::*member) {
  return {key,
          [member, key](RunConfig& c, const std::string& text) {
            if constexpr (std::is_same_v<V, std::string>) {
              c.*member = text;
            } else {
              std::istringstream in(text);
              V v{};
              if constexpr (std::is_unsigned_v<V>) {
                if (!text.empty() && text[0] == '-') throw std::invalid_argument(key);
              }
              if (!(in >> v) || !(in >> std::ws).eof()) throw std::invalid_argument(key);
              c.*member = v;
            }
          },
          [member](const RunConfig& c) {
            std::ostringstream out;
            out << c.*member;
            return out.str();
          }};
}

inline const std::vector<ConfigField>& config_fields() {
  static const std::vector<ConfigField> fields{
      field("seed", &RunConfig::seed),
      field("n_t", &RunConfig::n_t),
      field("vocab_cap", &RunConfig::vocab_cap),
      field("schema", &RunConfig::schema),
      field("vocab_path", &RunConfig::vocab_path),
      field("detector_train", &RunConfig::detector_train),
      field("detector_valid", &RunConfig::detector_valid),
      field("detector_test", &RunConfig::detector_test),
      field("generator_train", &RunConfig::generator_train),
      field("generator_valid", &RunConfig::generator_valid),
      field("pretrained_vectors", &RunConfig::pretrained_vectors),
      field("detector_embed_dim", &RunConfig::detector_embed_dim),
      field("detector_dim", &RunConfig::detector_dim),
      field("detector_epochs", &RunConfig::detector_epochs),
      field("detector_lr", &RunConfig::detector_lr),
      field("embed_dim", &RunConfig::embed_dim),
      field("hidden", &RunConfig::hidden),
      field("generator_epochs", &RunConfig::generator_epochs),
      field("generator_first_lr", &RunConfig::generator_first_lr),
      field("generator_lr", &RunConfig::generator_lr),
      field("stop_weight", &RunConfig::stop_weight),
      field("detector_checkpoint", &RunConfig::detector_checkpoint),
      field("topic_mode", &RunConfig::topic_mode),
      field("beam_size", &RunConfig::beam_size),
      field("stop_threshold", &RunConfig::stop_threshold),
      field("max_sentences", &RunConfig::max_sentences),
      field("max_tokens", &RunConfig::max_tokens),
      field("ttg_cap", &RunConfig::ttg_cap),
      field("dedup_threshold", &RunConfig::dedup_threshold),
      field("init_range", &RunConfig::init_range),
  };
  return fields;
}

}  // namespace detail

/// Applies "key = value" lines on top of `config`.
inline void parse_config(std::istream& in, RunConfig& config,
                         const std::string& source = "<config>") {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string_view body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos)
      throw ParseError(source, line_no, "expected 'key = value'");
    const std::string key(trim(body.substr(0, eq)));
    const std::string value(trim(body.substr(eq + 1)));
    bool known = false;
    for (const auto& f : detail::config_fields()) {
      if (f.key != key) continue;
      known = true;
      try {
        f.set(config, value);
      } catch (const std::invalid_argument&) {
        throw ParseError(source, line_no, "bad value '" + value + "' for " + key);
      }
    }
    if (!known) throw ParseError(source, line_no, "unknown key '" + key + "'");
  }
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read config " + path);
  RunConfig config;
  parse_config(in, config, path);
  return config;
}

/// Every field, one "key = value" line each, in a fixed order.
inline void write_config(std::ostream& out, const RunConfig& config) {
  for (const auto& f : detail::config_fields()) out << f.key << " = " << f.get(config) << '\n';
}

}  // namespace twag::io

#endif  // TWAG_IO_CONFIG_HPP
