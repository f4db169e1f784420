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


#ifndef TWAG_EVAL_ROUGE_HPP
#define TWAG_EVAL_ROUGE_HPP

#include <algorithm>
#include <cstddef>
#include <iomanip>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "twag/errors.hpp"

namespace twag::eval {

using Tokens = std::vector<std::string>;
using Abstract = std::vector<Tokens>;  // one token list per sentence

struct RougeScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

inline RougeScore make_score(double overlap, std::size_t candidate, std::size_t reference) {
  RougeScore s;
  if (candidate == 0 || reference == 0) return s;
  s.precision = overlap / static_cast<double>(candidate);
  s.recall = overlap / static_cast<double>(reference);
  if (s.precision + s.recall > 0.0) s.f1 = 2.0 * s.precision * s.recall / (s.precision + s.recall);
  return s;
}

inline std::map<Tokens, std::size_t> ngram_counts(const Tokens& tokens, std::size_t n) {
  std::map<Tokens, std::size_t> out;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i)
    ++out[Tokens(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                 tokens.begin() + static_cast<std::ptrdiff_t>(i + n))];
  return out;
}

/// Clipped n-gram overlap.
inline RougeScore rouge_n(const Tokens& candidate, const Tokens& reference, std::size_t n) {
  if (n < 1) throw ContractError("rouge_n: n must be >= 1");
  const auto cand = ngram_counts(candidate, n), ref = ngram_counts(reference, n);
  std::size_t overlap = 0, cand_total = 0, ref_total = 0;
  for (const auto& [gram, c] : cand) {
    cand_total += c;
    if (auto it = ref.find(gram); it != ref.end()) overlap += std::min(c, it->second);
  }
  for (const auto& [gram, c] : ref) ref_total += c;
  return make_score(static_cast<double>(overlap), cand_total, ref_total);
}

inline std::size_t lcs_length(const Tokens& a, const Tokens& b) {
  std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j)
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

/// LCS over the flattened token sequences.
inline RougeScore rouge_l(const Tokens& candidate, const Tokens& reference) {
  return make_score(static_cast<double>(lcs_length(candidate, reference)), candidate.size(),
                    reference.size());
}

/// Shared tokens (multiset intersection) over the shorter sentence's length.
inline double unigram_overlap_ratio(const Tokens& a, const Tokens& b) {
  const std::size_t shorter = std::min(a.size(), b.size());
  if (shorter == 0) return 0.0;
  const auto ca = ngram_counts(a, 1), cb = ngram_counts(b, 1);
  std::size_t shared = 0;
  for (const auto& [gram, c] : ca)
    if (auto it = cb.find(gram); it != cb.end()) shared += std::min(c, it->second);
  return static_cast<double>(shared) / static_cast<double>(shorter);
}

/// Drops, in order, every sentence whose overlap ratio with an already kept
/// sentence exceeds `threshold`.
inline Abstract dedup_sentences(const Abstract& sentences, double threshold = 0.5) {
  if (!(threshold > 0.0 && threshold <= 1.0))
    throw ContractError("dedup_sentences: threshold must lie in (0, 1]");
  Abstract kept;
  for (const auto& s : sentences) {
    const bool duplicate = std::any_of(kept.begin(), kept.end(), [&](const Tokens& k) {
      return unigram_overlap_ratio(s, k) > threshold;
    });
    if (!duplicate) kept.push_back(s);
  }
  return kept;
}

inline Tokens flatten(const Abstract& a) {
  Tokens out;
  for (const auto& s : a) out.insert(out.end(), s.begin(), s.end());
  return out;
}

struct ExampleScores {
  double rouge1 = 0.0;
  double rouge2 = 0.0;
  double rouge_l = 0.0;
};

struct EvalReport {
  std::vector<ExampleScores> examples;
  ExampleScores mean;
  std::size_t count() const { return examples.size(); }
};

/// F1 per example after deduplicating the generated side; arithmetic means.
inline EvalReport evaluate_corpus(const std::vector<Abstract>& generated,
                                  const std::vector<Abstract>& gold,
                                  double dedup_threshold = 0.5) {
  if (generated.size() != gold.size()) {
    throw ValidationError("evaluate_corpus: " + std::to_string(generated.size()) +
                          " generated abstracts vs " + std::to_string(gold.size()) + " gold");
  }
  EvalReport report;
  for (std::size_t i = 0; i < generated.size(); ++i) {
    const Tokens cand = flatten(dedup_sentences(generated[i], dedup_threshold));
    const Tokens ref = flatten(gold[i]);
    report.examples.push_back(
        {rouge_n(cand, ref, 1).f1, rouge_n(cand, ref, 2).f1, rouge_l(cand, ref).f1});
  }
  if (!report.examples.empty()) {
    for (const auto& e : report.examples) {
      report.mean.rouge1 += e.rouge1;
      report.mean.rouge2 += e.rouge2;
      report.mean.rouge_l += e.rouge_l;
    }
    const double n = static_cast<double>(report.examples.size());
    report.mean = {report.mean.rouge1 / n, report.mean.rouge2 / n, report.mean.rouge_l / n};
  }
  return report;
}

inline void write_eval_report(std::ostream& out, const EvalReport& report) {
  const auto old_flags = out.flags();
  const auto old_precision = out.precision();
  out << "example\trouge1_f1\trouge2_f1\trougeL_f1\n" << std::fixed << std::setprecision(6);
  for (std::size_t i = 0; i < report.examples.size(); ++i) {
    const auto& e = report.examples[i];
    out << i + 1 << '\t' << e.rouge1 << '\t' << e.rouge2 << '\t' << e.rouge_l << '\n';
  }
  out << "MEAN\t" << report.mean.rouge1 << '\t' << report.mean.rouge2 << '\t' << report.mean.rouge_l
      << '\n';
  out.flags(old_flags);
  out.precision(old_precision);
}

}  // namespace twag::eval

#endif  // TWAG_EVAL_ROUGE_HPP
