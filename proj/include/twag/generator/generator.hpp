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


#ifndef TWAG_GENERATOR_GENERATOR_HPP
#define TWAG_GENERATOR_GENERATOR_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "twag/autodiff/ops.hpp"
#include "twag/autodiff/optimizer.hpp"
#include "twag/autodiff/tape.hpp"
#include "twag/corpus/summarization_dataset.hpp"
#include "twag/corpus/vocabulary.hpp"
#include "twag/errors.hpp"
#include "twag/generator/model.hpp"
#include "twag/generator/ttg.hpp"
#include "twag/util/epoch_log.hpp"
#include "twag/util/log.hpp"
#include "twag/util/random.hpp"

namespace twag::generator {

using corpus::Vocabulary;

enum class TopicMode { kSoft, kHard };

inline TopicMode parse_topic_mode(const std::string& name) {
  if (name == "soft") return TopicMode::kSoft;
  if (name == "hard") return TopicMode::kHard;
  throw ValidationError("topic mode must be 'soft' or 'hard', got '" + name + "'");
}

inline std::string topic_mode_name(TopicMode mode) {
  return mode == TopicMode::kSoft ? "soft" : "hard";
}

struct DecodeConfig {
  TopicMode mode = TopicMode::kSoft;
  double stop_threshold = 0.5;
  std::size_t max_sentences = 10;
  std::size_t max_tokens = 60;
  std::size_t beam_size = 5;
  std::size_t ttg_cap = 400;

  void validate() const {
    if (beam_size < 1) throw ValidationError("beam size must be >= 1");
    if (max_sentences < 1 || max_tokens < 1 || ttg_cap < 1)
      throw ValidationError("sentence, token and TTG caps must be >= 1");
    if (!(stop_threshold > 0.0 && stop_threshold < 1.0))
      throw ValidationError("stop threshold must lie in (0, 1)");
  }
};

// ---------------------------------------------------------------------------
// Topic encoder

template <typename T>
struct BiGruStates {
  std::vector<Tensor<T>> forward;   // forward[i] after reading tokens 0..i
  std::vector<Tensor<T>> backward;  // backward[i] after reading tokens n-1..i
};

template <typename T>
BiGruStates<T> run_bigru(const GeneratorModel<T>& model, std::span<const int> ids) {
  const std::size_t n = ids.size(), h = model.hidden();
  BiGruStates<T> out;
  if (n == 0) return out;
  const Tensor<T> x = ad::embedding_lookup(model.embedding, ids);
  const Tensor<T> fp = model.encoder_forward.project_inputs(x);
  const Tensor<T> bp = model.encoder_backward.project_inputs(x);
  Tensor<T> state = Tensor<T>::zeros({1, h});
  for (std::size_t i = 0; i < n; ++i) {
    state = model.encoder_forward.step_projected(state, ad::row(fp, i));
    out.forward.push_back(state);
  }
  out.backward.resize(n);
  state = Tensor<T>::zeros({1, h});
  for (std::size_t i = n; i-- > 0;) {
    state = model.encoder_backward.step_projected(state, ad::row(bp, i));
    out.backward[i] = state;
  }
  return out;
}

template <typename T>
struct TopicEncoding {
  Tensor<T> topics;                      // G: topics x H
  std::vector<Tensor<T>> topic_tokens;   // U_k: n_k x H
  Tensor<T> tokens;                      // U: N x H
  Tensor<T> token_keys;                  // U W_u + b_a, N x H
};

template <typename T>
TopicEncoding<T> encode_topics(const GeneratorModel<T>& model, const TtgSet& ttgs) {
  if (ttgs.topic_count() != model.topic_count()) {
    throw ContractError("encode_topics: " + std::to_string(ttgs.topic_count()) +
                        " groups for a model with " + std::to_string(model.topic_count()) +
                        " topics");
  }
  const std::size_t h = model.hidden();
  TopicEncoding<T> enc;
  std::vector<Tensor<T>> g_rows;
  for (const auto& group : ttgs.groups) {
    if (group.empty()) {
      g_rows.push_back(Tensor<T>::zeros({1, h}));
      enc.topic_tokens.push_back(Tensor<T>::zeros({0, h}));
      continue;
    }
    const auto states = run_bigru(model, group.ids);
    const Tensor<T> fwd = ad::concat_rows(std::span<const Tensor<T>>(states.forward), h);
    const Tensor<T> bwd = ad::concat_rows(std::span<const Tensor<T>>(states.backward), h);
    enc.topic_tokens.push_back(model.token_projection(ad::concat_cols(fwd, bwd)));
    g_rows.push_back(
        model.topic_projection(ad::concat_cols(states.forward.back(), states.backward.front())));
  }
  enc.topics = ad::concat_rows(std::span<const Tensor<T>>(g_rows), h);
  enc.tokens = ad::concat_rows(std::span<const Tensor<T>>(enc.topic_tokens), h);
  enc.token_keys =
      ad::add_row(ad::matmul(enc.tokens, model.attention_token), model.attention_bias);
  return enc;
}

// ---------------------------------------------------------------------------
// Topic predictor

template <typename T>
Tensor<T> soft_topic(const Tensor<T>& q, const Tensor<T>& topics) {
  return ad::matmul(q, topics);
}

template <typename T>
Tensor<T> hard_topic(const Tensor<T>& q, const Tensor<T>& topics) {
  return ad::row(topics, ad::argmax(std::span<const T>(q.values())));
}

template <typename T>
struct TopicStep {
  Tensor<T> h;       // predictor state
  Tensor<T> q;       // topic distribution
  Tensor<T> e;       // topical information passed to the next step
  Tensor<T> r;       // topic-aware state, initial decoder state
  Tensor<T> p_stop;  // 1 x 1
};

template <typename T>
TopicStep<T> predict_topic_step(const GeneratorModel<T>& model, const Tensor<T>& h_prev,
                                const Tensor<T>& e_prev, const Tensor<T>& topics,
                                TopicMode mode) {
  TopicStep<T> out;
  out.h = model.predictor.step(h_prev, e_prev);
  out.q = ad::softmax(model.topic_logits(out.h), 1);
  out.e = mode == TopicMode::kSoft ? soft_topic(out.q, topics) : hard_topic(out.q, topics);
  out.r = ad::add(out.h, out.e);
  out.p_stop = ad::sigmoid(model.stop(out.h));
  return out;
}

// ---------------------------------------------------------------------------
// Sentence decoder

template <typename T>
struct Attention {
  Tensor<T> weights;  // a: 1 x N
  Tensor<T> context;  // c*: 1 x H
};

template <typename T>
Attention<T> attention_step(const GeneratorModel<T>& model, const Tensor<T>& s,
                            const TopicEncoding<T>& enc) {
  if (enc.tokens.rows() == 0) {
    throw ContractError("attention_step: no input tokens to attend over");
  }
  const Tensor<T> hidden =
      ad::tanh(ad::add_row(enc.token_keys, ad::matmul(s, model.attention_state)));
  const Tensor<T> scores = ad::transpose(ad::matmul(hidden, model.attention_score));
  Attention<T> out;
  out.weights = ad::softmax(scores, 1);
  out.context = ad::matmul(out.weights, enc.tokens);
  return out;
}

/// P(w) = p_gen P_voc(w) + (1 − p_gen) Σ_{i: id_i = w} a_i over `width`
/// extended ids.
template <typename T>
Tensor<T> mix_distribution(const Tensor<T>& p_vocab, const Tensor<T>& p_gen,
                           const Tensor<T>& attention, std::span<const int> source_ids,
                           std::size_t width) {
  Tensor<T> generated = ad::mul_scalar(p_vocab, p_gen);
  if (width > p_vocab.cols()) {
    generated = ad::concat_cols(generated, Tensor<T>::zeros({1, width - p_vocab.cols()}));
  }
  const Tensor<T> copied =
      ad::scatter_cols(ad::mul_scalar(attention, ad::one_minus(p_gen)), source_ids, width);
  return ad::add(generated, copied);
}

template <typename T>
struct TokenDistribution {
  Tensor<T> p_vocab;  // 1 x V
  Tensor<T> p_gen;    // 1 x 1
  Tensor<T> p;        // 1 x extended width
};

template <typename T>
TokenDistribution<T> token_distribution(const GeneratorModel<T>& model, const Tensor<T>& s,
                                        const Tensor<T>& x, const Attention<T>& att,
                                        const SourceMap& map) {
  TokenDistribution<T> out;
  out.p_vocab =
      ad::softmax(model.vocab_out(model.vocab_hidden(ad::concat_cols(s, att.context))), 1);
  const Tensor<T> gate = ad::add(
      ad::add(ad::matmul(att.context, model.gate_context), ad::matmul(s, model.gate_state)),
      ad::add(ad::matmul(x, model.gate_input), model.gate_bias));
  out.p_gen = ad::sigmoid(gate);
  out.p = mix_distribution(out.p_vocab, out.p_gen, att.weights, map.extended_ids,
                           map.extended_size());
  return out;
}

template <typename T>
struct DecoderStep {
  Tensor<T> s;
  Attention<T> attention;
  TokenDistribution<T> distribution;
};

/// One decoder step: consume the previous token (vocabulary id), update the
/// state, attend and mix.
template <typename T>
DecoderStep<T> decoder_step(const GeneratorModel<T>& model, const Tensor<T>& s_prev,
                            int input_id, const TopicEncoding<T>& enc, const SourceMap& map) {
  const int ids[1] = {input_id};
  const Tensor<T> x = ad::embedding_lookup(model.embedding, std::span<const int>(ids));
  DecoderStep<T> out;
  out.s = model.decoder.step(s_prev, x);
  out.attention = attention_step(model, out.s, enc);
  out.distribution = token_distribution(model, out.s, x, out.attention, map);
  return out;
}

namespace detail {

inline bool emittable(std::size_t id) {
  return id != static_cast<std::size_t>(Vocabulary::kPad) &&
         id != static_cast<std::size_t>(Vocabulary::kBos);
}

inline double safe_log(double p) { return std::log(std::max(p, 1e-12)); }

}  // namespace detail

/// Greedy decode from s_0 = r. Returns extended ids without the final EOS.
template <typename T>
std::vector<int> decode_greedy(const GeneratorModel<T>& model, const Tensor<T>& r,
                               const TopicEncoding<T>& enc, const SourceMap& map,
                               std::size_t max_tokens) {
  std::vector<int> out;
  Tensor<T> s = r;
  int input = Vocabulary::kBos;
  while (out.size() < max_tokens) {
    const auto step = decoder_step(model, s, input, enc, map);
    const auto p = step.distribution.p.values();
    std::size_t best = p.size();
    for (std::size_t w = 0; w < p.size(); ++w) {
      if (!detail::emittable(w)) continue;
      if (best == p.size() || p[w] > p[best]) best = w;
    }
    if (best == static_cast<std::size_t>(Vocabulary::kEos)) break;
    out.push_back(static_cast<int>(best));
    input = map.input_id(static_cast<int>(best));
    s = step.s;
  }
  return out;
}

/// Beam search ranked by log-probability divided by hypothesis length (EOS
/// counted). Ties keep the earlier candidate.
template <typename T>
std::vector<int> decode_beam(const GeneratorModel<T>& model, const Tensor<T>& r,
                             const TopicEncoding<T>& enc, const SourceMap& map,
                             std::size_t max_tokens, std::size_t beam_size) {
  struct Hypothesis {
    double log_prob;
    std::vector<int> ids;
    Tensor<T> s;
    int input;
  };
  struct Finished {
    double score;
    std::vector<int> ids;
  };
  struct Candidate {
    double log_prob;
    std::size_t parent;
    int token;
  };
  std::vector<Hypothesis> live{{0.0, {}, r, Vocabulary::kBos}};
  std::vector<Finished> finished;
  for (std::size_t len = 0; len < max_tokens && !live.empty() && finished.size() < beam_size;
       ++len) {
    std::vector<Candidate> candidates;
    std::vector<Tensor<T>> states;
    for (std::size_t b = 0; b < live.size(); ++b) {
      const auto step = decoder_step(model, live[b].s, live[b].input, enc, map);
      states.push_back(step.s);
      const auto p = step.distribution.p.values();
      for (std::size_t w = 0; w < p.size(); ++w) {
        if (!detail::emittable(w)) continue;
        candidates.push_back({live[b].log_prob + detail::safe_log(static_cast<double>(p[w])), b,
                              static_cast<int>(w)});
      }
    }
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Candidate& a, const Candidate& b) { return a.log_prob > b.log_prob; });
    std::vector<Hypothesis> next;
    for (std::size_t c = 0; c < candidates.size() && c < beam_size; ++c) {
      const auto& cand = candidates[c];
      const auto& parent = live[cand.parent];
      if (cand.token == Vocabulary::kEos) {
        finished.push_back({cand.log_prob / static_cast<double>(parent.ids.size() + 1), parent.ids});
        continue;
      }
      Hypothesis h{cand.log_prob, parent.ids, states[cand.parent], map.input_id(cand.token)};
      h.ids.push_back(cand.token);
      next.push_back(std::move(h));
    }
    live = std::move(next);
  }
  for (const auto& h : live) {
    finished.push_back({h.log_prob / static_cast<double>(std::max<std::size_t>(h.ids.size(), 1)),
                        h.ids});
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < finished.size(); ++i)
    if (finished[i].score > finished[best].score) best = i;
  return finished.empty() ? std::vector<int>{} : finished[best].ids;
}

template <typename T>
std::vector<int> decode_sentence(const GeneratorModel<T>& model, const Tensor<T>& r,
                                 const TopicEncoding<T>& enc, const SourceMap& map,
                                 const DecodeConfig& config) {
  if (config.beam_size == 1) return decode_greedy(model, r, enc, map, config.max_tokens);
  return decode_beam(model, r, enc, map, config.max_tokens, config.beam_size);
}

struct GeneratedAbstract {
  std::vector<std::vector<std::string>> sentences;
  std::vector<double> stop_probabilities;  // one per predictor step taken

  std::string text() const {
    std::string out;
    for (const auto& s : sentences) {
      for (const auto& tok : s) {
        if (!out.empty()) out += ' ';
        out += tok;
      }
    }
    return out;
  }
};

/// Sentence-wise generation: stop check at every predictor step, hard cap on
/// the number of sentences. Fails when no input token survives grouping.
template <typename T>
GeneratedAbstract generate_abstract(const GeneratorModel<T>& model, const TtgSet& ttgs,
                                    const Vocabulary& vocab, const DecodeConfig& config) {
  config.validate();
  if (ttgs.token_count() == 0) {
    throw ValidationError("generate_abstract: no non-NOISE input paragraphs");
  }
  ad::PauseRecording<T> no_tape;
  const auto enc = encode_topics(model, ttgs);
  const auto map = build_source_map(ttgs, model.vocab_size());
  GeneratedAbstract out;
  Tensor<T> h = Tensor<T>::zeros({1, model.hidden()});
  Tensor<T> e = Tensor<T>::zeros({1, model.hidden()});
  while (true) {
    const auto step = predict_topic_step(model, h, e, enc.topics, config.mode);
    const double p_stop = static_cast<double>(step.p_stop.item());
    out.stop_probabilities.push_back(p_stop);
    if (p_stop > config.stop_threshold || out.sentences.size() >= config.max_sentences) break;
    std::vector<std::string> sentence;
    for (int id : decode_sentence(model, step.r, enc, map, config))
      sentence.push_back(map.surface(id, vocab));
    out.sentences.push_back(std::move(sentence));
    h = step.h;
    e = step.e;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Losses

/// (1/m) Σ_t mean_i −log P(w_i), given each sentence's target probabilities.
template <typename T>
Tensor<T> sentence_loss(const std::vector<std::vector<Tensor<T>>>& target_probs,
                        std::size_t* clamp_count = nullptr) {
  if (target_probs.empty()) throw ContractError("sentence_loss: no sentences");
  std::vector<Tensor<T>> per_sentence;
  for (const auto& sentence : target_probs) {
    if (sentence.empty()) throw ContractError("sentence_loss: empty sentence");
    const Tensor<T> probs =
        ad::concat_rows(std::span<const Tensor<T>>(sentence), 1);
    per_sentence.push_back(ad::scale(ad::mean(ad::log(probs, T(1e-12), clamp_count)), T(-1)));
  }
  return ad::mean(ad::concat_rows(std::span<const Tensor<T>>(per_sentence), 1));
}

/// Binary cross-entropy averaged over the predictor steps; only the last
/// step has target 1.
template <typename T>
Tensor<T> stop_loss(const std::vector<Tensor<T>>& p_stops, std::size_t* clamp_count = nullptr) {
  if (p_stops.empty()) throw ContractError("stop_loss: no steps");
  std::vector<Tensor<T>> terms;
  for (std::size_t t = 0; t < p_stops.size(); ++t) {
    const bool last = t + 1 == p_stops.size();
    const Tensor<T> p = last ? p_stops[t] : ad::one_minus(p_stops[t]);
    terms.push_back(ad::scale(ad::log(p, T(1e-12), clamp_count), T(-1)));
  }
  return ad::mean(ad::concat_rows(std::span<const Tensor<T>>(terms), 1));
}

template <typename T>
struct LossBreakdown {
  Tensor<T> total;
  Tensor<T> sentence;
  Tensor<T> stop;
  double token_nll_sum = 0.0;  // Σ −log P over all target tokens
  std::size_t tokens = 0;      // target tokens including EOS
  std::size_t clamped = 0;     // log evaluations that hit the floor
  std::vector<double> stop_probabilities;
};

/// Teacher-forced losses for one example: the predictor runs m + 1 steps and
/// the decoder reads the gold tokens, each sentence ending with EOS.
template <typename T>
LossBreakdown<T> compute_losses(const GeneratorModel<T>& model, const TtgSet& ttgs,
                                const std::vector<corpus::TokenizedText>& abstract,
                                TopicMode mode, double stop_weight = 1.0) {
  if (ttgs.token_count() == 0) throw ValidationError("compute_losses: no input tokens");
  if (abstract.empty()) throw ValidationError("compute_losses: empty gold abstract");
  const auto enc = encode_topics(model, ttgs);
  const auto map = build_source_map(ttgs, model.vocab_size());
  LossBreakdown<T> out;
  std::vector<std::vector<Tensor<T>>> target_probs;
  std::vector<Tensor<T>> p_stops;
  Tensor<T> h = Tensor<T>::zeros({1, model.hidden()});
  Tensor<T> e = Tensor<T>::zeros({1, model.hidden()});
  for (std::size_t t = 0; t <= abstract.size(); ++t) {
    const auto step = predict_topic_step(model, h, e, enc.topics, mode);
    p_stops.push_back(step.p_stop);
    out.stop_probabilities.push_back(static_cast<double>(step.p_stop.item()));
    h = step.h;
    e = step.e;
    if (t == abstract.size()) break;
    const auto& gold = abstract[t];
    if (gold.ids.size() != gold.tokens.size())
      throw ContractError("compute_losses: gold sentence is not encoded");
    std::vector<Tensor<T>> probs;
    Tensor<T> s = step.r;
    int input = Vocabulary::kBos;
    for (std::size_t i = 0; i <= gold.ids.size(); ++i) {
      const int target = i < gold.ids.size() ? map.extended_id(gold.tokens[i], gold.ids[i])
                                             : Vocabulary::kEos;
      const auto d = decoder_step(model, s, input, enc, map);
      const Tensor<T> p = ad::element(d.distribution.p, 0, static_cast<std::size_t>(target));
      out.token_nll_sum -= detail::safe_log(static_cast<double>(p.item()));
      ++out.tokens;
      probs.push_back(p);
      s = d.s;
      if (i < gold.ids.size()) input = gold.ids[i];
    }
    target_probs.push_back(std::move(probs));
  }
  out.sentence = sentence_loss(target_probs, &out.clamped);
  out.stop = stop_loss(p_stops, &out.clamped);
  out.total = ad::add(out.sentence, ad::scale(out.stop, static_cast<T>(stop_weight)));
  return out;
}

// ---------------------------------------------------------------------------
// Training

struct GeneratorExample {
  std::string title;
  TtgSet ttgs;
  std::vector<corpus::TokenizedText> abstract;
};

inline GeneratorExample prepare_generator_example(const corpus::SummarizationExample& ex,
                                                  const std::vector<std::size_t>& topics,
                                                  std::size_t topic_count, std::size_t cap) {
  return {ex.title, group_paragraphs(ex.paragraphs, topics, topic_count, cap), ex.abstract};
}

struct GeneratorTrainOptions {
  std::size_t epochs = 10;
  double first_learning_rate = 1e-4;  // epoch 1
  double learning_rate = 1e-5;        // later epochs
  TopicMode mode = TopicMode::kSoft;
  double stop_weight = 1.0;
  std::uint64_t order_seed = 42;
  bool shuffle = true;
};

template <typename T>
struct GeneratorTrainResult {
  GeneratorModel<T> model;  // best-validation parameters
  std::vector<EpochRecord> log;
  std::size_t best_epoch = 0;
  double best_valid_loss = std::numeric_limits<double>::infinity();
};

template <typename T>
double mean_generator_loss(const GeneratorModel<T>& model,
                           const std::vector<GeneratorExample>& data, TopicMode mode,
                           double stop_weight = 1.0) {
  ad::PauseRecording<T> no_tape;
  double total = 0.0;
  std::size_t n = 0;
  for (const auto& ex : data) {
    if (ex.ttgs.token_count() == 0) continue;
    total += static_cast<double>(compute_losses(model, ex.ttgs, ex.abstract, mode, stop_weight)
                                     .total.item());
    ++n;
  }
  return n ? total / static_cast<double>(n) : 0.0;
}

/// Trains `model` in place from its current parameters with batch size 1.
/// Validation loss (training loss when `valid` is empty) picks the retained
/// epoch. Examples without input tokens are skipped with a warning.
template <typename T>
GeneratorTrainResult<T> train_generator(GeneratorModel<T> model,
                                        const std::vector<GeneratorExample>& train,
                                        const std::vector<GeneratorExample>& valid,
                                        const GeneratorTrainOptions& options = {}) {
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < train.size(); ++i) {
    if (train[i].ttgs.token_count() == 0) {
      log_warning("train_generator: '" + train[i].title + "' has no input tokens, skipped");
      continue;
    }
    order.push_back(i);
  }
  if (order.empty()) throw ValidationError("train_generator: no usable training examples");

  GeneratorTrainResult<T> result{model, {}, 0, std::numeric_limits<double>::infinity()};
  auto params = model.parameters();
  ad::Adam<T> adam(params, {.learning_rate = options.first_learning_rate});
  std::vector<std::vector<T>> best;
  Rng order_rng(options.order_seed);
  for (std::size_t epoch = 1; epoch <= options.epochs; ++epoch) {
    Stopwatch clock;
    const double lr = epoch == 1 ? options.first_learning_rate : options.learning_rate;
    adam.set_learning_rate(lr);
    if (options.shuffle) order_rng.shuffle(std::span<std::size_t>(order));
    double total = 0.0;
    for (std::size_t i : order) {
      ad::zero_grads(params);
      ad::Tape<T> tape;
      const auto loss =
          compute_losses(model, train[i].ttgs, train[i].abstract, options.mode, options.stop_weight);
      tape.backward(loss.total);
      total += static_cast<double>(loss.total.item());
      adam.step(params);
    }
    const double train_loss = total / static_cast<double>(order.size());
    const double valid_loss =
        valid.empty() ? mean_generator_loss(model, train, options.mode, options.stop_weight)
                      : mean_generator_loss(model, valid, options.mode, options.stop_weight);
    result.log.push_back({epoch, lr, train_loss, valid_loss, clock.seconds()});
    log_info("generator epoch " + std::to_string(epoch) + " lr " + std::to_string(lr) +
             " loss " + std::to_string(train_loss) + " valid_loss " + std::to_string(valid_loss));
    if (valid_loss < result.best_valid_loss) {
      result.best_valid_loss = valid_loss;
      result.best_epoch = epoch;
      best.clear();
      for (const auto& p : params) best.emplace_back(p.tensor.values().begin(), p.tensor.values().end());
    }
  }
  if (!best.empty()) {
    for (std::size_t i = 0; i < params.size(); ++i) params[i].tensor.assign(best[i]);
  }
  ad::zero_grads(params);
  result.model = model;
  return result;
}

}  // namespace twag::generator

#endif  // TWAG_GENERATOR_GENERATOR_HPP
