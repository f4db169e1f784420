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


#ifndef TWAG_DETECTOR_DETECTOR_HPP
#define TWAG_DETECTOR_DETECTOR_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <iomanip>
#include <numeric>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "twag/autodiff/layers.hpp"
#include "twag/autodiff/ops.hpp"
#include "twag/autodiff/optimizer.hpp"
#include "twag/autodiff/tape.hpp"
#include "twag/corpus/detector_dataset.hpp"
#include "twag/errors.hpp"
#include "twag/util/epoch_log.hpp"
#include "twag/util/log.hpp"
#include "twag/util/random.hpp"

namespace twag::detector {

using ad::Tensor;

struct DetectorShape {
  std::size_t vocab_size = 0;
  std::size_t embed_dim = 300;
  std::size_t encoder_dim = 300;
  std::size_t class_count = 0;  // topics plus NOISE
};

/// Paragraph encoder: mean of token embeddings, then tanh(affine). An empty
/// paragraph has a zero mean, so it encodes to tanh(bias).
template <typename T>
struct ParagraphEncoder {
  Tensor<T> embedding;  // V x E
  ad::Linear<T> projection;

  ParagraphEncoder() = default;
  ParagraphEncoder(std::size_t vocab, std::size_t embed, std::size_t width)
      : embedding(Tensor<T>::zeros({vocab, embed}, true)), projection(embed, width) {}

  std::size_t width() const { return projection.out_features(); }

  Tensor<T> operator()(std::span<const int> ids) const {
    return ad::tanh(projection(ad::mean_rows(ad::embedding_lookup(embedding, ids))));
  }

  void init(Rng& rng, double range) {
    ad::init_uniform(embedding, rng, range);
    projection.init(rng, range);
  }

  void collect(ad::ParameterList<T>& out, const std::string& prefix) const {
    out.push_back({prefix + ".embedding", embedding});
    projection.collect(out, prefix + ".projection");
  }
};

template <typename T>
struct DetectorModel {
  ParagraphEncoder<T> encoder;
  ad::Linear<T> classifier;  // D_enc x class_count

  DetectorModel() = default;
  explicit DetectorModel(const DetectorShape& s)
      : encoder(s.vocab_size, s.embed_dim, s.encoder_dim), classifier(s.encoder_dim, s.class_count) {}

  std::size_t class_count() const { return classifier.out_features(); }

  DetectorShape shape() const {
    return {encoder.embedding.rows(), encoder.embedding.cols(), encoder.width(), class_count()};
  }

  Tensor<T> logits(std::span<const int> ids) const { return classifier(encoder(ids)); }

  void init(Rng& rng, double range = 0.1) {
    encoder.init(rng, range);
    classifier.init(rng, range);
  }

  ad::ParameterList<T> parameters() const {
    ad::ParameterList<T> out;
    encoder.collect(out, "detector.encoder");
    classifier.collect(out, "detector.classifier");
    return out;
  }
};

/// Lowest index wins ties.
template <typename T>
std::size_t detect_topic(const DetectorModel<T>& model, std::span<const int> ids) {
  const auto out = model.logits(ids);
  return ad::argmax(std::span<const T>(out.values()));
}

template <typename T>
std::vector<std::size_t> detect_topics(const DetectorModel<T>& model,
                                       const std::vector<std::vector<int>>& paragraphs) {
  std::vector<std::size_t> out;
  out.reserve(paragraphs.size());
  for (const auto& p : paragraphs) out.push_back(detect_topic(model, p));
  return out;
}

/// −log softmax(logits)[target], recorded on the active tape.
template <typename T>
Tensor<T> topic_nll(const DetectorModel<T>& model, std::span<const int> ids, std::size_t target) {
  const auto probs = ad::softmax(model.logits(ids), 1);
  return ad::scale(ad::log(ad::element(probs, 0, target)), T(-1));
}

struct DetectorTrainOptions {
  std::size_t epochs = 4;
  double learning_rate = 3e-5;
  double init_range = 0.1;
  std::uint64_t init_seed = 42;
  std::uint64_t order_seed = 42;
  bool shuffle = true;
};

template <typename T>
struct DetectorTrainResult {
  DetectorModel<T> model;  // best-validation parameters
  std::vector<EpochRecord> log;
  std::size_t best_epoch = 0;  // 0 = initial parameters
  double best_valid_accuracy = 0.0;
};

template <typename T>
double mean_topic_nll(const DetectorModel<T>& model,
                      const std::vector<corpus::TopicParagraphExample>& data) {
  if (data.empty()) return 0.0;
  double total = 0.0;
  for (const auto& ex : data) total += static_cast<double>(topic_nll(model, ex.ids, ex.topic).item());
  return total / static_cast<double>(data.size());
}

template <typename T>
double detector_accuracy(const DetectorModel<T>& model,
                         const std::vector<corpus::TopicParagraphExample>& data) {
  if (data.empty()) return 0.0;
  std::size_t correct = 0;
  for (const auto& ex : data) correct += detect_topic(model, ex.ids) == ex.topic;
  return static_cast<double>(correct) / static_cast<double>(data.size());
}

namespace detail {

template <typename T>
std::vector<std::vector<T>> snapshot(const ad::ParameterList<T>& params) {
  std::vector<std::vector<T>> out;
  for (const auto& p : params) out.emplace_back(p.tensor.values().begin(), p.tensor.values().end());
  return out;
}

template <typename T>
void restore(ad::ParameterList<T>& params, const std::vector<std::vector<T>>& values) {
  for (std::size_t i = 0; i < params.size(); ++i) params[i].tensor.assign(values[i]);
}

}  // namespace detail

/// Trains a freshly initialized model on `train` with batch size 1 and
/// per-example NLL. Validation accuracy (training accuracy when `valid` is
/// empty) picks the retained epoch.
template <typename T>
DetectorTrainResult<T> train_detector(const std::vector<corpus::TopicParagraphExample>& train,
                                      const std::vector<corpus::TopicParagraphExample>& valid,
                                      const DetectorShape& shape,
                                      const DetectorTrainOptions& options = {}) {
  if (train.empty()) throw ValidationError("train_detector: empty training set");
  std::vector<std::size_t> per_topic(shape.class_count, 0);
  for (const auto& ex : train) {
    if (ex.topic >= shape.class_count) {
      throw ValidationError("train_detector: topic " + std::to_string(ex.topic) +
                            " outside " + std::to_string(shape.class_count) + " classes");
    }
    ++per_topic[ex.topic];
  }
  for (std::size_t k = 0; k < per_topic.size(); ++k) {
    if (per_topic[k] == 0) {
      log_warning("train_detector: topic " + std::to_string(k) + " has no training examples");
    }
  }

  DetectorTrainResult<T> result{DetectorModel<T>(shape), {}, 0, 0.0};
  Rng init_rng(options.init_seed);
  result.model.init(init_rng, options.init_range);
  auto params = result.model.parameters();
  ad::Adam<T> adam(params, {.learning_rate = options.learning_rate});

  const auto& selection = valid.empty() ? train : valid;
  result.best_valid_accuracy = detector_accuracy(result.model, selection);
  auto best = detail::snapshot(params);

  std::vector<std::size_t> order(train.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng order_rng(options.order_seed);
  for (std::size_t epoch = 1; epoch <= options.epochs; ++epoch) {
    Stopwatch clock;
    if (options.shuffle) order_rng.shuffle(std::span<std::size_t>(order));
    double total = 0.0;
    for (std::size_t i : order) {
      ad::zero_grads(params);
      ad::Tape<T> tape;
      const auto loss = topic_nll(result.model, train[i].ids, train[i].topic);
      tape.backward(loss);
      total += static_cast<double>(loss.item());
      adam.step(params);
    }
    const double accuracy = detector_accuracy(result.model, selection);
    result.log.push_back({epoch, options.learning_rate, total / static_cast<double>(train.size()),
                          accuracy, clock.seconds()});
    log_info("detector epoch " + std::to_string(epoch) + " loss " +
             std::to_string(result.log.back().train_loss) + " valid_accuracy " +
             std::to_string(accuracy));
    if (accuracy > result.best_valid_accuracy) {
      result.best_valid_accuracy = accuracy;
      result.best_epoch = epoch;
      best = detail::snapshot(params);
    }
  }
  detail::restore(params, best);
  ad::zero_grads(params);
  return result;
}

struct TopicScore {
  std::size_t support = 0;    // gold count
  std::size_t predicted = 0;  // predicted count
  std::size_t correct = 0;
  double precision = 0.0;  // 0 when nothing predicted
  double recall = 0.0;     // 0 when no gold examples
};

struct DetectorReport {
  double accuracy = 0.0;
  std::size_t total = 0;
  std::vector<std::vector<std::size_t>> confusion;  // [gold][predicted]
  std::vector<TopicScore> topics;
};

inline DetectorReport score_predictions(std::span<const std::size_t> gold,
                                        std::span<const std::size_t> predicted,
                                        std::size_t class_count) {
  if (gold.size() != predicted.size()) {
    throw ContractError("score_predictions: " + std::to_string(gold.size()) + " gold vs " +
                        std::to_string(predicted.size()) + " predicted");
  }
  if (gold.empty()) throw ValidationError("evaluate_detector: empty test set");
  DetectorReport r;
  r.total = gold.size();
  r.confusion.assign(class_count, std::vector<std::size_t>(class_count, 0));
  r.topics.assign(class_count, {});
  std::size_t correct = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    ++r.confusion.at(gold[i]).at(predicted[i]);
    correct += gold[i] == predicted[i];
  }
  r.accuracy = static_cast<double>(correct) / static_cast<double>(r.total);
  for (std::size_t k = 0; k < class_count; ++k) {
    auto& s = r.topics[k];
    s.correct = r.confusion[k][k];
    for (std::size_t j = 0; j < class_count; ++j) {
      s.support += r.confusion[k][j];
      s.predicted += r.confusion[j][k];
    }
    if (s.predicted) s.precision = static_cast<double>(s.correct) / static_cast<double>(s.predicted);
    if (s.support) s.recall = static_cast<double>(s.correct) / static_cast<double>(s.support);
  }
  return r;
}

template <typename T>
DetectorReport evaluate_detector(const DetectorModel<T>& model,
                                 const std::vector<corpus::TopicParagraphExample>& test) {
  std::vector<std::size_t> gold, predicted;
  for (const auto& ex : test) {
    gold.push_back(ex.topic);
    predicted.push_back(detect_topic(model, ex.ids));
  }
  return score_predictions(gold, predicted, model.class_count());
}

/// Per-topic rows followed by an aggregate accuracy line.
inline void write_detector_report(std::ostream& out, const DetectorReport& report,
                                  const std::vector<std::string>& class_names) {
  out << "topic\tprecision\trecall\tpredicted\tsupport\n";
  out << std::fixed << std::setprecision(6);
  for (std::size_t k = 0; k < report.topics.size(); ++k) {
    const auto& s = report.topics[k];
    const std::string name = k < class_names.size() ? class_names[k] : std::to_string(k);
    out << name << '\t' << s.precision << '\t' << s.recall << '\t' << s.predicted << '\t'
        << s.support << '\n';
  }
  out << "ACCURACY\t" << report.accuracy << "\t\t\t" << report.total << '\n';
  out.unsetf(std::ios::floatfield);
}

}  // namespace twag::detector

#endif  // TWAG_DETECTOR_DETECTOR_HPP
