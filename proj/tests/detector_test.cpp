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


#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "support/finite_difference.hpp"
#include "support/synthetic_corpus.hpp"
#include "twag/detector/detector.hpp"

namespace twag::detector {
namespace {

using corpus::TopicParagraphExample;
using Examples = std::vector<TopicParagraphExample>;

DetectorModel<double> small_model(std::uint64_t seed = 3, double range = 0.5) {
  DetectorModel<double> m({.vocab_size = 12, .embed_dim = 5, .encoder_dim = 4, .class_count = 3});
  Rng rng(seed);
  m.init(rng, range);
  ad::init_uniform(m.encoder.projection.bias, rng, range);
  ad::init_uniform(m.classifier.bias, rng, range);
  return m;
}

std::vector<double> values(const ad::Tensor<double>& t) {
  return {t.values().begin(), t.values().end()};
}

TEST(ParagraphEncoderTest, EmptyParagraphEncodesToTanhOfBias) {
  const auto m = small_model();
  const auto out = values(m.encoder(std::vector<int>{}));
  const auto bias = values(m.encoder.projection.bias);
  ASSERT_EQ(out.size(), 4u);
  for (std::size_t j = 0; j < out.size(); ++j) EXPECT_NEAR(out[j], std::tanh(bias[j]), 1e-12);
}

TEST(ParagraphEncoderTest, SingleTokenIsTanhOfAffineEmbedding) {
  const auto m = small_model();
  const auto out = values(m.encoder(std::vector<int>{7}));
  const auto& w = m.encoder.projection.weight;
  const auto& b = m.encoder.projection.bias;
  const auto& emb = m.encoder.embedding;
  for (std::size_t j = 0; j < 4; ++j) {
    double z = b.at(0, j);
    for (std::size_t e = 0; e < 5; ++e) z += emb.at(7, e) * w.at(e, j);
    EXPECT_NEAR(out[j], std::tanh(z), 1e-12);
  }
}

TEST(ParagraphEncoderTest, RepeatedTokenMatchesSingleAndWidthIsConstant) {
  const auto m = small_model();
  const auto one = values(m.encoder(std::vector<int>{5}));
  const auto two = values(m.encoder(std::vector<int>{5, 5}));
  for (std::size_t j = 0; j < one.size(); ++j) EXPECT_NEAR(one[j], two[j], 1e-12);
  EXPECT_EQ(m.encoder(std::vector<int>{1, 2, 3, 4, 5, 6}).size(), 4u);
}

TEST(DetectTopicsTest, IdentityRoutingClassifiesFeatureIndex) {
  // Token j embeds to one-hot e_j, the projection and classifier are identity.
  DetectorModel<double> m({.vocab_size = 3, .embed_dim = 3, .encoder_dim = 3, .class_count = 3});
  for (std::size_t j = 0; j < 3; ++j) {
    m.encoder.embedding.values()[j * 3 + j] = 1.0;
    m.encoder.projection.weight.values()[j * 3 + j] = 1.0;
    m.classifier.weight.values()[j * 3 + j] = 1.0;
  }
  EXPECT_EQ(detect_topics(m, {{0}, {1}, {2}, {2, 2, 1}}),
            (std::vector<std::size_t>{0, 1, 2, 2}));
}

TEST(DetectTopicsTest, AllZeroWeightsTieToTopicZero) {
  DetectorModel<float> m({.vocab_size = 6, .embed_dim = 3, .encoder_dim = 3, .class_count = 5});
  EXPECT_EQ(detect_topics(m, {{1, 2}, {}, {5}}), (std::vector<std::size_t>{0, 0, 0}));
}

TEST(DetectTopicsTest, PositiveLogitScalingLeavesPredictionsUnchanged) {
  auto m = small_model(9, 1.0);
  std::vector<std::vector<int>> paragraphs;
  Rng rng(4);
  for (int i = 0; i < 50; ++i) {
    std::vector<int> p;
    for (std::uint64_t n = rng.below(6); n > 0; --n) p.push_back(static_cast<int>(rng.below(12)));
    paragraphs.push_back(p);
  }
  const auto before = detect_topics(m, paragraphs);
  for (double factor : {0.01, 3.0, 250.0}) {
    auto scaled = small_model(9, 1.0);
    for (auto& v : scaled.classifier.weight.values()) v *= factor;
    for (auto& v : scaled.classifier.bias.values()) v *= factor;
    EXPECT_EQ(detect_topics(scaled, paragraphs), before) << factor;
  }
}

TEST(DetectTopicsTest, DeterministicAndOrderEquivariant) {
  const auto m = small_model(5, 1.0);
  std::vector<std::vector<int>> paragraphs{{1, 2}, {3}, {4, 5, 6}, {7, 8}, {9}, {10, 11, 0}};
  const auto z = detect_topics(m, paragraphs);
  EXPECT_EQ(detect_topics(m, paragraphs), z);
  std::vector<std::size_t> perm{4, 0, 5, 2, 1, 3};
  std::vector<std::vector<int>> shuffled;
  for (auto i : perm) shuffled.push_back(paragraphs[i]);
  const auto zs = detect_topics(m, shuffled);
  for (std::size_t i = 0; i < perm.size(); ++i) EXPECT_EQ(zs[i], z[perm[i]]);
}

TEST(DetectorGradientTest, TopicNllMatchesFiniteDifferences) {
  const auto m = small_model();
  const std::vector<int> ids{3, 7, 7, 1};
  const auto result = testing::check_gradients<double>(
      [&] { return topic_nll(m, ids, 2); }, m.parameters());
  EXPECT_LT(result.max_error, testing::kFdTolerance) << result.worst;
}

// Two classes, each paragraph holds tokens of only its own class.
Examples separable_toy() {
  Examples out;
  Rng rng(2);
  for (int i = 0; i < 40; ++i) {
    const std::size_t cls = i % 2;
    std::vector<int> ids;
    for (std::uint64_t n = 1 + rng.below(4); n > 0; --n)
      ids.push_back(static_cast<int>(4 + 2 * rng.below(3) + cls));
    out.push_back({cls, ids});
  }
  return out;
}

const DetectorShape kToyShape{.vocab_size = 10, .embed_dim = 8, .encoder_dim = 8, .class_count = 2};

TEST(TrainDetectorTest, SeparableToyReachesFullTrainingAccuracy) {
  const auto toy = separable_toy();
  // Brute-force separator: the parity of any token identifies the class.
  for (const auto& ex : toy)
    for (int id : ex.ids) ASSERT_EQ(static_cast<std::size_t>(id % 2), ex.topic);
  const auto r = train_detector<double>(toy, {}, kToyShape,
                                        {.epochs = 30, .learning_rate = 1e-2, .init_range = 0.1});
  EXPECT_DOUBLE_EQ(detector_accuracy(r.model, toy), 1.0);
}

TEST(TrainDetectorTest, ZeroLearningRateLeavesParametersAndLossUnchanged) {
  const auto toy = separable_toy();
  const auto r = train_detector<double>(toy, {}, kToyShape, {.epochs = 2, .learning_rate = 0.0});
  DetectorModel<double> fresh(kToyShape);
  Rng rng(42);
  fresh.init(rng, 0.1);
  const auto a = r.model.parameters(), b = fresh.parameters();
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(values(a[i].tensor), values(b[i].tensor));
  EXPECT_DOUBLE_EQ(r.log[0].train_loss, r.log[1].train_loss);
}

TEST(TrainDetectorTest, FirstEpochDoesNotIncreaseTrainingLoss) {
  const auto toy = separable_toy();
  DetectorModel<double> fresh(kToyShape);
  Rng rng(42);
  fresh.init(rng, 0.1);
  const double before = mean_topic_nll(fresh, toy);
  const auto r = train_detector<double>(toy, {}, kToyShape, {.epochs = 1, .learning_rate = 1e-3});
  EXPECT_LE(mean_topic_nll(r.model, toy), before);
}

TEST(TrainDetectorTest, KeepsBestValidationEpochAndLogsEveryEpoch) {
  const auto c = testing::make_keyword_corpus({}, 400, 80, 11);
  const DetectorShape shape{c.vocab.size(), 16, 16, 4};
  const auto r = train_detector<float>(c.train, c.test, shape, {.epochs = 3, .learning_rate = 1e-3});
  ASSERT_EQ(r.log.size(), 3u);
  double best = 0.0;
  for (const auto& row : r.log) best = std::max(best, row.valid_metric);
  EXPECT_DOUBLE_EQ(r.best_valid_accuracy, std::max(best, r.best_valid_accuracy));
  EXPECT_DOUBLE_EQ(detector_accuracy(r.model, c.test), r.best_valid_accuracy);
  std::ostringstream log;
  write_epoch_log(log, r.log, "valid_accuracy");
  EXPECT_EQ(log.str().substr(0, log.str().find('\n')),
            "epoch\tlr\ttrain_loss\tvalid_accuracy\twall_seconds");
}

TEST(TrainDetectorTest, AbsentTopicWarnsAndTrains) {
  std::vector<std::string> warnings;
  ScopedLogSink sink([&](std::string_view level, std::string_view m) {
    if (level == "warning") warnings.emplace_back(m);
  });
  const auto toy = separable_toy();
  const DetectorShape three{.vocab_size = 10, .embed_dim = 4, .encoder_dim = 4, .class_count = 3};
  const auto r = train_detector<double>(toy, {}, three, {.epochs = 1});
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_NE(warnings[0].find("topic 2"), std::string::npos);
  EXPECT_EQ(r.log.size(), 1u);
}

TEST(TrainDetectorTest, EmptyDatasetRejected) {
  EXPECT_THROW(train_detector<float>({}, {}, kToyShape), ValidationError);
}

TEST(TrainDetectorTest, KeywordCorpusAtDefaultsGeneralizes) {
  const auto c = testing::make_keyword_corpus({}, 2000, 400, 7);
  for (const auto& ex : c.test) ASSERT_EQ(testing::keyword_oracle(c, ex.ids), ex.topic);
  const DetectorShape shape{c.vocab.size(), 64, 64, 4};
  const auto r = train_detector<float>(c.train, {}, shape);
  EXPECT_EQ(r.log.size(), 4u);
  EXPECT_GE(evaluate_detector(r.model, c.test).accuracy, 0.95);
}

TEST(TrainDetectorTest, ShuffleOrderBarelyMovesTrainingAccuracy) {
  const auto c = testing::make_keyword_corpus({}, 600, 0, 13);
  const DetectorShape shape{c.vocab.size(), 16, 16, 4};
  const auto a = train_detector<float>(c.train, {}, shape,
                                       {.epochs = 2, .learning_rate = 1e-3, .order_seed = 1});
  const auto b = train_detector<float>(c.train, {}, shape,
                                       {.epochs = 2, .learning_rate = 1e-3, .order_seed = 2});
  EXPECT_NEAR(detector_accuracy(a.model, c.train), detector_accuracy(b.model, c.train), 0.02);
}

TEST(EvaluateDetectorTest, Examples) {
  const std::vector<std::size_t> gold{0, 1, 0, 1};
  EXPECT_DOUBLE_EQ(score_predictions(gold, gold, 2).accuracy, 1.0);
  const std::vector<std::size_t> constant{0, 0, 0, 0};
  const auto r = score_predictions(gold, constant, 2);
  EXPECT_DOUBLE_EQ(r.accuracy, 0.5);
  EXPECT_DOUBLE_EQ(r.topics[0].precision, 0.5);
  EXPECT_DOUBLE_EQ(r.topics[0].recall, 1.0);
  EXPECT_DOUBLE_EQ(r.topics[1].precision, 0.0);
  EXPECT_DOUBLE_EQ(r.topics[1].recall, 0.0);
  EXPECT_THROW(score_predictions({}, {}, 2), ValidationError);
}

TEST(EvaluateDetectorTest, PrecisionRecallMatchBruteForceRecount) {
  Rng rng(8);
  std::vector<std::size_t> gold, pred;
  for (int i = 0; i < 300; ++i) {
    gold.push_back(rng.below(4));
    pred.push_back(rng.uniform() < 0.6 ? gold.back() : rng.below(4));
  }
  const auto r = score_predictions(gold, pred, 4);
  for (std::size_t k = 0; k < 4; ++k) {
    double tp = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < gold.size(); ++i) {
      tp += gold[i] == k && pred[i] == k;
      fp += gold[i] != k && pred[i] == k;
      fn += gold[i] == k && pred[i] != k;
    }
    EXPECT_DOUBLE_EQ(r.topics[k].precision, tp / (tp + fp));
    EXPECT_DOUBLE_EQ(r.topics[k].recall, tp / (tp + fn));
  }
}

TEST(EvaluateDetectorTest, ReportHasTopicRowsAndAccuracyLine) {
  const std::vector<std::size_t> gold{0, 1, 1}, pred{0, 1, 0};
  std::ostringstream out;
  write_detector_report(out, score_predictions(gold, pred, 2), {"Taxonomy", "NOISE"});
  EXPECT_EQ(out.str(),
            "topic\tprecision\trecall\tpredicted\tsupport\n"
            "Taxonomy\t0.500000\t1.000000\t2\t1\n"
            "NOISE\t1.000000\t0.500000\t1\t2\n"
            "ACCURACY\t0.666667\t\t\t3\n");
}

}  // namespace
}  // namespace twag::detector
