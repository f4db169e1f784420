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


#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "twag/cli/commands.hpp"

namespace twag::cli {
namespace {

namespace fs = std::filesystem;

const std::string kDataDir = TWAG_TEST_DATA_DIR;
const std::string kSchemaDir = TWAG_SCHEMA_DIR;

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run(std::vector<std::string> args) {
  args.insert(args.begin(), "twag");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  ScopedLogSink quiet([](std::string_view, std::string_view) {});
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("twag_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

const std::string kTinyOverrides =
    "detector_embed_dim = 12\n"
    "detector_dim = 12\n"
    "detector_lr = 1e-2\n"
    "detector_epochs = 4\n"
    "embed_dim = 10\n"
    "hidden = 12\n"
    "generator_epochs = 2\n"
    "generator_first_lr = 1e-2\n"
    "generator_lr = 1e-2\n"
    "max_sentences = 3\n"
    "max_tokens = 8\n"
    "beam_size = 2\n";

// One corpus plus trained detector and generator shared by the slower tests.
class PipelineTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = fresh_dir("pipeline");
    const auto build = run({"build-corpus", "--articles", kDataDir + "/mini_dump.txt", "--schema",
                            kSchemaDir + "/animal.txt", "--summaries",
                            kDataDir + "/mini_summaries.tsv", "--out", dir_.string()});
    ASSERT_EQ(build.code, 0) << build.err;
    config_ = (dir_ / "twag.cfg").string();
    std::ofstream(config_, std::ios::app) << kTinyOverrides;
    const auto det = run({"train", "--stage", "detector", "--config", config_, "--out",
                          (dir_ / "det.ckpt").string()});
    ASSERT_EQ(det.code, 0) << det.err;
    const auto gen = run({"train", "--stage", "generator", "--config", config_, "--out",
                          (dir_ / "gen.ckpt").string(), "--detector-ckpt",
                          (dir_ / "det.ckpt").string()});
    ASSERT_EQ(gen.code, 0) << gen.err;
  }

  static RunResult generate(const std::string& out, std::vector<std::string> extra = {}) {
    std::vector<std::string> args{"generate", "--detector-ckpt", (dir_ / "det.ckpt").string(),
                                  "--generator-ckpt", (dir_ / "gen.ckpt").string(), "--input",
                                  kDataDir + "/mini_summaries.tsv", "--config", config_, "--out",
                                  out};
    args.insert(args.end(), extra.begin(), extra.end());
    return run(args);
  }

  static inline fs::path dir_;
  static inline std::string config_;
};

TEST(BuildCorpusCommandTest, FixtureCountsAndDeterminism) {
  const auto a = fresh_dir("build_a"), b = fresh_dir("build_b");
  for (const auto& dir : {a, b}) {
    const auto r = run({"build-corpus", "--articles", kDataDir + "/mini_dump.txt", "--schema",
                        kSchemaDir + "/animal.txt", "--out", dir.string(), "--seed", "42"});
    ASSERT_EQ(r.code, 0) << r.err;
    // Same frozen recount as the corpus tests.
    EXPECT_NE(r.out.find("train\t26\t3\t5\t12\t3\t3\n"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("valid\t1\t0\t0\t1\t0\t0\n"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("test\t1\t0\t0\t1\t0\t0\n"), std::string::npos) << r.out;
  }
  for (const char* f : {"vocab.txt", "detector_train.tsv", "detector_valid.tsv",
                        "detector_test.tsv", "label_frequency.tsv"}) {
    EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
    EXPECT_FALSE(slurp(a / f).empty()) << f;
  }
  EXPECT_EQ(io::load_config((a / "twag.cfg").string()).seed, 42u);
}

TEST(BuildCorpusCommandTest, MissingOrBadSchemaIsUsageError) {
  const auto dir = fresh_dir("build_bad");
  auto r = run({"build-corpus", "--articles", kDataDir + "/mini_dump.txt", "--schema",
                (dir / "absent.txt").string(), "--out", dir.string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("absent.txt"), std::string::npos);

  std::ofstream(dir / "bad.txt") << "@domain x\nTopic: Label\nOther: Label\n";
  r = run({"build-corpus", "--articles", kDataDir + "/mini_dump.txt", "--schema",
           (dir / "bad.txt").string(), "--out", dir.string()});
  EXPECT_EQ(r.code, 2) << r.err;

  r = run({"build-corpus", "--articles", (dir / "none.txt").string(), "--schema",
           kSchemaDir + "/animal.txt", "--out", dir.string()});
  EXPECT_EQ(r.code, 2);
}

std::size_t total_examples(const std::string& out) {
  std::size_t total = 0;
  for (const auto& line : lines_of(out)) {
    const auto fields = split(line, "\t");
    if (fields[0] == "train" || fields[0] == "valid" || fields[0] == "test")
      total += std::stoul(fields[1]);
  }
  return total;
}

TEST(BuildCorpusCommandTest, SmallerBudgetDropsLaterLabels) {
  const auto dir = fresh_dir("build_tiers");
  std::ofstream(dir / "tiered.txt") << "@domain animal\n"
                                       "Distribution: Distribution\n"
                                       "Taxonomy: Taxonomy\n"
                                       "Description: Description, Habitat@20\n"
                                       "noise: /cookie/\n";
  auto at = [&](const std::string& n) {
    const auto r = run({"build-corpus", "--articles", kDataDir + "/mini_dump.txt", "--schema",
                        (dir / "tiered.txt").string(), "--out", (dir / n).string(), "--n-t", n});
    EXPECT_EQ(r.code, 0) << r.err;
    return total_examples(r.out);
  };
  // Independent count of paragraphs under "Habitat" headings in the dump.
  std::size_t habitat = 0;
  for (const auto& article : corpus::load_articles(kDataDir + "/mini_dump.txt"))
    for (const auto& section : article.sections)
      if (section.label == "Habitat")
        for (const auto& p : corpus::split_paragraphs(section.content))
          if (p.find("cookie") == std::string::npos) ++habitat;
  ASSERT_GT(habitat, 0u);
  EXPECT_EQ(at("20") - at("10"), habitat);
}

TEST(StatsCommandTest, RankTableIsNonIncreasing) {
  const auto r = run({"stats", "--articles", kDataDir + "/mini_dump.txt"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto lines = lines_of(r.out);
  ASSERT_GT(lines.size(), 2u);
  EXPECT_EQ(lines[0], "rank\tlabel\tcount");
  std::size_t prev = SIZE_MAX;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto fields = split(lines[i], "\t");
    ASSERT_EQ(fields.size(), 3u);
    EXPECT_EQ(std::stoul(fields[0]), i);
    const std::size_t count = std::stoul(fields[2]);
    EXPECT_LE(count, prev);
    prev = count;
  }
}

TEST(UsageTest, ExitCodes) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
  EXPECT_EQ(run({"train", "--stage", "detector"}).code, 2);
}

TEST(TrainCommandTest, InvalidStageAndConfigErrors) {
  const auto dir = fresh_dir("train_bad");
  const std::string cfg = (dir / "run.cfg").string();
  std::ofstream(cfg) << "seed = 3\n";
  EXPECT_EQ(run({"train", "--stage", "decoder", "--config", cfg, "--out", "x"}).code, 2);
  EXPECT_EQ(run({"train", "--stage", "detector", "--config", (dir / "no.cfg").string(), "--out",
                 (dir / "x").string()})
                .code,
            2);
  std::ofstream(cfg) << "seed = 3\nwidth = 9\n";
  const auto r = run({"train", "--stage", "detector", "--config", cfg, "--out",
                      (dir / "x").string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("width"), std::string::npos);
  // Vocabulary path unset.
  std::ofstream(cfg) << "seed = 3\n";
  EXPECT_EQ(run({"train", "--stage", "detector", "--config", cfg, "--out", (dir / "x").string()})
                .code,
            2);
}

TEST_F(PipelineTest, TrainWritesLogAndResolvedConfig) {
  const auto log = lines_of(slurp(dir_ / "det.ckpt.log.tsv"));
  ASSERT_FALSE(log.empty());
  EXPECT_EQ(log[0], "# seed = 42");
  std::size_t header = 0;
  while (header < log.size() && log[header].rfind("#", 0) == 0) ++header;
  ASSERT_LT(header, log.size());
  EXPECT_EQ(log[header], "epoch\tlr\ttrain_loss\tvalid_accuracy\twall_seconds");
  EXPECT_EQ(log.size() - header - 1, 4u);
  const auto resolved = io::load_config((dir_ / "det.ckpt.config").string());
  EXPECT_EQ(resolved.detector_dim, 12u);
  EXPECT_TRUE(fs::exists(dir_ / "det.ckpt.report.tsv"));
  EXPECT_NE(slurp(dir_ / "gen.ckpt.log.tsv").find("epoch\tlr\ttrain_loss\tvalid_loss"),
            std::string::npos);
}

TEST_F(PipelineTest, RerunGivesIdenticalCheckpoint) {
  for (const char* stage : {"detector", "generator"}) {
    const std::string name = std::string(stage) == "detector" ? "det" : "gen";
    const auto again = (dir_ / (name + "_again.ckpt")).string();
    const auto r = run({"train", "--stage", stage, "--config", config_, "--out", again,
                        "--detector-ckpt", (dir_ / "det.ckpt").string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(slurp(again), slurp(dir_ / (name + ".ckpt"))) << stage;
  }
}

TEST_F(PipelineTest, SeedFlagOverridesConfig) {
  const auto out = (dir_ / "det_seed7.ckpt").string();
  ASSERT_EQ(run({"train", "--stage", "detector", "--config", config_, "--out", out, "--seed", "7"})
                .code,
            0);
  EXPECT_NE(slurp(out), slurp(dir_ / "det.ckpt"));
  EXPECT_EQ(io::load_config(out + ".config").seed, 7u);
}

TEST_F(PipelineTest, BothModesAndBeamOneProduceOutputs) {
  const std::size_t records = lines_of(slurp(kDataDir + "/mini_summaries.tsv")).size();
  for (const char* mode : {"soft", "hard"}) {
    for (const char* beam : {"1", "3"}) {
      const auto out = (dir_ / (std::string("gen_") + mode + beam + ".txt")).string();
      const auto r = generate(out, {"--mode", mode, "--beam", beam});
      ASSERT_EQ(r.code, 0) << r.err;
      const auto lines = lines_of(slurp(out));
      EXPECT_EQ(lines.size(), records) << mode;
      // "Cookie page" only has NOISE paragraphs under any detector that
      // learned the cookie rule; either way every line is well formed.
      for (const auto& l : lines) EXPECT_FALSE(trim(l).empty() && l != kEmptyAbstract);
    }
  }
  const auto again = (dir_ / "gen_soft1_again.txt").string();
  ASSERT_EQ(generate(again, {"--mode", "soft", "--beam", "1"}).code, 0);
  EXPECT_EQ(slurp(again), slurp(dir_ / "gen_soft1.txt"));
}

TEST_F(PipelineTest, BeamOneMatchesGreedyDecoding) {
  const auto out = (dir_ / "gen_beam1.txt").string();
  ASSERT_EQ(generate(out, {"--beam", "1"}).code, 0);
  const auto vocab = corpus::Vocabulary::load((dir_ / "vocab.txt").string());
  const auto det = detector_from_archive(io::load_archive((dir_ / "det.ckpt").string()));
  const auto gen = generator_from_archive(io::load_archive((dir_ / "gen.ckpt").string()));
  const auto config = io::load_config(config_);
  std::ifstream in(kDataDir + "/mini_summaries.tsv");
  const auto records = read_input_records(in, vocab, "fixture");
  std::vector<std::string> expected;
  for (const auto& r : records) {
    std::vector<std::vector<int>> ids;
    for (const auto& p : r.paragraphs) ids.push_back(p.ids);
    const auto ttgs = generator::group_paragraphs(r.paragraphs, detector::detect_topics(det, ids),
                                                  gen.topic_count(), config.ttg_cap);
    if (ttgs.token_count() == 0) {
      expected.emplace_back(kEmptyAbstract);
      continue;
    }
    // Hand-driven loop with the greedy decoder.
    generator::DecodeConfig decode;
    decode.max_sentences = config.max_sentences;
    decode.max_tokens = config.max_tokens;
    ad::PauseRecording<float> no_tape;
    const auto enc = generator::encode_topics(gen, ttgs);
    const auto map = generator::build_source_map(ttgs, gen.vocab_size());
    auto h = ad::Tensor<float>::zeros({1, gen.hidden()});
    auto e = ad::Tensor<float>::zeros({1, gen.hidden()});
    eval::Abstract sentences;
    while (true) {
      const auto step = generator::predict_topic_step(gen, h, e, enc.topics, decode.mode);
      if (step.p_stop.item() > decode.stop_threshold || sentences.size() >= decode.max_sentences)
        break;
      eval::Tokens s;
      for (int id : generator::decode_greedy(gen, step.r, enc, map, decode.max_tokens))
        s.push_back(map.surface(id, vocab));
      sentences.push_back(s);
      h = step.h;
      e = step.e;
    }
    expected.push_back(format_abstract(eval::dedup_sentences(sentences, config.dedup_threshold)));
  }
  EXPECT_EQ(lines_of(slurp(out)), expected);
}

TEST_F(PipelineTest, AllNoiseRecordsGetMarker) {
  // A detector that always answers NOISE.
  auto det = detector_from_archive(io::load_archive((dir_ / "det.ckpt").string()));
  auto bias = det.classifier.bias.values();
  bias[det.class_count() - 1] = 1e6f;
  const auto noisy = (dir_ / "noise_det.ckpt").string();
  io::save_archive(noisy, io::to_archive(det.parameters()));
  const auto out = (dir_ / "gen_noise.txt").string();
  const auto r = run({"generate", "--detector-ckpt", noisy, "--generator-ckpt",
                      (dir_ / "gen.ckpt").string(), "--input", kDataDir + "/mini_summaries.tsv",
                      "--config", config_, "--out", out});
  ASSERT_EQ(r.code, 0) << r.err;
  for (const auto& l : lines_of(slurp(out))) EXPECT_EQ(l, kEmptyAbstract);
  EXPECT_NE(r.err.find("Arctic fox"), std::string::npos);
  EXPECT_NE(r.err.find("no non-NOISE paragraphs"), std::string::npos);
}

TEST_F(PipelineTest, MismatchedVocabularyNamesTensor) {
  const auto small = (dir_ / "small_vocab.txt").string();
  {
    std::ofstream f(small);
    corpus::Vocabulary v;
    v.insert("fox");
    v.write(f);
  }
  const auto r = generate((dir_ / "gen_mismatch.txt").string(), {"--vocab", small});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("detector.encoder.embedding"), std::string::npos) << r.err;
}

TEST_F(PipelineTest, MismatchedTopicCountNamesTensor) {
  const auto vocab = corpus::Vocabulary::load((dir_ / "vocab.txt").string());
  generator::GeneratorModel<float> other({vocab.size(), 10, 12, 2});
  const auto path = (dir_ / "gen_two_topics.ckpt").string();
  io::save_archive(path, io::to_archive(other.parameters()));
  const auto r = run({"generate", "--detector-ckpt", (dir_ / "det.ckpt").string(),
                      "--generator-ckpt", path, "--input", kDataDir + "/mini_summaries.tsv",
                      "--config", config_, "--out", (dir_ / "x.txt").string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("generator.predictor.topic_logits.weight"), std::string::npos) << r.err;
}

TEST_F(PipelineTest, CorruptCheckpointIsUsageError) {
  const auto path = (dir_ / "garbage.ckpt").string();
  std::ofstream(path) << "not a checkpoint";
  const auto r = run({"generate", "--detector-ckpt", path, "--generator-ckpt",
                      (dir_ / "gen.ckpt").string(), "--input", kDataDir + "/mini_summaries.tsv",
                      "--config", config_, "--out", (dir_ / "x.txt").string()});
  EXPECT_EQ(r.code, 2);
}

TEST(EvaluateCommandTest, GoldAgainstGoldIsPerfect) {
  const auto dir = fresh_dir("eval_gold");
  const auto report = (dir / "report.tsv").string();
  const auto gold = kDataDir + "/mini_summaries.tsv";
  std::ofstream plain(dir / "gold.txt");
  for (const auto& line : lines_of(slurp(gold))) plain << split(line, "\t")[2] << '\n';
  plain.close();
  const auto r2 = run({"evaluate", "--generated", (dir / "gold.txt").string(), "--gold", gold,
                       "--out", report});
  ASSERT_EQ(r2.code, 0) << r2.err;
  const auto lines = lines_of(slurp(report));
  EXPECT_EQ(lines.back(), "MEAN\t1.000000\t1.000000\t1.000000");
}

TEST(EvaluateCommandTest, MeansMatchRowRecount) {
  const auto dir = fresh_dir("eval_recount");
  std::ofstream(dir / "gen.txt") << "the fox is small .\n<empty>\nthe cat sat on the mat\n";
  std::ofstream(dir / "gold.txt") << "The fox is a small fox.\nA bird.\nThe cat sat on a mat.\n";
  const auto r = run({"evaluate", "--generated", (dir / "gen.txt").string(), "--gold",
                      (dir / "gold.txt").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto lines = lines_of(r.out);
  ASSERT_EQ(lines.size(), 5u);
  double sums[3] = {0, 0, 0};
  for (std::size_t i = 1; i <= 3; ++i) {
    const auto f = split(lines[i], "\t");
    for (int k = 0; k < 3; ++k) sums[k] += std::stod(f[k + 1]);
  }
  const auto mean = split(lines[4], "\t");
  ASSERT_EQ(mean[0], "MEAN");
  for (int k = 0; k < 3; ++k) EXPECT_NEAR(std::stod(mean[k + 1]), sums[k] / 3.0, 1e-6);
  EXPECT_EQ(split(lines[2], "\t")[1], "0.000000");  // <empty> scores zero
}

TEST(EvaluateCommandTest, MisalignedCountsAreUsageErrors) {
  const auto dir = fresh_dir("eval_bad");
  std::ofstream(dir / "empty.txt") << "";
  std::ofstream(dir / "gold.txt") << "One sentence.\nAnother one.\n";
  std::ofstream(dir / "one.txt") << "one sentence .\n";
  EXPECT_EQ(run({"evaluate", "--generated", (dir / "empty.txt").string(), "--gold",
                 (dir / "gold.txt").string()})
                .code,
            2);
  EXPECT_EQ(run({"evaluate", "--generated", (dir / "one.txt").string(), "--gold",
                 (dir / "gold.txt").string()})
                .code,
            2);
  EXPECT_EQ(run({"evaluate", "--generated", (dir / "missing.txt").string(), "--gold",
                 (dir / "gold.txt").string()})
                .code,
            2);
}

TEST(GeneratedLineTest, SplitsOnMarkerOrPunctuation) {
  EXPECT_EQ(parse_generated_line("a b ⟨s⟩ c d").size(), 2u);
  EXPECT_EQ(parse_generated_line("the fox ran . it was fast .").size(), 2u);
  EXPECT_TRUE(parse_generated_line(kEmptyAbstract).empty());
  EXPECT_EQ(format_abstract({{"a", "b"}, {"c"}}), "a b ⟨s⟩ c");
  EXPECT_EQ(parse_generated_line(format_abstract({{"a", "b"}, {"c"}})),
            (eval::Abstract{{"a", "b"}, {"c"}}));
}

}  // namespace
}  // namespace twag::cli
