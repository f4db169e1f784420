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


// The twag command line: build-corpus, stats, train, generate, evaluate.
// Exit codes: 0 success, 1 runtime failure, 2 usage or validation error.

#ifndef TWAG_CLI_COMMANDS_HPP
#define TWAG_CLI_COMMANDS_HPP

#include <CLI11.hpp>

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "twag/corpus/detector_dataset.hpp"
#include "twag/corpus/label_stats.hpp"
#include "twag/corpus/sentence_splitter.hpp"
#include "twag/corpus/summarization_dataset.hpp"
#include "twag/corpus/tokenizer.hpp"
#include "twag/corpus/topic_schema.hpp"
#include "twag/corpus/vocabulary.hpp"
#include "twag/corpus/wiki_article.hpp"
#include "twag/detector/detector.hpp"
#include "twag/errors.hpp"
#include "twag/eval/rouge.hpp"
#include "twag/generator/embeddings.hpp"
#include "twag/generator/generator.hpp"
#include "twag/generator/model.hpp"
#include "twag/io/checkpoint.hpp"
#include "twag/io/config.hpp"
#include "twag/util/epoch_log.hpp"
#include "twag/util/log.hpp"
#include "twag/util/random.hpp"
#include "twag/util/strings.hpp"

namespace twag::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

// Written in place of an abstract when a record has no usable input.
inline constexpr std::string_view kEmptyAbstract = "<empty>";

namespace fs = std::filesystem;

inline void require_file(const std::string& path, const std::string& what) {
  if (path.empty()) throw ValidationError(what + " path is not set");
  if (!fs::is_regular_file(path)) throw ValidationError(what + " not found: " + path);
}

inline std::ofstream open_output(const std::string& path) {
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

inline corpus::Vocabulary load_vocabulary(const std::string& path) {
  require_file(path, "vocabulary");
  return corpus::Vocabulary::load(path);
}

// ---------------------------------------------------------------------------
// Checkpoints with shapes inferred from their tensors

inline const io::NamedTensor& matrix_tensor(const io::TensorArchive& archive,
                                            const std::string& name) {
  const auto& t = io::find_tensor(archive, name);
  if (t.shape.size() != 2)
    throw ValidationError("checkpoint tensor '" + name + "' is not a matrix");
  return t;
}

inline detector::DetectorModel<float> detector_from_archive(const io::TensorArchive& archive) {
  const auto& emb = matrix_tensor(archive, "detector.encoder.embedding");
  const auto& proj = matrix_tensor(archive, "detector.encoder.projection.weight");
  const auto& cls = matrix_tensor(archive, "detector.classifier.weight");
  if (cls.shape[1] < 2)
    throw ValidationError("checkpoint tensor 'detector.classifier.weight' has fewer than 2 classes");
  detector::DetectorModel<float> model({emb.shape[0], emb.shape[1], proj.shape[1], cls.shape[1]});
  auto params = model.parameters();
  io::load_parameters(archive, params);
  return model;
}

inline generator::GeneratorModel<float> generator_from_archive(const io::TensorArchive& archive) {
  const auto& emb = matrix_tensor(archive, "generator.embedding");
  const auto& gru = matrix_tensor(archive, "generator.predictor.gru.hidden_weight");
  const auto& topics = matrix_tensor(archive, "generator.predictor.topic_logits.weight");
  generator::GeneratorModel<float> model({emb.shape[0], emb.shape[1], gru.shape[0], topics.shape[1]});
  auto params = model.parameters();
  io::load_parameters(archive, params);
  return model;
}

inline void check_vocab_size(std::size_t rows, const corpus::Vocabulary& vocab,
                             const std::string& tensor) {
  if (rows != vocab.size()) {
    throw ValidationError("checkpoint tensor '" + tensor + "' has " + std::to_string(rows) +
                          " vocabulary rows but the vocabulary has " +
                          std::to_string(vocab.size()) + " entries");
  }
}

inline void check_topic_count(const detector::DetectorModel<float>& det,
                              const generator::GeneratorModel<float>& gen) {
  if (gen.topic_count() + 1 != det.class_count()) {
    throw ValidationError("checkpoint tensor 'generator.predictor.topic_logits.weight' has " +
                          std::to_string(gen.topic_count()) + " topics but the detector has " +
                          std::to_string(det.class_count() - 1));
  }
}

// ---------------------------------------------------------------------------
// Per-record generation

struct InputRecord {
  std::string title;
  std::vector<corpus::TokenizedText> paragraphs;
};

/// "title <TAB> paragraphs [<TAB> anything]"; paragraphs are separated by the
/// paragraph marker. A trailing gold field is ignored.
inline std::vector<InputRecord> read_input_records(std::istream& in, const corpus::Vocabulary& vocab,
                                                   const std::string& source) {
  std::vector<InputRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    const auto fields = split(line, "\t");
    if (fields.size() < 2 || fields.size() > 3)
      throw ParseError(source, line_no, "expected 2 or 3 tab-separated fields");
    InputRecord record{std::string(trim(fields[0])), {}};
    for (const auto& p : split(fields[1], corpus::kParagraphSeparator)) {
      auto tokens = corpus::tokenize(p);
      if (tokens.empty()) continue;
      corpus::TokenizedText text{std::move(tokens), {}};
      corpus::encode_text(text, vocab);
      record.paragraphs.push_back(std::move(text));
    }
    out.push_back(std::move(record));
  }
  return out;
}

/// Detects paragraph topics and generates a deduplicated abstract. Returns
/// nothing when every paragraph is NOISE (or there are none).
inline std::optional<eval::Abstract> generate_for_record(
    const detector::DetectorModel<float>& det, const generator::GeneratorModel<float>& gen,
    const corpus::Vocabulary& vocab, const std::vector<corpus::TokenizedText>& paragraphs,
    const generator::DecodeConfig& decode, double dedup_threshold) {
  std::vector<std::vector<int>> ids;
  for (const auto& p : paragraphs) ids.push_back(p.ids);
  const auto topics = detector::detect_topics(det, ids);
  const auto ttgs =
      generator::group_paragraphs(paragraphs, topics, gen.topic_count(), decode.ttg_cap);
  if (ttgs.token_count() == 0) return std::nullopt;
  const auto abstract = generator::generate_abstract(gen, ttgs, vocab, decode);
  return eval::dedup_sentences(abstract.sentences, dedup_threshold);
}

inline std::string format_abstract(const eval::Abstract& sentences) {
  std::vector<std::string> parts;
  for (const auto& s : sentences) parts.push_back(join(s, " "));
  return join(parts, " " + std::string(corpus::kSentenceSeparator) + " ");
}

/// A generated line back into sentences: the sentence marker when present,
/// otherwise terminal punctuation regardless of the next word's case.
inline eval::Abstract parse_generated_line(std::string_view line) {
  eval::Abstract out;
  if (trim(line) == kEmptyAbstract) return out;
  std::vector<std::string> sentences;
  if (line.find(corpus::kSentenceSeparator) != std::string_view::npos) {
    sentences = corpus::abstract_sentences(line);
  } else {
    corpus::SplitOptions options;
    options.require_capital = false;
    sentences = corpus::split_sentences(line, options);
  }
  for (const auto& s : sentences) {
    auto tokens = corpus::tokenize(s);
    if (!tokens.empty()) out.push_back(std::move(tokens));
  }
  return out;
}

/// Gold abstracts: either plain lines or dataset records, whose third field
/// is the abstract.
inline eval::Abstract parse_gold_line(std::string_view line) {
  const auto fields = split(line, "\t");
  const std::string_view text = fields.size() == 3 ? std::string_view(fields[2]) : line;
  eval::Abstract out;
  for (const auto& s : corpus::abstract_sentences(text)) {
    auto tokens = corpus::tokenize(s);
    if (!tokens.empty()) out.push_back(std::move(tokens));
  }
  return out;
}

inline std::vector<std::string> read_nonempty_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read " + path);
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!trim(line).empty()) out.push_back(line);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Commands

struct BuildCorpusArgs {
  std::string articles;
  std::string schema;
  std::string summaries;
  std::string out;
  std::uint64_t seed = 42;
  std::size_t n_t = 20;
  std::size_t vocab_cap = 50000;
};

inline int cmd_build_corpus(const BuildCorpusArgs& a, std::ostream& out) {
  require_file(a.articles, "articles");
  require_file(a.schema, "topic schema");
  if (!a.summaries.empty()) require_file(a.summaries, "summaries");
  const auto schema = corpus::load_topic_schema(a.schema, a.n_t);
  const auto articles = corpus::load_articles(a.articles);

  auto paragraphs = corpus::collect_topic_paragraphs(articles, schema);
  std::vector<corpus::SummarizationExample> summaries;
  if (!a.summaries.empty()) {
    std::ifstream in(a.summaries);
    const auto records = corpus::read_summarization_records(in, a.summaries);
    for (auto& p : corpus::collect_noise_paragraphs(records, schema)) paragraphs.push_back(std::move(p));
    for (const auto& r : records) {
      auto ex = corpus::tokenize_record(r);
      if (ex.paragraphs.empty() || ex.abstract.empty()) {
        log_warning(a.summaries + ": record '" + r.title + "' has no tokens, skipped");
        continue;
      }
      summaries.push_back(std::move(ex));
    }
  }

  std::vector<std::vector<std::string>> token_corpus;
  for (const auto& p : paragraphs) token_corpus.push_back(p.tokens);
  for (const auto& ex : summaries) {
    for (const auto& p : ex.paragraphs) token_corpus.push_back(p.tokens);
    for (const auto& s : ex.abstract) token_corpus.push_back(s.tokens);
  }
  const auto vocab = corpus::build_vocabulary(token_corpus, a.vocab_cap);
  const auto dataset = corpus::build_detector_dataset(paragraphs, vocab, a.seed);

  const fs::path dir(a.out);
  fs::create_directories(dir);
  vocab.save((dir / "vocab.txt").string());
  corpus::save_detector_examples((dir / "detector_train.tsv").string(), dataset.train);
  corpus::save_detector_examples((dir / "detector_valid.tsv").string(), dataset.valid);
  corpus::save_detector_examples((dir / "detector_test.tsv").string(), dataset.test);
  {
    auto freq = open_output((dir / "label_frequency.tsv").string());
    corpus::write_rank_frequency(freq, corpus::label_frequency_stats(articles));
  }

  io::RunConfig config;
  config.seed = a.seed;
  config.n_t = a.n_t;
  config.vocab_cap = a.vocab_cap;
  config.schema = fs::absolute(a.schema).string();
  config.vocab_path = fs::absolute(dir / "vocab.txt").string();
  config.detector_train = fs::absolute(dir / "detector_train.tsv").string();
  config.detector_valid = fs::absolute(dir / "detector_valid.tsv").string();
  config.detector_test = fs::absolute(dir / "detector_test.tsv").string();
  if (!summaries.empty()) {
    std::vector<corpus::SummarizationExample> split_sets[3];
    for (auto& ex : summaries)
      split_sets[static_cast<int>(corpus::split_of(ex.title, 0, a.seed))].push_back(ex);
    const char* names[3] = {"generator_train.tsv", "generator_valid.tsv", "generator_test.tsv"};
    for (int i = 0; i < 3; ++i)
      corpus::save_summarization_dataset((dir / names[i]).string(), split_sets[i]);
    config.generator_train = fs::absolute(dir / names[0]).string();
    config.generator_valid = fs::absolute(dir / names[1]).string();
    out << "summaries\t" << split_sets[0].size() << '\t' << split_sets[1].size() << '\t'
        << split_sets[2].size() << '\n';
  }
  {
    auto cfg = open_output((dir / "twag.cfg").string());
    io::write_config(cfg, config);
  }

  out << "split\texamples";
  for (std::size_t k = 0; k < schema.class_count(); ++k) out << '\t' << schema.class_name(k);
  out << '\n';
  auto row = [&](const char* name, const std::vector<corpus::TopicParagraphExample>& split) {
    std::vector<std::size_t> counts(schema.class_count(), 0);
    for (const auto& ex : split) ++counts[ex.topic];
    out << name << '\t' << split.size();
    for (auto c : counts) out << '\t' << c;
    out << '\n';
  };
  row("train", dataset.train);
  row("valid", dataset.valid);
  row("test", dataset.test);
  out << "vocabulary\t" << vocab.size() << '\n';
  return kExitOk;
}

inline int cmd_stats(const std::string& articles_path, const std::string& out_path,
                     std::ostream& out) {
  require_file(articles_path, "articles");
  const auto rows = corpus::label_frequency_stats(corpus::load_articles(articles_path));
  if (out_path.empty()) {
    corpus::write_rank_frequency(out, rows);
  } else {
    auto file = open_output(out_path);
    corpus::write_rank_frequency(file, rows);
  }
  return kExitOk;
}

struct TrainArgs {
  std::string stage;
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::string detector_checkpoint;
};

inline void write_run_log(const std::string& path, const io::RunConfig& config,
                          const std::vector<EpochRecord>& rows, const std::string& metric) {
  auto log = open_output(path);
  std::ostringstream dump;
  io::write_config(dump, config);
  std::istringstream lines(dump.str());
  for (std::string line; std::getline(lines, line);) log << "# " << line << '\n';
  write_epoch_log(log, rows, metric);
}

inline int train_detector_stage(const io::RunConfig& c, const std::string& out_path,
                                std::ostream& out) {
  const auto vocab = load_vocabulary(c.vocab_path);
  require_file(c.schema, "topic schema");
  const auto schema = corpus::load_topic_schema(c.schema, c.n_t);
  require_file(c.detector_train, "detector training set");
  const auto train =
      corpus::load_detector_examples(c.detector_train, schema.class_count(), vocab.size());
  std::vector<corpus::TopicParagraphExample> valid, test;
  if (!c.detector_valid.empty()) {
    require_file(c.detector_valid, "detector validation set");
    valid = corpus::load_detector_examples(c.detector_valid, schema.class_count(), vocab.size());
  }
  if (!c.detector_test.empty()) {
    require_file(c.detector_test, "detector test set");
    test = corpus::load_detector_examples(c.detector_test, schema.class_count(), vocab.size());
  }
  detector::DetectorTrainOptions options;
  options.epochs = c.detector_epochs;
  options.learning_rate = c.detector_lr;
  options.init_range = c.init_range;
  options.init_seed = c.seed;
  options.order_seed = c.seed;
  const auto result = detector::train_detector<float>(
      train, valid, {vocab.size(), c.detector_embed_dim, c.detector_dim, schema.class_count()},
      options);
  {
    auto ckpt = open_output(out_path);
    io::write_archive(ckpt, io::to_archive(result.model.parameters()));
  }
  write_run_log(out_path + ".log.tsv", c, result.log, "valid_accuracy");
  out << "best_epoch\t" << result.best_epoch << '\n';
  out << "best_valid_accuracy\t" << result.best_valid_accuracy << '\n';
  if (!test.empty()) {
    std::vector<std::string> names;
    for (std::size_t k = 0; k < schema.class_count(); ++k) names.push_back(schema.class_name(k));
    const auto report = detector::evaluate_detector(result.model, test);
    auto file = open_output(out_path + ".report.tsv");
    detector::write_detector_report(file, report, names);
    out << "test_accuracy\t" << report.accuracy << '\n';
  }
  return kExitOk;
}

inline std::vector<generator::GeneratorExample> prepare_generator_set(
    const std::string& path, const corpus::Vocabulary& vocab,
    const detector::DetectorModel<float>& det, std::size_t cap) {
  const auto examples = corpus::load_summarization_dataset(path, &vocab);
  std::vector<generator::GeneratorExample> out;
  for (const auto& ex : examples) {
    std::vector<std::vector<int>> ids;
    for (const auto& p : ex.paragraphs) ids.push_back(p.ids);
    out.push_back(generator::prepare_generator_example(ex, detector::detect_topics(det, ids),
                                                       det.class_count() - 1, cap));
  }
  return out;
}

inline int train_generator_stage(const io::RunConfig& c, const std::string& out_path,
                                 std::ostream& out) {
  const auto vocab = load_vocabulary(c.vocab_path);
  require_file(c.detector_checkpoint, "detector checkpoint");
  const auto det = detector_from_archive(io::load_archive(c.detector_checkpoint));
  check_vocab_size(det.shape().vocab_size, vocab, "detector.encoder.embedding");
  require_file(c.generator_train, "generator training set");
  const auto train = prepare_generator_set(c.generator_train, vocab, det, c.ttg_cap);
  std::vector<generator::GeneratorExample> valid;
  if (!c.generator_valid.empty()) {
    require_file(c.generator_valid, "generator validation set");
    valid = prepare_generator_set(c.generator_valid, vocab, det, c.ttg_cap);
  }

  generator::GeneratorModel<float> model({vocab.size(), c.embed_dim, c.hidden, det.class_count() - 1});
  Rng rng(c.seed);
  model.init(rng, c.init_range);
  if (!c.pretrained_vectors.empty()) {
    const auto vectors = generator::load_pretrained_vectors(c.pretrained_vectors, c.embed_dim);
    std::vector<std::string> corpus_tokens;
    for (const auto& ex : train) {
      for (const auto& g : ex.ttgs.groups)
        corpus_tokens.insert(corpus_tokens.end(), g.tokens.begin(), g.tokens.end());
      for (const auto& s : ex.abstract)
        corpus_tokens.insert(corpus_tokens.end(), s.tokens.begin(), s.tokens.end());
    }
    const auto table = generator::init_embeddings<float>(vocab, c.embed_dim, rng, &vectors,
                                                         corpus_tokens, c.init_range);
    model.embedding.assign(table.values());
  }

  generator::GeneratorTrainOptions options;
  options.epochs = c.generator_epochs;
  options.first_learning_rate = c.generator_first_lr;
  options.learning_rate = c.generator_lr;
  options.mode = generator::parse_topic_mode(c.topic_mode);
  options.stop_weight = c.stop_weight;
  options.order_seed = c.seed;
  const auto result = generator::train_generator(model, train, valid, options);
  {
    auto ckpt = open_output(out_path);
    io::write_archive(ckpt, io::to_archive(result.model.parameters()));
  }
  write_run_log(out_path + ".log.tsv", c, result.log, "valid_loss");
  out << "best_epoch\t" << result.best_epoch << '\n';
  out << "best_valid_loss\t" << result.best_valid_loss << '\n';
  return kExitOk;
}

inline int cmd_train(const TrainArgs& a, std::ostream& out) {
  require_file(a.config, "config");
  io::RunConfig config = io::load_config(a.config);
  if (a.seed) config.seed = *a.seed;
  if (!a.detector_checkpoint.empty()) config.detector_checkpoint = a.detector_checkpoint;
  {
    auto resolved = open_output(a.out + ".config");
    io::write_config(resolved, config);
  }
  if (a.stage == "detector") return train_detector_stage(config, a.out, out);
  if (a.stage == "generator") return train_generator_stage(config, a.out, out);
  throw ValidationError("unknown stage '" + a.stage + "' (expected detector or generator)");
}

struct GenerateArgs {
  std::string detector_checkpoint;
  std::string generator_checkpoint;
  std::string input;
  std::string out;
  std::string config;
  std::string vocab;
  std::optional<std::string> mode;
  std::optional<std::size_t> beam;
};

inline int cmd_generate(const GenerateArgs& a, std::ostream& out, std::ostream& err) {
  io::RunConfig config;
  if (!a.config.empty()) {
    require_file(a.config, "config");
    config = io::load_config(a.config);
  }
  if (a.mode) config.topic_mode = *a.mode;
  if (a.beam) config.beam_size = *a.beam;
  generator::DecodeConfig decode;
  decode.mode = generator::parse_topic_mode(config.topic_mode);
  decode.beam_size = config.beam_size;
  decode.stop_threshold = config.stop_threshold;
  decode.max_sentences = config.max_sentences;
  decode.max_tokens = config.max_tokens;
  decode.ttg_cap = config.ttg_cap;
  decode.validate();
  if (!(config.dedup_threshold > 0.0 && config.dedup_threshold <= 1.0))
    throw ValidationError("dedup_threshold must lie in (0, 1]");

  const auto vocab = load_vocabulary(a.vocab.empty() ? config.vocab_path : a.vocab);
  require_file(a.detector_checkpoint, "detector checkpoint");
  require_file(a.generator_checkpoint, "generator checkpoint");
  require_file(a.input, "input");
  const auto det_archive = io::load_archive(a.detector_checkpoint);
  const auto gen_archive = io::load_archive(a.generator_checkpoint);
  check_vocab_size(matrix_tensor(det_archive, "detector.encoder.embedding").shape[0], vocab,
                   "detector.encoder.embedding");
  check_vocab_size(matrix_tensor(gen_archive, "generator.embedding").shape[0], vocab,
                   "generator.embedding");
  const auto det = detector_from_archive(det_archive);
  const auto gen = generator_from_archive(gen_archive);
  check_topic_count(det, gen);

  std::ifstream in(a.input);
  const auto records = read_input_records(in, vocab, a.input);
  auto file = open_output(a.out);
  std::size_t empty = 0;
  for (const auto& r : records) {
    const auto abstract =
        generate_for_record(det, gen, vocab, r.paragraphs, decode, config.dedup_threshold);
    if (!abstract) {
      err << "generate: '" << r.title << "' has no non-NOISE paragraphs; wrote " << kEmptyAbstract
          << '\n';
      file << kEmptyAbstract << '\n';
      ++empty;
      continue;
    }
    file << format_abstract(*abstract) << '\n';
  }
  out << "records\t" << records.size() << '\n' << "empty\t" << empty << '\n';
  return kExitOk;
}

struct EvaluateArgs {
  std::string generated;
  std::string gold;
  std::string out;
  double dedup_threshold = 0.5;
};

inline int cmd_evaluate(const EvaluateArgs& a, std::ostream& out) {
  require_file(a.generated, "generated abstracts");
  require_file(a.gold, "gold abstracts");
  const auto generated_lines = read_nonempty_lines(a.generated);
  const auto gold_lines = read_nonempty_lines(a.gold);
  if (generated_lines.size() != gold_lines.size()) {
    throw ValidationError("evaluate: " + std::to_string(generated_lines.size()) +
                          " generated abstracts but " + std::to_string(gold_lines.size()) +
                          " gold abstracts");
  }
  std::vector<eval::Abstract> generated, gold;
  for (const auto& l : generated_lines) generated.push_back(parse_generated_line(l));
  for (const auto& l : gold_lines) gold.push_back(parse_gold_line(l));
  const auto report = eval::evaluate_corpus(generated, gold, a.dedup_threshold);
  if (a.out.empty()) {
    eval::write_eval_report(out, report);
  } else {
    auto file = open_output(a.out);
    eval::write_eval_report(file, report);
    out << "rouge1_f1\t" << report.mean.rouge1 << '\n'
        << "rouge2_f1\t" << report.mean.rouge2 << '\n'
        << "rougeL_f1\t" << report.mean.rouge_l << '\n';
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// Entry point

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"twag: topic-guided abstract generation"};
  app.require_subcommand(1);

  BuildCorpusArgs build;
  auto* build_cmd = app.add_subcommand("build-corpus", "Build vocabulary and datasets from a dump");
  build_cmd->add_option("--articles", build.articles, "Article dump")->required();
  build_cmd->add_option("--schema", build.schema, "Topic schema")->required();
  build_cmd->add_option("--out", build.out, "Output directory")->required();
  build_cmd->add_option("--summaries", build.summaries, "Summarization records (TSV)");
  build_cmd->add_option("--seed", build.seed, "Split seed");
  build_cmd->add_option("--n-t", build.n_t, "Label budget (10, 20 or 30)");
  build_cmd->add_option("--vocab-cap", build.vocab_cap, "Vocabulary size cap");

  std::string stats_articles, stats_out;
  auto* stats_cmd = app.add_subcommand("stats", "Section label rank-frequency table");
  stats_cmd->add_option("--articles", stats_articles, "Article dump")->required();
  stats_cmd->add_option("--out", stats_out, "Output TSV (stdout when absent)");

  TrainArgs train;
  std::uint64_t train_seed = 0;
  auto* train_cmd = app.add_subcommand("train", "Train the detector or the generator");
  train_cmd->add_option("--stage", train.stage, "detector or generator")
      ->required()
      ->check(CLI::IsMember({"detector", "generator"}));
  train_cmd->add_option("--config", train.config, "Run config")->required();
  train_cmd->add_option("--out", train.out, "Checkpoint path")->required();
  auto* train_seed_opt = train_cmd->add_option("--seed", train_seed, "Overrides the config seed");
  train_cmd->add_option("--detector-ckpt", train.detector_checkpoint,
                        "Detector checkpoint for topic assignment (generator stage)");

  GenerateArgs gen;
  std::string gen_mode;
  std::size_t gen_beam = 0;
  auto* gen_cmd = app.add_subcommand("generate", "Generate abstracts");
  gen_cmd->add_option("--detector-ckpt", gen.detector_checkpoint, "Detector checkpoint")->required();
  gen_cmd->add_option("--generator-ckpt", gen.generator_checkpoint, "Generator checkpoint")
      ->required();
  gen_cmd->add_option("--input", gen.input, "Input records (TSV)")->required();
  gen_cmd->add_option("--out", gen.out, "Output abstracts, one per line")->required();
  gen_cmd->add_option("--config", gen.config, "Run config");
  gen_cmd->add_option("--vocab", gen.vocab, "Vocabulary (overrides the config)");
  auto* mode_opt = gen_cmd->add_option("--mode", gen_mode, "soft or hard")
                       ->check(CLI::IsMember({"soft", "hard"}));
  auto* beam_opt =
      gen_cmd->add_option("--beam", gen_beam, "Beam size")->check(CLI::PositiveNumber);

  EvaluateArgs evaluate;
  auto* eval_cmd = app.add_subcommand("evaluate", "ROUGE of generated against gold abstracts");
  eval_cmd->add_option("--generated", evaluate.generated, "Generated abstracts")->required();
  eval_cmd->add_option("--gold", evaluate.gold, "Gold abstracts or dataset TSV")->required();
  eval_cmd->add_option("--out", evaluate.out, "Report TSV (stdout when absent)");
  eval_cmd->add_option("--dedup-threshold", evaluate.dedup_threshold, "Sentence dedup threshold")
      ->check(CLI::Range(0.0, 1.0));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*build_cmd) return cmd_build_corpus(build, out);
    if (*stats_cmd) return cmd_stats(stats_articles, stats_out, out);
    if (*train_cmd) {
      if (train_seed_opt->count()) train.seed = train_seed;
      return cmd_train(train, out);
    }
    if (*gen_cmd) {
      if (mode_opt->count()) gen.mode = gen_mode;
      if (beam_opt->count()) gen.beam = gen_beam;
      return cmd_generate(gen, out, err);
    }
    if (*eval_cmd) return cmd_evaluate(evaluate, out);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const twag::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

inline int run_cli(int argc, const char* const* argv) {
  return run_cli(argc, argv, std::cout, std::cerr);
}

}  // namespace twag::cli

#endif  // TWAG_CLI_COMMANDS_HPP
