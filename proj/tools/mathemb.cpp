// Copyright 2026 The mathemb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: ingest HTML, train, query, project and count.

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "mathemb/corpus.hpp"
#include "mathemb/corpus_io.hpp"
#include "mathemb/errors.hpp"
#include "mathemb/model_io.hpp"
#include "mathemb/projection.hpp"
#include "mathemb/query.hpp"
#include "mathemb/report.hpp"
#include "mathemb/trainer.hpp"
#include "mathemb/vocabulary.hpp"
#include "mathemb/zipf.hpp"

namespace fs = std::filesystem;
using namespace mathemb;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitInput = 2;
constexpr int kExitIo = 3;
constexpr int kExitPerplexity = 4;

void write_manifest(RunManifest manifest, const std::vector<fs::path>& outputs) {
  for (const auto& out : outputs) manifest.add_output(out);
  write_file_atomically(manifest_path(outputs.front()), format_manifest(manifest));
}

// Maps library errors to the documented exit codes.
int guarded(const std::function<void()>& body) {
  try {
    body();
    return 0;
  } catch (const UnknownToken& e) {
    std::cerr << "error: unknown token '" << e.token() << "'\n";
    return kExitInput;
  } catch (const UnknownParagraph& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const EmptyInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const EmptyVocabulary& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const DegenerateDistribution& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const IoFailure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const PerplexityTooLarge& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitPerplexity;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

// ---------------------------------------------------------------- ingest

struct IngestArgs {
  fs::path input;
  std::string mode = "identifiers";
  fs::path stoplist;
  bool keep_stopwords = false;
  fs::path out;
};

void run_ingest(const IngestArgs& a) {
  auto mode = parse_mode(a.mode);
  if (!mode) throw DomainError("unknown mode '" + a.mode + "'");
  Stoplist loaded;
  const Stoplist* stop = &default_stopwords();
  if (!a.stoplist.empty()) {
    loaded = load_stoplist(a.stoplist);
    stop = &loaded;
  }
  if (a.keep_stopwords) stop = nullptr;

  const auto corpus = ingest_directory(a.input, *mode, stop);
  for (const auto& w : corpus.warnings) std::cerr << "warning: skipped " << w << '\n';
  if (corpus.skipped_formulae > 0) {
    std::cerr << "note: " << corpus.skipped_formulae << " formulae could not be parsed and were skipped\n";
  }
  if (corpus.paragraphs.empty()) throw EmptyInput("no paragraphs with tokens in " + a.input.string());

  std::ostringstream out;
  write_corpus(out, corpus.paragraphs);
  write_file_atomically(a.out, out.str());

  RunManifest manifest;
  manifest.command = "ingest";
  manifest.config = {{"mode", a.mode},
                     {"stoplist", a.keep_stopwords ? "none" : a.stoplist.empty() ? "builtin" : a.stoplist.string()}};
  if (!a.stoplist.empty()) manifest.add_input(a.stoplist);
  for (const auto& f : corpus.files) manifest.add_input(f);
  write_manifest(std::move(manifest), {a.out});
  std::cout << format_ingest_summary(summarize(corpus)) << '\n';
}

// ----------------------------------------------------------------- train

struct TrainArgs {
  fs::path corpus;
  TrainingConfig config;
  std::string model_type = "skipgram";
  fs::path out;
};

void run_train(const TrainArgs& a) {
  if (a.model_type != "skipgram" && a.model_type != "dbow") {
    throw DomainError("model type must be skipgram or dbow");
  }
  a.config.validate();
  const auto corpus = read_corpus_file(a.corpus);

  RunManifest manifest;
  manifest.command = "train";
  manifest.add_input(a.corpus);
  for (const auto& [k, v] : config_metadata(a.config)) manifest.config.emplace_back(k, v);
  manifest.config.emplace_back("model", a.model_type);

  double final_loss = 0.0;
  if (a.model_type == "skipgram") {
    const auto model = train_skipgram(corpus, a.config);
    save_model(model, a.out);
    if (!model.epoch_loss.empty()) final_loss = model.epoch_loss.back();
    std::cerr << "vocabulary=" << model.vocabulary.size() << " dimensions=" << model.dimensions();
  } else {
    const auto model = train_dbow_pv(corpus, a.config);
    save_paragraph_model(model, a.out);
    if (!model.epoch_loss.empty()) final_loss = model.epoch_loss.back();
    std::cerr << "paragraphs=" << model.paragraph_ids.size() << " vocabulary=" << model.vocabulary.size();
  }
  std::cerr << " final_loss=" << final_loss << '\n';
  write_manifest(std::move(manifest), {a.out, context_path(a.out), metadata_path(a.out)});
}

// ----------------------------------------------------------------- query

struct QueryArgs {
  fs::path model;
  std::string token;
  std::string a, b, c;
  std::size_t k = 10;
  std::string filter = "all";
  fs::path benchmark;
  double threshold = 0.7;
  std::string anchors;
  std::string paragraph;
};

ClassFilter filter_from(const std::string& name) {
  auto f = parse_class_filter(name);
  if (!f) throw DomainError("filter must be math, word or all");
  return *f;
}

void run_nn(const QueryArgs& q) {
  const auto filter = filter_from(q.filter);
  const auto model = load_model(q.model);
  const Token t = resolve_token(model.vocabulary, q.token);
  std::cout << format_neighbors(nearest_neighbors(model, t, q.k, filter));
}

void run_analogy(const QueryArgs& q) {
  const auto filter = filter_from(q.filter);
  const auto model = load_model(q.model);
  AnalogyQuery aq{resolve_token(model.vocabulary, q.a), resolve_token(model.vocabulary, q.b),
                  resolve_token(model.vocabulary, q.c)};
  std::cout << format_neighbors(analogy(model, aq, q.k, filter));
}

void run_eval(const QueryArgs& q) {
  const auto model = load_model(q.model);
  const auto bench = read_benchmark_file(q.benchmark);
  const auto anchors = q.anchors.empty() ? default_anchors() : parse_anchors(q.anchors);
  const auto report = evaluate_definiens(model, bench, anchors, q.threshold);
  std::cout << format_eval_rows(report) << format_eval_summary(report) << '\n';
}

void run_paragraphs(const QueryArgs& q) {
  const auto model = load_paragraph_model(q.model);
  std::cout << format_neighbors(similar_paragraphs(model, q.paragraph, q.k));
}

// --------------------------------------------------------------- project

struct ProjectArgs {
  fs::path model;
  std::string around;
  std::size_t top = 1000;
  std::string method = "tsne";
  double perplexity = 80.0;
  int iterations = 1000;
  std::uint64_t seed = 1;
  fs::path out;
};

void run_project(const ProjectArgs& a) {
  if (a.method != "tsne" && a.method != "pca") throw DomainError("method must be tsne or pca");
  const auto model = load_model(a.model);
  const Token center = resolve_token(model.vocabulary, a.around);
  std::size_t top = a.top;
  if (top + 1 > model.vocabulary.size()) {
    top = model.vocabulary.size() - 1;
    std::cerr << "note: --top " << a.top << " exceeds the vocabulary; using " << top << '\n';
  }
  const auto set = select_projection_set(model, center, top);

  Eigen::MatrixXd xy;
  if (a.method == "pca") {
    xy = pca_project(set.vectors, 2);
  } else {
    TsneConfig cfg;
    cfg.perplexity = a.perplexity;
    cfg.iterations = a.iterations;
    cfg.seed = a.seed;
    const auto result = tsne_run(set.vectors.cast<double>(), cfg);
    xy = result.coordinates;
    if (!result.kl_trace.empty()) std::cerr << "kl=" << result.kl_trace.back().second << '\n';
  }
  write_file_atomically(a.out, format_coordinates(set.tokens, xy));

  RunManifest manifest;
  manifest.command = "project";
  manifest.add_input(a.model);
  manifest.config = {{"around", a.around},       {"top", std::to_string(top)},
                     {"method", a.method},        {"perplexity", std::to_string(a.perplexity)},
                     {"iterations", std::to_string(a.iterations)}, {"seed", std::to_string(a.seed)}};
  write_manifest(std::move(manifest), {a.out});
}

// ----------------------------------------------------------------- stats

struct StatsArgs {
  fs::path corpus;
  bool zipf = false;
  std::string cls = "all";
};

void run_stats(const StatsArgs& a) {
  const auto filter = filter_from(a.cls);
  const auto corpus = read_corpus_file(a.corpus);
  const auto counts = count_tokens(corpus);
  if (a.zipf) {
    const auto stats = zipf_fit(counts, filter);
    std::cout << format_rank_frequency(stats) << format_zipf_summary(stats) << '\n';
  } else {
    CorpusStats stats;
    stats.rank_frequency = rank_frequency(counts, filter);
    std::cout << format_rank_frequency(stats);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Embeddings for words and math tokens from HTML/MathML corpora"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);
  int exit_code = 0;

  IngestArgs ingest;
  auto* ing = app.add_subcommand("ingest", "Tokenize a directory of HTML documents into a corpus file");
  ing->add_option("--input", ingest.input, "Directory of .html/.htm/.xhtml files")->required();
  ing->add_option("--mode", ingest.mode, "single|identifiers|symbols|moi")->capture_default_str();
  ing->add_option("--stoplist", ingest.stoplist, "Stopword file (default: built-in English list)");
  ing->add_flag("--keep-stopwords", ingest.keep_stopwords, "Do not remove stopwords");
  ing->add_option("--out", ingest.out, "Corpus token file")->required();
  ing->callback([&] { exit_code = guarded([&] { run_ingest(ingest); }); });

  TrainArgs train;
  auto* tr = app.add_subcommand("train", "Train skip-gram or DBOW vectors on a corpus file");
  tr->add_option("--corpus", train.corpus)->required();
  tr->add_option("--dim", train.config.dimensions)->capture_default_str();
  tr->add_option("--window", train.config.window)->capture_default_str();
  tr->add_option("--min-count", train.config.min_count)->capture_default_str();
  tr->add_option("--sample", train.config.subsample_threshold, "Subsampling threshold, 0 disables")
      ->capture_default_str();
  tr->add_option("--negatives", train.config.negatives)->capture_default_str();
  tr->add_option("--epochs", train.config.epochs)->capture_default_str();
  tr->add_option("--lr", train.config.learning_rate, "Initial learning rate")->capture_default_str();
  tr->add_option("--seed", train.config.seed)->capture_default_str();
  tr->add_option("--workers", train.config.workers, "Worker threads; 1 is reproducible")->capture_default_str();
  tr->add_option("--model-type", train.model_type, "skipgram|dbow")->capture_default_str();
  tr->add_option("--out", train.out, "Vector file")->required();
  tr->callback([&] { exit_code = guarded([&] { run_train(train); }); });

  QueryArgs query;
  auto* qu = app.add_subcommand("query", "Query a trained model");
  qu->require_subcommand(1);
  auto* nn = qu->add_subcommand("nn", "Nearest neighbors of a token");
  nn->add_option("--model", query.model)->required();
  nn->add_option("--token", query.token, "word, m:<identifier>, s:<symbol> or e:<key>")->required();
  nn->add_option("--k", query.k)->capture_default_str();
  nn->add_option("--filter", query.filter, "math|word|all")->capture_default_str();
  nn->callback([&] { exit_code = guarded([&] { run_nn(query); }); });

  auto* an = qu->add_subcommand("analogy", "Rank tokens by cosine to b - a + c");
  an->add_option("--model", query.model)->required();
  an->add_option("--a", query.a)->required();
  an->add_option("--b", query.b)->required();
  an->add_option("--c", query.c)->required();
  an->add_option("--k", query.k)->capture_default_str();
  an->add_option("--filter", query.filter, "math|word|all")->capture_default_str();
  an->callback([&] { exit_code = guarded([&] { run_analogy(query); }); });

  auto* ev = qu->add_subcommand("eval", "Score definiens retrieval against a benchmark");
  ev->add_option("--model", query.model)->required();
  ev->add_option("--benchmark", query.benchmark, "TSV: formula_id, identifier, gold definiens")->required();
  ev->add_option("--threshold", query.threshold)->capture_default_str();
  ev->add_option("--anchors", query.anchors, "concept:identifier,... (default variable:x,variable:a,function:f)");
  ev->callback([&] { exit_code = guarded([&] { run_eval(query); }); });

  auto* pa = qu->add_subcommand("paragraphs", "Most similar paragraphs under a DBOW model");
  pa->add_option("--model", query.model)->required();
  pa->add_option("--paragraph", query.paragraph, "Paragraph id")->required();
  pa->add_option("--k", query.k)->capture_default_str();
  pa->callback([&] { exit_code = guarded([&] { run_paragraphs(query); }); });

  ProjectArgs project;
  auto* pr = app.add_subcommand("project", "Project a token's neighborhood to 2-D");
  pr->add_option("--model", project.model)->required();
  pr->add_option("--around", project.around)->required();
  pr->add_option("--top", project.top)->capture_default_str();
  pr->add_option("--method", project.method, "tsne|pca")->capture_default_str();
  pr->add_option("--perplexity", project.perplexity)->capture_default_str();
  pr->add_option("--iterations", project.iterations)->capture_default_str();
  pr->add_option("--seed", project.seed)->capture_default_str();
  pr->add_option("--out", project.out, "Coordinates TSV")->required();
  pr->callback([&] { exit_code = guarded([&] { run_project(project); }); });

  StatsArgs stats;
  auto* st = app.add_subcommand("stats", "Rank-frequency table of a corpus file");
  st->add_option("--corpus", stats.corpus)->required();
  st->add_flag("--zipf", stats.zipf, "Fit log count = a + slope log rank");
  st->add_option("--class", stats.cls, "math|word|all")->capture_default_str();
  st->callback([&] { exit_code = guarded([&] { run_stats(stats); }); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;  // --help and --version are not errors
  }
  return exit_code;
}
