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

// Acceptance gate: one line per criterion, nonzero exit status if any fails.
// Pass --update-golden to rewrite the golden report files instead of
// comparing against them.

#include <Eigen/Core>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "mathemb/corpus.hpp"
#include "mathemb/mathml.hpp"
#include "mathemb/moi.hpp"
#include "mathemb/projection.hpp"
#include "mathemb/query.hpp"
#include "mathemb/report.hpp"
#include "mathemb/sgns.hpp"
#include "mathemb/tokenize.hpp"
#include "mathemb/trainer.hpp"
#include "mathemb/model_io.hpp"
#include "mathemb/vocabulary.hpp"
#include "mathemb/zipf.hpp"
#include "two_clusters.hpp"

namespace fs = std::filesystem;
using namespace mathemb;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::string surfaces(const std::vector<Token>& tokens) {
  std::string s;
  for (const auto& t : tokens) s += (s.empty() ? "" : " ") + t.surface;
  return s;
}

// --------------------------------------------------------------- 1 tokenizer

Outcome tokenizer_fixtures() {
  const auto number = parse_mathml(testing::kVdwNumber);
  const auto bound = parse_mathml(testing::kVdwBound);
  const auto alpha = parse_mathml(testing::kAlphaSubI);
  const std::string w = surfaces(to_identifier_stream(number));
  const std::string ids = surfaces(to_identifier_stream(bound));
  const std::size_t symbols = to_symbol_stream(bound).size();
  const std::size_t nodes = build_moi(alpha).node_count();
  const bool ok = w == "W k" && ids == "W k ε" && symbols == 13 && nodes == 3;
  return {ok, fmt("W(2,k)='%s' bound ids='%s' symbols=%zu alpha_i nodes=%zu", w.c_str(), ids.c_str(),
                  symbols, nodes)};
}

// ---------------------------------------------------------------- 2 gradients

using LVec = Vector<long double>;
using LMat = RowMatrix<long double>;

long double loss_ld(const LVec& v, const LVec& u, const LMat& n) {
  LVec g1, g2;
  LMat g3;
  return sgns_gradients_into<long double>(v, u, n, g1, g2, g3);
}

Outcome gradient_check() {
  std::mt19937_64 rng(2026);
  std::normal_distribution<double> normal(0.0, 0.5);
  std::uniform_int_distribution<int> dim(2, 24), neg(1, 10);
  const long double h = 1e-5L;
  double worst = 0.0;
  for (int config = 0; config < 20; ++config) {
    const int d = dim(rng), k = neg(rng);
    Vector<double> v(d), u(d);
    RowMatrix<double> n(k, d);
    for (int i = 0; i < d; ++i) v(i) = normal(rng), u(i) = normal(rng);
    for (int r = 0; r < k; ++r)
      for (int c = 0; c < d; ++c) n(r, c) = normal(rng);
    const auto g = sgns_loss_and_gradients<double>(v, u, n);
    const LVec lv = v.cast<long double>(), lu = u.cast<long double>();
    const LMat ln = n.cast<long double>();
    long double diff = 0, scale = 0;
    auto acc = [&](long double analytic, long double fd) {
      diff += (analytic - fd) * (analytic - fd);
      scale += fd * fd;
    };
    for (int i = 0; i < d; ++i) {
      LVec p = lv, m = lv;
      p(i) += h, m(i) -= h;
      acc(g.center(i), (loss_ld(p, lu, ln) - loss_ld(m, lu, ln)) / (2 * h));
      p = lu, m = lu;
      p(i) += h, m(i) -= h;
      acc(g.context(i), (loss_ld(lv, p, ln) - loss_ld(lv, m, ln)) / (2 * h));
    }
    for (int r = 0; r < k; ++r) {
      for (int c = 0; c < d; ++c) {
        LMat p = ln, m = ln;
        p(r, c) += h, m(r, c) -= h;
        acc(g.negatives(r, c), (loss_ld(lv, lu, p) - loss_ld(lv, lu, m)) / (2 * h));
      }
    }
    worst = std::max(worst, static_cast<double>(std::sqrt(diff) / std::max(std::sqrt(scale), 1e-30L)));
  }
  return {worst <= 1e-4, fmt("20 configurations, worst relative error %.3g (limit 1e-4)", worst)};
}

// -------------------------------------------------------- 3 semantic recovery

struct Pair {
  const char* identifier;
  const char* definiens;
};

constexpr Pair kPairs[] = {
    {"α", "angle"},     {"β", "ratio"},       {"γ", "damping"},    {"δ", "offset"},
    {"λ", "wavelength"}, {"μ", "mean"},        {"σ", "deviation"},  {"τ", "torque"},
    {"ω", "frequency"}, {"ρ", "density"},     {"θ", "phase"},      {"κ", "curvature"},
    {"r", "radius"},    {"v", "velocity"},    {"m", "mass"},       {"T", "temperature"},
    {"E", "energy"},    {"p", "momentum"},    {"n", "dimension"},  {"ε", "tolerance"},
};
constexpr std::size_t kPairCount = std::size(kPairs);

constexpr const char* kTemplates[] = {
    "let {I} denote the {D} of the system under study",
    "here {I} is the {D} measured in natural units",
    "we write {I} for the {D} throughout this section",
    "the {D} {I} appears in the main estimate below",
    "recall that {I} stands for the {D} introduced earlier",
    "the quantity {I} called the {D} controls the behaviour",
    "assume the {D} {I} is bounded from above",
    "in this model {I} plays the role of the {D}",
};

constexpr const char* kFillers[] = {
    "model",   "system",  "result",  "method",   "section", "equation", "value",   "estimate",
    "bound",   "process", "theory",  "analysis", "case",    "example",  "problem", "approach",
    "lemma",   "proof",   "claim",   "figure",   "table",   "data",     "sample",  "series",
    "limit",   "term",    "order",   "step",     "rule",    "set",      "space",   "field",
    "network", "signal",  "graph",   "node",     "edge",    "cluster",  "region",  "domain",
};

// Companion identifiers u_<letter> that accompany pair p in its formulae;
// they give the identifier and its definiens shared context that no other
// word-class token has.
std::string companion(std::size_t pair, std::size_t j) {
  const char letter = static_cast<char>('a' + pair);
  const char* base = j == 0 ? "u" : j == 1 ? "w" : "z";
  return std::string("<math><msub><mi>") + base + "</mi><mi>" + letter + "</mi></msub></math>";
}

std::string math(const char* id) { return std::string("<math><mi>") + id + "</mi></math>"; }

std::string replace_all(std::string s, std::string_view key, const std::string& value) {
  for (auto pos = s.find(key); pos != std::string::npos; pos = s.find(key, pos + value.size())) {
    s.replace(pos, key.size(), value);
  }
  return s;
}

// 200 template sentences per pair plus 2000 distractors, shuffled, one
// paragraph each, run through the HTML ingestion path.
std::vector<Paragraph> semantic_corpus(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
  std::vector<std::string> sentences;
  for (std::size_t p = 0; p < kPairCount; ++p) {
    const Pair& pair = kPairs[p];
    for (int s = 0; s < 200; ++s) {
      std::string t = kTemplates[pick(std::size(kTemplates))];
      t = replace_all(t, "{I}", math(pair.identifier));
      t = replace_all(t, "{D}", pair.definiens);
      t += " with " + companion(p, pick(3)) + " and the " + kFillers[pick(std::size(kFillers))];
      sentences.push_back(std::move(t));
    }
  }
  for (int s = 0; s < 2000; ++s) {
    std::string t = "the";
    const std::size_t len = 6 + pick(6);
    for (std::size_t w = 0; w < len; ++w) t += std::string(" ") + kFillers[pick(std::size(kFillers))];
    if (pick(2) == 0) t += " with " + math(pick(2) == 0 ? "x" : "y");
    sentences.push_back(std::move(t));
  }
  std::shuffle(sentences.begin(), sentences.end(), rng);
  std::string html = "<html><body>";
  for (const auto& s : sentences) html += "<p>" + s + "</p>\n";
  html += "</body></html>";
  Document doc = ingest_document(html, TokenizationMode::IdentifierStream, "synthetic");
  std::vector<Paragraph> out;
  for (const auto& p : doc.paragraphs) out.push_back(remove_stopwords(p, default_stopwords()));
  return out;
}

Outcome semantic_recovery() {
  const auto corpus = semantic_corpus(7);
  TrainingConfig cfg;
  cfg.dimensions = 50;
  cfg.window = 5;
  cfg.epochs = 15;
  cfg.min_count = 5;
  cfg.subsample_threshold = 1e-3;
  cfg.seed = 42;
  cfg.workers = 1;
  const auto model = train_skipgram(corpus, cfg);
  int hits = 0;
  std::string misses;
  for (const auto& pair : kPairs) {
    const auto nn = nearest_neighbors(model, Token::identifier(pair.identifier), 3, ClassFilter::Word);
    const bool hit = std::any_of(nn.begin(), nn.end(), [&](const Neighbor& n) { return n.token.surface == pair.definiens; });
    if (std::getenv("MATHEMB_VERBOSE")) {
      std::string line = pair.identifier;
      for (const auto& n : nearest_neighbors(model, Token::identifier(pair.identifier), 5, ClassFilter::Word))
        line += fmt(" %s:%.3f", n.token.surface.c_str(), n.cosine);
      std::fprintf(stderr, "%s\n", line.c_str());
    }
    if (hit) {
      ++hits;
    } else {
      misses += std::string(misses.empty() ? " missed:" : ",") + " " + pair.identifier;
    }
  }
  return {hits * 5 >= static_cast<int>(kPairCount) * 4,
          fmt("%d/%zu identifiers have their definiens in the top-3 word neighbors (need 16)%s", hits,
              kPairCount, misses.c_str())};
}

// ------------------------------------------------------------------ 4 oracle

EmbeddingModel random_model(std::size_t vocab_size, int dims, std::uint64_t seed) {
  std::vector<Vocabulary::Entry> entries;
  for (std::size_t i = 0; i < vocab_size; ++i) {
    Token t = i % 5 == 0 ? Token::identifier("x" + std::to_string(i)) : Token::word("w" + std::to_string(i));
    entries.push_back({std::move(t), static_cast<std::int64_t>(vocab_size - i)});
  }
  EmbeddingModel m;
  m.vocabulary = Vocabulary::from_entries(std::move(entries), 1, 1e-5);
  std::mt19937_64 rng(seed);
  std::normal_distribution<float> normal;
  m.input_vectors.resize(static_cast<Eigen::Index>(vocab_size), dims);
  for (Eigen::Index i = 0; i < m.input_vectors.rows(); ++i)
    for (Eigen::Index j = 0; j < dims; ++j) m.input_vectors(i, j) = normal(rng);
  m.output_vectors = Matrix::Zero(m.input_vectors.rows(), dims);
  return m;
}

// Exhaustive scan: score every admissible row, full sort, take k.
QueryResult brute_force(const EmbeddingModel& m, const Eigen::VectorXd& target, std::size_t k,
                        const std::function<bool(std::size_t)>& include) {
  std::vector<Neighbor> all;
  for (std::size_t i = 0; i < m.vocabulary.size(); ++i) {
    if (!include(i)) continue;
    const Eigen::VectorXd row = m.input_vectors.row(static_cast<Eigen::Index>(i)).cast<double>().transpose();
    all.push_back({m.vocabulary[i].token, i, cosine(row, target)});
  }
  std::sort(all.begin(), all.end(), [](const Neighbor& a, const Neighbor& b) {
    return a.cosine != b.cosine ? a.cosine > b.cosine : a.index < b.index;
  });
  all.resize(std::min(k, all.size()));
  return all;
}

Outcome oracle_equivalence() {
  const auto m = random_model(5000, 50, 11);
  std::mt19937_64 rng(5);
  auto idx = [&] { return static_cast<std::size_t>(rng() % m.vocabulary.size()); };
  auto row = [&](std::size_t i) -> Eigen::VectorXd {
    return m.input_vectors.row(static_cast<Eigen::Index>(i)).cast<double>().transpose();
  };
  int agree = 0;
  for (int q = 0; q < 100; ++q) {
    const std::size_t k = 1 + static_cast<std::size_t>(rng() % 25);
    const ClassFilter filter = q % 3 == 0 ? ClassFilter::All : q % 3 == 1 ? ClassFilter::Word : ClassFilter::Math;
    const std::size_t t = idx();
    const auto nn = nearest_neighbors(m, m.vocabulary[t].token, k, filter);
    const auto nn_ref = brute_force(m, row(t), k, [&](std::size_t i) {
      return i != t && matches(filter, m.vocabulary[i].token.cls);
    });
    const std::size_t a = idx(), b = idx(), c = idx();
    const auto an = analogy(m, {m.vocabulary[a].token, m.vocabulary[b].token, m.vocabulary[c].token}, k, filter);
    const auto an_ref = brute_force(m, row(b) - row(a) + row(c), k, [&](std::size_t i) {
      return i != a && i != b && i != c && matches(filter, m.vocabulary[i].token.cls);
    });
    if (nn == nn_ref && an == an_ref) ++agree;
  }
  return {agree == 100, fmt("%d/100 queries identical to the exhaustive scan (V=5000, d=50)", agree)};
}

// ------------------------------------------------------------ 5 eval fixture

Outcome metric_fixture() {
  const fs::path data = MATHEMB_TEST_DATA;
  const auto model = load_model(data / "eval_fixture.vec");
  const auto bench = read_benchmark_file(data / "eval_benchmark.tsv");
  const auto anchors = default_anchors();
  const auto report = evaluate_definiens(model, bench, anchors, 0.7);
  const bool ok = report.precision == 1.0 / 3.0 && report.recall == 0.5;
  return {ok, fmt("p=%.17g r=%.17g (want 1/3 and 1/2 exactly)", report.precision, report.recall)};
}

// ------------------------------------------------------------------- 6 t-SNE

Outcome tsne_criteria(double& seconds_at_1000) {
  const auto cal = testing::two_clusters(300, 20, 4.0, 3);
  const auto aff = joint_affinities(cal.points, 30.0);
  double worst = 0.0;
  for (double p : aff.achieved_perplexity) worst = std::max(worst, std::abs(p - 30.0));

  int pure = 0;
  std::string purities;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto data = testing::two_clusters(200, 50, 10.0, 100 + seed);
    TsneConfig cfg;
    cfg.perplexity = 30.0;
    cfg.seed = seed;
    const double purity = testing::two_means_purity(tsne_project(data.points, cfg), data.labels);
    if (purity == 1.0) ++pure;
    purities += fmt("%s%.3f", purities.empty() ? "" : ",", purity);
  }

  const auto big = testing::two_clusters(1000, 50, 10.0, 9);
  const auto start = std::chrono::steady_clock::now();
  TsneConfig cfg;
  (void)tsne_run(big.points, cfg);
  seconds_at_1000 = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const bool ok = worst <= 1e-2 && pure >= 4 && seconds_at_1000 <= 30.0;
  return {ok, fmt("max |perplexity-30|=%.2e; purity 1.0 in %d/5 seeds (%s); n=1000 run %.1f s (limit 30 s)", worst,
                  pure, purities.c_str(), seconds_at_1000)};
}

// -------------------------------------------------------------------- 7 Zipf

Outcome zipf_slope() {
  TokenCounts counts;
  for (int r = 1; r <= 1000; ++r) counts[Token::word("t" + std::to_string(r))] = std::llround(1e6 / r);
  const auto stats = zipf_fit(counts, ClassFilter::All);
  return {std::abs(stats.zipf_slope + 1.0) <= 0.05, fmt("slope=%.6f r2=%.6f over 1000 types", stats.zipf_slope, stats.zipf_r2)};
}

// ------------------------------------------------------------- 8 determinism

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism(const fs::path& work) {
  const auto corpus = semantic_corpus(3);
  TrainingConfig cfg;
  cfg.dimensions = 20;
  cfg.window = 5;
  cfg.epochs = 2;
  cfg.min_count = 5;
  cfg.seed = 99;
  cfg.workers = 1;
  const fs::path a = work / "run_a.vec", b = work / "run_b.vec";
  save_model(train_skipgram(corpus, cfg), a);
  save_model(train_skipgram(corpus, cfg), b);
  const bool ok = slurp(a) == slurp(b) && slurp(context_path(a)) == slurp(context_path(b)) &&
                  slurp(metadata_path(a)) == slurp(metadata_path(b)) && !slurp(a).empty();
  return {ok, fmt("vectors, context vectors and metadata %s (%zu bytes)", ok ? "byte-identical" : "differ",
                  slurp(a).size())};
}

// ---------------------------------------------------------- 9 report formats

// Miniature pipeline shared with the CLI test: identifiers mode, default
// stoplist, d=16 window=5 min-count=1 no subsampling 30 epochs seed 1.
std::vector<std::pair<std::string, std::string>> mini_reports(const fs::path& work) {
  const fs::path data = MATHEMB_TEST_DATA;
  const auto corpus = ingest_directory(data / "mini", TokenizationMode::IdentifierStream, &default_stopwords());
  TrainingConfig cfg;
  cfg.dimensions = 16;
  cfg.window = 5;
  cfg.min_count = 1;
  cfg.subsample_threshold = 0.0;
  cfg.epochs = 30;
  cfg.seed = 1;
  // Round-trip through the model file so the numbers match what the CLI sees.
  save_model(train_skipgram(corpus.paragraphs, cfg), work / "mini.vec");
  const auto model = load_model(work / "mini.vec");

  const auto& vocab = model.vocabulary;
  const auto table = analogy(model, {resolve_token(vocab, "a"), resolve_token(vocab, "variable"),
                                     resolve_token(vocab, "f")}, 10);
  const auto bench = read_benchmark_file(data / "mini_benchmark.tsv");
  const auto anchors = default_anchors();
  const auto eval = evaluate_definiens(model, bench, anchors, 0.98);

  const auto set = select_projection_set(model, resolve_token(vocab, "f"), 15);
  TsneConfig tcfg;
  tcfg.perplexity = 5.0;
  tcfg.iterations = 500;
  const auto xy = tsne_project(set.vectors, tcfg);

  return {{"ingest_summary.txt", format_ingest_summary(summarize(corpus)) + "\n"},
          {"analogy_a_variable_f.tsv", format_neighbors(table)},
          {"eval.tsv", format_eval_rows(eval) + format_eval_summary(eval) + "\n"},
          {"coords_f.tsv", format_coordinates(set.tokens, xy)}};
}

Outcome golden_reports(const fs::path& work, bool update) {
  const fs::path golden = MATHEMB_GOLDEN;
  int same = 0;
  std::string diffs;
  const auto reports = mini_reports(work);
  for (const auto& [name, text] : reports) {
    if (update) {
      fs::create_directories(golden);
      write_file_atomically(golden / name, text);
    }
    if (fs::exists(golden / name) && slurp(golden / name) == text) {
      ++same;
    } else {
      diffs += " " + name;
      write_file_atomically(work / name, text);
    }
  }
  return {same == static_cast<int>(reports.size()),
          fmt("%d/%zu report files match the goldens%s%s", same, reports.size(), diffs.empty() ? "" : "; differ:",
              diffs.c_str())};
}

}  // namespace

int main(int argc, char** argv) {
  const bool update = argc > 1 && std::string(argv[1]) == "--update-golden";
  const fs::path work = fs::temp_directory_path() / "mathemb_acceptance";
  fs::create_directories(work);

  int failures = 0;
  auto run = [&](int id, const char* name, double limit, const std::function<Outcome()>& check) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = o.pass && (limit <= 0 || secs < limit);
    if (!pass) ++failures;
    std::string timing = limit > 0 ? fmt(" [%.2f s, limit %.0f s]", secs, limit) : fmt(" [%.2f s]", secs);
    std::printf("%s %d %s: %s%s\n", pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), timing.c_str());
    std::fflush(stdout);
  };

  double tsne_1000 = 0;
  run(1, "tokenizer fixtures", 1, tokenizer_fixtures);
  run(2, "gradient correctness", 5, gradient_check);
  run(3, "semantic recovery", 120, semantic_recovery);
  run(4, "oracle equivalence", 30, oracle_equivalence);
  run(5, "metric fixture", 0, metric_fixture);
  run(6, "t-SNE", 0, [&] { return tsne_criteria(tsne_1000); });
  run(7, "Zipf slope", 0, zipf_slope);
  run(8, "determinism", 0, [&] { return determinism(work); });
  run(9, "report formats", 0, [&] { return golden_reports(work, update); });
  std::printf("%s: %d of 9 criteria failed\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}
