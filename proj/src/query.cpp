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

#include "mathemb/query.hpp"

#include <fstream>
#include <istream>
#include <unordered_set>

#include "mathemb/text.hpp"

namespace mathemb {

QueryResult rank_by_cosine(const Matrix& vectors, const Eigen::VectorXd& target, std::size_t k,
                           const std::function<bool(std::size_t)>& include,
                           const std::function<Token(std::size_t)>& label) {
  const double target_norm = target.norm();
  if (!(target_norm > 0.0) || !std::isfinite(target_norm)) throw ZeroVector("query vector is zero");
  if (k == 0) return {};

  std::vector<std::pair<double, std::size_t>> scored;
  scored.reserve(static_cast<std::size_t>(vectors.rows()));
  for (Eigen::Index i = 0; i < vectors.rows(); ++i) {
    const auto idx = static_cast<std::size_t>(i);
    if (!include(idx)) continue;
    const Eigen::VectorXd row = vectors.row(i).cast<double>().transpose();
    const double n = row.norm();
    if (n == 0.0) continue;
    scored.emplace_back(std::clamp(row.dot(target) / (n * target_norm), -1.0, 1.0), idx);
  }
  auto better = [](const auto& a, const auto& b) {
    return a.first > b.first || (a.first == b.first && a.second < b.second);
  };
  const std::size_t take = std::min(k, scored.size());
  std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(take), scored.end(), better);

  QueryResult result;
  result.reserve(take);
  for (std::size_t r = 0; r < take; ++r) {
    result.push_back({label(scored[r].second), scored[r].second, scored[r].first});
  }
  return result;
}

Token resolve_token(const Vocabulary& vocab, std::string_view notation) {
  Token t = from_notation(notation);
  if (t.cls != TokenClass::Word) {
    if (!vocab.find(t)) throw UnknownToken(std::string(notation));
    return t;
  }
  if (vocab.find(t)) return t;
  Token ident = Token::identifier(t.surface);
  if (vocab.find(ident)) return ident;
  throw UnknownToken(std::string(notation));
}

namespace {

Eigen::VectorXd row_of(const Matrix& m, std::size_t i) {
  return m.row(static_cast<Eigen::Index>(i)).cast<double>().transpose();
}

std::function<Token(std::size_t)> vocab_label(const Vocabulary& vocab) {
  return [&vocab](std::size_t i) { return vocab[i].token; };
}

}  // namespace

QueryResult nearest_neighbors(const EmbeddingModel& model, const Token& token, std::size_t k, ClassFilter filter) {
  const std::size_t q = model.vocabulary.index_of(token);
  if (k == 0) return {};
  const auto& vocab = model.vocabulary;
  return rank_by_cosine(
      model.input_vectors, row_of(model.input_vectors, q), k,
      [&](std::size_t i) { return i != q && matches(filter, vocab[i].token.cls); }, vocab_label(vocab));
}

QueryResult analogy(const EmbeddingModel& model, const AnalogyQuery& query, std::size_t k, ClassFilter filter) {
  const auto& vocab = model.vocabulary;
  const std::size_t a = vocab.index_of(query.a);
  const std::size_t b = vocab.index_of(query.b);
  const std::size_t c = vocab.index_of(query.c);
  Eigen::VectorXd target = row_of(model.input_vectors, b) - row_of(model.input_vectors, a) +
                           row_of(model.input_vectors, c);
  return rank_by_cosine(
      model.input_vectors, target, k,
      [&](std::size_t i) {
        if (query.exclude_inputs && (i == a || i == b || i == c)) return false;
        return matches(filter, vocab[i].token.cls);
      },
      vocab_label(vocab));
}

DefiniensBenchmark read_benchmark(std::istream& in) {
  DefiniensBenchmark bench;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (bench.records.empty() && line.starts_with("formula_id")) continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
      auto tab = line.find('\t', start);
      fields.push_back(line.substr(start, tab == std::string::npos ? std::string::npos : tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    if (fields.size() != 3 || fields[1].empty()) {
      throw FormatError("benchmark line " + std::to_string(line_no) +
                        ": expected formula_id<TAB>identifier<TAB>gold_definiens");
    }
    std::string ident = fields[1];
    if (ident.starts_with("m:")) ident.erase(0, 2);
    bench.records.push_back({fields[0], Token::identifier(ident), fields[2]});
  }
  if (bench.records.empty()) throw FormatError("benchmark has no records");
  return bench;
}

DefiniensBenchmark read_benchmark_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoFailure("cannot read benchmark " + path.string());
  return read_benchmark(in);
}

std::vector<Anchor> default_anchors() {
  return {
      {Token::word("variable"), Token::identifier("x")},
      {Token::word("variable"), Token::identifier("a")},
      {Token::word("function"), Token::identifier("f")},
  };
}

std::vector<Anchor> parse_anchors(std::string_view list) {
  std::vector<Anchor> anchors;
  while (!list.empty()) {
    auto comma = list.find(',');
    auto item = list.substr(0, comma);
    auto colon = item.find(':');
    if (colon == std::string_view::npos || colon == 0 || colon + 1 == item.size()) {
      throw DomainError("anchor must be concept:identifier, got '" + std::string(item) + "'");
    }
    anchors.push_back({Token::word(std::string(item.substr(0, colon))),
                       Token::identifier(std::string(item.substr(colon + 1)))});
    if (comma == std::string_view::npos) break;
    list.remove_prefix(comma + 1);
  }
  if (anchors.empty()) throw DomainError("at least one anchor is required");
  return anchors;
}

EvalReport evaluate_definiens(const EmbeddingModel& model, const DefiniensBenchmark& benchmark,
                              std::span<const Anchor> anchors, double threshold) {
  const auto& vocab = model.vocabulary;
  if (anchors.empty()) throw DomainError("at least one anchor is required");

  // Mean anchor offset: (1/m) Σ (v_concept - v_identifier).
  Eigen::VectorXd offset = Eigen::VectorXd::Zero(model.input_vectors.cols());
  std::unordered_set<std::size_t> excluded;
  for (const auto& anchor : anchors) {
    const std::size_t c = vocab.index_of(anchor.concept_word);
    const std::size_t i = vocab.index_of(anchor.identifier);
    offset += row_of(model.input_vectors, c) - row_of(model.input_vectors, i);
    excluded.insert(c);
  }
  offset /= static_cast<double>(anchors.size());

  EvalReport report;
  report.threshold = threshold;
  for (const auto& rec : benchmark.records) {
    RecordResult rr;
    rr.record = rec;
    if (auto q = vocab.find(rec.identifier)) {
      rr.in_model = true;
      Eigen::VectorXd target = row_of(model.input_vectors, *q) + offset;
      QueryResult ranked = rank_by_cosine(
          model.input_vectors, target, vocab.size(),
          [&](std::size_t i) { return vocab[i].token.cls == TokenClass::Word && !excluded.contains(i); },
          vocab_label(vocab));
      const auto gold_words = text::split_words(rec.gold_definiens);
      const std::unordered_set<std::string> gold(gold_words.begin(), gold_words.end());
      for (auto& n : ranked) {
        if (n.cosine < threshold) break;
        auto lowered = text::split_words(n.token.surface);
        if (lowered.size() == 1 && gold.contains(lowered.front())) rr.hit = true;
        rr.kept.push_back(std::move(n));
      }
    }
    report.kept_candidates += rr.kept.size();
    if (rr.hit) ++report.true_positives;
    report.records.push_back(std::move(rr));
  }
  report.precision = report.kept_candidates > 0
                         ? static_cast<double>(report.true_positives) / static_cast<double>(report.kept_candidates)
                         : 0.0;
  report.recall = static_cast<double>(report.true_positives) / static_cast<double>(benchmark.records.size());
  return report;
}

std::vector<PhraseCandidate> proximity_rank_definiens(const Paragraph& paragraph, const Token& identifier,
                                                      const Stoplist& stoplist) {
  const auto& toks = paragraph.tokens;
  std::vector<std::size_t> occurrences;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    if (toks[i] == identifier) occurrences.push_back(i);
  }
  if (occurrences.empty()) {
    throw IdentifierNotFound(to_notation(identifier) + " does not occur in paragraph " + paragraph.paragraph_id);
  }

  std::vector<PhraseCandidate> runs;
  auto close_run = [&](std::size_t start, std::size_t end) {
    if (start >= end) return;
    PhraseCandidate c;
    c.start = start;
    c.length = end - start;
    c.distance = std::numeric_limits<std::size_t>::max();
    for (std::size_t p = start; p < end; ++p) {
      if (p > start) c.phrase.push_back(' ');
      c.phrase += toks[p].surface;
      for (auto q : occurrences) c.distance = std::min(c.distance, p > q ? p - q : q - p);
    }
    runs.push_back(std::move(c));
  };
  std::size_t run_start = 0;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    const bool content_word = toks[i].cls == TokenClass::Word && !stoplist.contains(toks[i].surface);
    if (!content_word) {
      close_run(run_start, i);
      run_start = i + 1;
    }
  }
  close_run(run_start, toks.size());
  std::stable_sort(runs.begin(), runs.end(),
                   [](const PhraseCandidate& a, const PhraseCandidate& b) { return a.distance < b.distance; });
  return runs;
}

QueryResult similar_paragraphs(const ParagraphModel& model, std::string_view paragraph_id, std::size_t k) {
  auto q = model.find(paragraph_id);
  if (!q) throw UnknownParagraph("unknown paragraph id " + std::string(paragraph_id));
  if (k == 0) return {};
  return rank_by_cosine(
      model.paragraph_vectors, row_of(model.paragraph_vectors, *q), k,
      [&](std::size_t i) { return i != *q; },
      [&](std::size_t i) { return Token{model.paragraph_ids[i], TokenClass::ParagraphId}; });
}

}  // namespace mathemb
