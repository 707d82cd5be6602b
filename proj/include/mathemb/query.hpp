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

#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mathemb/corpus.hpp"
#include "mathemb/errors.hpp"
#include "mathemb/trainer.hpp"

namespace mathemb {

/// Cosine similarity, evaluated in double whatever the operand scalar type.
/// Throws ZeroVector if either operand has zero norm.
template <typename DerivedA, typename DerivedB>
double cosine(const Eigen::MatrixBase<DerivedA>& u, const Eigen::MatrixBase<DerivedB>& v) {
  const auto a = u.template cast<double>();
  const auto b = v.template cast<double>();
  const double nu = a.norm();
  const double nv = b.norm();
  if (nu == 0.0 || nv == 0.0) throw ZeroVector("cosine of a zero vector");
  return std::clamp(a.dot(b) / (nu * nv), -1.0, 1.0);
}

struct Neighbor {
  Token token;
  std::size_t index = 0;
  double cosine = 0.0;

  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

/// Ranked by cosine, descending; ties broken by vocabulary index.
using QueryResult = std::vector<Neighbor>;

/// Top-k rows of `vectors` by cosine to `target` among rows accepted by
/// `include`. Zero rows are never returned. Throws ZeroVector for a zero or
/// non-finite target.
QueryResult rank_by_cosine(const Matrix& vectors, const Eigen::VectorXd& target, std::size_t k,
                           const std::function<bool(std::size_t)>& include,
                           const std::function<Token(std::size_t)>& label);

/// Resolves CLI notation: "m:x", "s:+", "e:<key>" and "#id" name their class
/// explicitly; a bare surface is looked up as a word first and as a math
/// identifier second. Throws UnknownToken.
Token resolve_token(const Vocabulary& vocab, std::string_view notation);

/// Exact top-k over the input vectors; the query token itself is excluded.
QueryResult nearest_neighbors(const EmbeddingModel& model, const Token& token, std::size_t k,
                              ClassFilter filter = ClassFilter::All);

struct AnalogyQuery {
  Token a;
  Token b;
  Token c;
  bool exclude_inputs = true;
};

/// 3CosAdd: ranks tokens by cosine to v_b - v_a + v_c.
QueryResult analogy(const EmbeddingModel& model, const AnalogyQuery& query, std::size_t k,
                    ClassFilter filter = ClassFilter::All);

struct DefiniensRecord {
  std::string formula_id;
  Token identifier;
  std::string gold_definiens;
};

struct DefiniensBenchmark {
  std::vector<DefiniensRecord> records;
};

/// TSV: formula_id, identifier_surface, gold_definiens. A first line starting
/// with "formula_id" is taken as a header; '#' lines are comments.
/// Identifiers are math identifiers. Throws FormatError.
DefiniensBenchmark read_benchmark(std::istream& in);
DefiniensBenchmark read_benchmark_file(const std::filesystem::path& path);

/// A known (concept word, identifier) relation, e.g. (variable, x).
struct Anchor {
  Token concept_word;
  Token identifier;
};

/// (variable, x), (variable, a), (function, f).
std::vector<Anchor> default_anchors();
/// Parses "concept:identifier,concept:identifier,...".
std::vector<Anchor> parse_anchors(std::string_view list);

struct RecordResult {
  DefiniensRecord record;
  bool in_model = false;
  QueryResult kept;  // word candidates with cosine >= threshold
  bool hit = false;
};

struct EvalReport {
  double precision = 0.0;
  double recall = 0.0;
  double threshold = 0.0;
  std::size_t true_positives = 0;
  std::size_t kept_candidates = 0;
  std::vector<RecordResult> records;
};

/// For each record the target is the mean over anchors of
/// (v_concept - v_anchor_identifier + v_identifier). Word-class tokens other
/// than the anchor concepts with cosine >= threshold are kept. A record is a
/// true positive when any kept candidate occurs as a word of its gold phrase
/// (case-insensitive).
///
///   precision = TP / kept candidates (0 when nothing is kept)
///   recall    = TP / records
///
/// Identifiers missing from the model are misses. Throws UnknownToken for a
/// missing anchor token.
EvalReport evaluate_definiens(const EmbeddingModel& model, const DefiniensBenchmark& benchmark,
                              std::span<const Anchor> anchors, double threshold);

struct PhraseCandidate {
  std::string phrase;
  std::size_t start = 0;   // token position of the first word
  std::size_t length = 0;  // words in the phrase
  std::size_t distance = 0;

  friend bool operator==(const PhraseCandidate&, const PhraseCandidate&) = default;
};

/// Candidates are maximal runs of non-stopword word tokens; the score is the
/// smallest position difference between any word of the run and any
/// occurrence of `identifier`. Ranked by ascending distance, leftmost first
/// on ties. Throws IdentifierNotFound.
std::vector<PhraseCandidate> proximity_rank_definiens(const Paragraph& paragraph, const Token& identifier,
                                                      const Stoplist& stoplist = default_stopwords());

/// Top-k paragraphs by cosine of paragraph vectors, the query excluded.
/// Throws UnknownParagraph.
QueryResult similar_paragraphs(const ParagraphModel& model, std::string_view paragraph_id, std::size_t k);

}  // namespace mathemb
