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

#include <doctest.h>

#include <cmath>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "mathemb/errors.hpp"
#include "mathemb/vocabulary.hpp"
#include "mathemb/zipf.hpp"

using namespace mathemb;

namespace {

Paragraph parse_paragraph(const std::string& id, const std::string& line) {
  Paragraph p{id, {}};
  std::istringstream in(line);
  std::string field;
  while (in >> field) p.tokens.push_back(from_notation(field));
  return p;
}

TokenCounts counts_of(std::initializer_list<std::pair<Token, std::int64_t>> items) {
  TokenCounts c;
  for (const auto& [t, n] : items) c[t] = n;
  return c;
}

}  // namespace

TEST_SUITE("vocabulary") {
  TEST_CASE("min_count boundary") {
    const auto counts = counts_of({{Token::word("nine"), 9}, {Token::word("ten"), 10}, {Token::word("many"), 40}});
    const auto v = Vocabulary::from_counts(counts, 10);
    CHECK(v.size() == 2);
    CHECK_FALSE(v.find(Token::word("nine")).has_value());
    CHECK(v.find(Token::word("ten")).has_value());
    CHECK(v.index_of(Token::word("many")) == 0);
    CHECK_THROWS_AS(Vocabulary::from_counts(counts, 41), EmptyVocabulary);
    CHECK_THROWS_AS(Vocabulary::from_counts(counts, 0), DomainError);
    CHECK_THROWS_AS(v.index_of(Token::word("nine")), UnknownToken);
  }

  TEST_CASE("hand-tallied 30-token corpus") {
    const std::vector<Paragraph> corpus{
        parse_paragraph("p0", "the function m:f is continuous the m:f map is smooth"),
        parse_paragraph("p1", "let m:x be a variable and m:x be the variable"),
        parse_paragraph("p2", "the function m:f of m:x is a smooth function the"),
    };
    const auto v = build_vocabulary(std::span<const Paragraph>(corpus), 1);
    CHECK(v.total_count() == 30);
    const std::vector<std::pair<std::string, std::int64_t>> expected{
        {"the", 5},      {"m:f", 3},   {"function", 3}, {"is", 3},  {"m:x", 3},        {"a", 2},
        {"be", 2},       {"smooth", 2}, {"variable", 2}, {"and", 1}, {"continuous", 1}, {"let", 1},
        {"map", 1},      {"of", 1},
    };
    REQUIRE(v.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
      CAPTURE(i);
      CHECK(to_notation(v[i].token) == expected[i].first);
      CHECK(v[i].count == expected[i].second);
      CHECK(v.index_of(v[i].token) == i);
    }
    const auto pruned = build_vocabulary(std::span<const Paragraph>(corpus), 3);
    CHECK(pruned.size() == 5);
    CHECK(pruned.total_count() == 17);
  }

  TEST_CASE("word and identifier with the same surface are separate entries") {
    const std::vector<Paragraph> corpus{parse_paragraph("p", "a m:a a m:a a")};
    const auto v = build_vocabulary(std::span<const Paragraph>(corpus), 1);
    CHECK(v.size() == 2);
    CHECK(v[v.index_of(Token::word("a"))].count == 3);
    CHECK(v[v.index_of(Token::identifier("a"))].count == 2);
  }

  TEST_CASE("merging counts is order independent") {
    const auto a = counts_of({{Token::word("x"), 2}, {Token::identifier("x"), 1}});
    const auto b = counts_of({{Token::word("x"), 5}, {Token::word("y"), 1}});
    TokenCounts ab, ba;
    merge_counts(ab, a);
    merge_counts(ab, b);
    merge_counts(ba, b);
    merge_counts(ba, a);
    CHECK(ab == ba);
    CHECK(ab.at(Token::word("x")) == 7);
  }

  TEST_CASE("encode drops out-of-vocabulary tokens") {
    const auto v = Vocabulary::from_counts(counts_of({{Token::word("x"), 3}, {Token::word("y"), 2}}), 1);
    const std::vector<Token> toks{Token::word("y"), Token::word("z"), Token::word("x")};
    CHECK(v.encode(toks) == std::vector<std::size_t>{1, 0});
  }

  TEST_CASE("subsampling keep probability") {
    CHECK(subsample_keep_probability(1e-5, 1e-5) == 1.0);
    CHECK(subsample_keep_probability(1e-3, 1e-5) == doctest::Approx(0.11).epsilon(1e-12));
    CHECK(subsample_keep_probability(0.5, 1e-3) == doctest::Approx(std::sqrt(2e-3) + 2e-3));
    CHECK_THROWS_AS(subsample_keep_probability(0.1, 0.0), DomainError);
    CHECK_THROWS_AS(subsample_keep_probability(0.0, 1e-5), DomainError);
    CHECK_THROWS_AS(subsample_keep_probability(-0.1, 1e-5), DomainError);
  }
}

TEST_SUITE("zipf") {
  TEST_CASE("exact Zipf counts give slope -1") {
    TokenCounts counts;
    for (int r = 1; r <= 1000; ++r) counts[Token::word("w" + std::to_string(r))] = std::llround(1e6 / r);
    const auto s = zipf_fit(counts, ClassFilter::All);
    CHECK(std::abs(s.zipf_slope + 1.0) <= 0.05);
    CHECK(s.zipf_r2 > 0.999);
    REQUIRE(s.rank_frequency.size() == 1000);
    for (std::size_t i = 1; i < s.rank_frequency.size(); ++i) {
      CHECK(s.rank_frequency[i].count <= s.rank_frequency[i - 1].count);
      CHECK(s.rank_frequency[i].rank == static_cast<std::int64_t>(i + 1));
    }
  }

  TEST_CASE("uniform counts give slope 0") {
    TokenCounts counts;
    for (int r = 0; r < 50; ++r) counts[Token::identifier("x" + std::to_string(r))] = 7;
    const auto s = zipf_fit(counts, ClassFilter::Math);
    CHECK(std::abs(s.zipf_slope) <= 0.01);
  }

  TEST_CASE("fewer than two types is degenerate") {
    CHECK_THROWS_AS(zipf_fit(counts_of({{Token::word("only"), 12}}), ClassFilter::All), DegenerateDistribution);
    CHECK_THROWS_AS(zipf_fit(counts_of({{Token::word("w"), 3}, {Token::identifier("x"), 2}}), ClassFilter::Math),
                    DegenerateDistribution);
  }

  TEST_CASE("class filter") {
    const auto counts = counts_of({{Token::word("the"), 100},
                                   {Token::identifier("x"), 10},
                                   {Token::symbol("+"), 5},
                                   {Token{"#p0", TokenClass::ParagraphId}, 50}});
    auto kinds = [](const std::vector<RankFrequency>& rf) {
      std::vector<std::string> out;
      for (const auto& r : rf) out.push_back(to_notation(r.token));
      return out;
    };
    CHECK(kinds(rank_frequency(counts, ClassFilter::Math)) == std::vector<std::string>{"m:x", "s:+"});
    CHECK(kinds(rank_frequency(counts, ClassFilter::Word)) == std::vector<std::string>{"the"});
    CHECK(kinds(rank_frequency(counts, ClassFilter::All)) == std::vector<std::string>{"the", "m:x", "s:+"});
  }
}
