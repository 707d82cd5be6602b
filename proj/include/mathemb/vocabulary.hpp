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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "mathemb/corpus.hpp"
#include "mathemb/token.hpp"

namespace mathemb {

using TokenCounts = std::unordered_map<Token, std::int64_t>;

TokenCounts count_tokens(std::span<const Paragraph> paragraphs);
TokenCounts count_tokens(std::span<const Document> documents);
/// Associative and commutative: merge order never changes the result.
void merge_counts(TokenCounts& into, const TokenCounts& from);

class Vocabulary {
 public:
  struct Entry {
    Token token;
    std::int64_t count = 0;

    friend bool operator==(const Entry&, const Entry&) = default;
  };

  Vocabulary() = default;

  /// Keeps tokens with count >= min_count, indexed by descending count with
  /// ties broken by surface (then class). Throws EmptyVocabulary if nothing
  /// survives and DomainError if min_count < 1.
  static Vocabulary from_counts(const TokenCounts& counts, std::int64_t min_count,
                                double subsample_threshold = 1e-5);
  /// Entries are taken in the given index order (used when loading models).
  static Vocabulary from_entries(std::vector<Entry> entries, std::int64_t min_count,
                                 double subsample_threshold);

  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  const Entry& operator[](std::size_t index) const { return entries_[index]; }
  const std::vector<Entry>& entries() const noexcept { return entries_; }

  std::optional<std::size_t> find(const Token& token) const;
  /// Throws UnknownToken.
  std::size_t index_of(const Token& token) const;

  std::int64_t total_count() const noexcept { return total_; }
  double frequency(std::size_t index) const;
  std::int64_t min_count() const noexcept { return min_count_; }
  double subsample_threshold() const noexcept { return subsample_threshold_; }

  /// Index sequence of the in-vocabulary tokens; out-of-vocabulary tokens are
  /// dropped.
  std::vector<std::size_t> encode(std::span<const Token> tokens) const;

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) {
    return a.entries_ == b.entries_ && a.min_count_ == b.min_count_ &&
           a.subsample_threshold_ == b.subsample_threshold_;
  }

 private:
  void reindex();

  std::vector<Entry> entries_;
  std::unordered_map<Token, std::size_t> index_;
  std::int64_t total_ = 0;
  std::int64_t min_count_ = 1;
  double subsample_threshold_ = 1e-5;
};

Vocabulary build_vocabulary(std::span<const Document> corpus, std::int64_t min_count,
                            double subsample_threshold = 1e-5);
Vocabulary build_vocabulary(std::span<const Paragraph> corpus, std::int64_t min_count,
                            double subsample_threshold = 1e-5);

/// Probability of keeping one occurrence of a token with relative frequency
/// `freq`: min(1, sqrt(t/f) + t/f). Throws DomainError for freq <= 0 or
/// threshold <= 0.
double subsample_keep_probability(double freq, double threshold);

}  // namespace mathemb
