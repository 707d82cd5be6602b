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

#include "mathemb/vocabulary.hpp"

#include <algorithm>
#include <cmath>

#include "mathemb/errors.hpp"

namespace mathemb {

TokenCounts count_tokens(std::span<const Paragraph> paragraphs) {
  TokenCounts counts;
  for (const auto& p : paragraphs) {
    for (const auto& t : p.tokens) ++counts[t];
  }
  return counts;
}

TokenCounts count_tokens(std::span<const Document> documents) {
  TokenCounts counts;
  for (const auto& d : documents) merge_counts(counts, count_tokens(d.paragraphs));
  return counts;
}

void merge_counts(TokenCounts& into, const TokenCounts& from) {
  for (const auto& [token, n] : from) into[token] += n;
}

Vocabulary Vocabulary::from_counts(const TokenCounts& counts, std::int64_t min_count,
                                   double subsample_threshold) {
  if (min_count < 1) throw DomainError("min_count must be >= 1");
  std::vector<Entry> kept;
  for (const auto& [token, n] : counts) {
    if (n >= min_count) kept.push_back({token, n});
  }
  if (kept.empty()) throw EmptyVocabulary("no token reaches min_count " + std::to_string(min_count));
  std::sort(kept.begin(), kept.end(), [](const Entry& a, const Entry& b) {
    if (a.count != b.count) return a.count > b.count;
    return a.token < b.token;
  });
  return from_entries(std::move(kept), min_count, subsample_threshold);
}

Vocabulary Vocabulary::from_entries(std::vector<Entry> entries, std::int64_t min_count,
                                    double subsample_threshold) {
  Vocabulary v;
  v.entries_ = std::move(entries);
  v.min_count_ = min_count;
  v.subsample_threshold_ = subsample_threshold;
  v.reindex();
  return v;
}

void Vocabulary::reindex() {
  index_.clear();
  total_ = 0;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (!index_.emplace(entries_[i].token, i).second) {
      throw FormatError("duplicate vocabulary entry " + to_notation(entries_[i].token));
    }
    total_ += entries_[i].count;
  }
}

std::optional<std::size_t> Vocabulary::find(const Token& token) const {
  auto it = index_.find(token);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Vocabulary::index_of(const Token& token) const {
  if (auto i = find(token)) return *i;
  throw UnknownToken(to_notation(token));
}

double Vocabulary::frequency(std::size_t index) const {
  return total_ > 0 ? static_cast<double>(entries_[index].count) / static_cast<double>(total_) : 0.0;
}

std::vector<std::size_t> Vocabulary::encode(std::span<const Token> tokens) const {
  std::vector<std::size_t> ids;
  ids.reserve(tokens.size());
  for (const auto& t : tokens) {
    if (auto i = find(t)) ids.push_back(*i);
  }
  return ids;
}

Vocabulary build_vocabulary(std::span<const Document> corpus, std::int64_t min_count,
                            double subsample_threshold) {
  return Vocabulary::from_counts(count_tokens(corpus), min_count, subsample_threshold);
}

Vocabulary build_vocabulary(std::span<const Paragraph> corpus, std::int64_t min_count,
                            double subsample_threshold) {
  return Vocabulary::from_counts(count_tokens(corpus), min_count, subsample_threshold);
}

double subsample_keep_probability(double freq, double threshold) {
  if (!(threshold > 0.0)) throw DomainError("subsample threshold must be > 0");
  if (!(freq > 0.0)) throw DomainError("token frequency must be > 0");
  double r = threshold / freq;
  return std::min(1.0, std::sqrt(r) + r);
}

}  // namespace mathemb
