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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "mathemb/corpus.hpp"
#include "mathemb/errors.hpp"
#include "mathemb/vocabulary.hpp"

namespace mathemb {

// Random draws are defined on raw 64-bit engine output so results do not
// depend on the standard library's distribution implementations.

template <class Rng>
double uniform01(Rng& rng) {
  static_assert(Rng::max() == std::numeric_limits<std::uint64_t>::max() && Rng::min() == 0,
                "expects a full-range 64-bit engine");
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [1, n].
template <class Rng>
int uniform_1_to(Rng& rng, int n) {
  return 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(n));
}

/// Unigram noise distribution, P(i) ∝ count_i^power.
class NoiseTable {
 public:
  explicit NoiseTable(std::span<const std::int64_t> counts, double power = 0.75) {
    cumulative_.reserve(counts.size());
    double acc = 0.0;
    for (auto c : counts) {
      acc += c > 0 ? std::pow(static_cast<double>(c), power) : 0.0;
      cumulative_.push_back(acc);
    }
    if (cumulative_.empty() || !(acc > 0.0)) throw DegenerateVocabulary("noise table needs a positive count");
  }

  static NoiseTable from_vocabulary(const Vocabulary& vocab, double power = 0.75) {
    std::vector<std::int64_t> counts;
    counts.reserve(vocab.size());
    for (const auto& e : vocab.entries()) counts.push_back(e.count);
    return NoiseTable(counts, power);
  }

  std::size_t size() const noexcept { return cumulative_.size(); }
  double total() const noexcept { return cumulative_.back(); }

  double probability(std::size_t i) const {
    double lo = i == 0 ? 0.0 : cumulative_[i - 1];
    return (cumulative_[i] - lo) / total();
  }

  template <class Rng>
  std::size_t draw(Rng& rng) const {
    double u = uniform01(rng) * total();
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    if (it == cumulative_.end()) --it;
    return static_cast<std::size_t>(it - cumulative_.begin());
  }

 private:
  std::vector<double> cumulative_;
};

/// Draws from the noise table, redrawing whenever the result equals
/// `exclude`. Throws DegenerateVocabulary if the exclusion leaves nothing.
template <class Rng>
std::size_t negative_sample(const NoiseTable& table, Rng& rng,
                            std::optional<std::size_t> exclude = std::nullopt) {
  if (exclude && *exclude < table.size() && table.probability(*exclude) >= 1.0) {
    throw DegenerateVocabulary("cannot exclude the only token with noise mass");
  }
  for (;;) {
    std::size_t i = table.draw(rng);
    if (!exclude || i != *exclude) return i;
  }
}

/// Applies frequent-token subsampling: one uniform draw per position when the
/// vocabulary's threshold is positive, none otherwise.
template <class Rng>
std::vector<std::size_t> subsample(std::span<const std::size_t> ids, const Vocabulary& vocab, Rng& rng) {
  const double threshold = vocab.subsample_threshold();
  if (!(threshold > 0.0)) return {ids.begin(), ids.end()};
  std::vector<std::size_t> kept;
  kept.reserve(ids.size());
  for (auto id : ids) {
    double keep = subsample_keep_probability(vocab.frequency(id), threshold);
    if (uniform01(rng) < keep) kept.push_back(id);
  }
  return kept;
}

using IndexPair = std::pair<std::size_t, std::size_t>;

/// (center, context) pairs for one paragraph already encoded against the
/// vocabulary. After subsampling, each surviving position draws an effective
/// window b in [1, window] and pairs with every position within distance b.
template <class Rng>
std::vector<IndexPair> generate_training_pairs(std::span<const std::size_t> ids, const Vocabulary& vocab,
                                               int window, Rng& rng) {
  std::vector<std::size_t> seq = subsample(ids, vocab, rng);
  std::vector<IndexPair> pairs;
  const auto n = static_cast<std::ptrdiff_t>(seq.size());
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const std::ptrdiff_t b = uniform_1_to(rng, window);
    for (std::ptrdiff_t j = std::max<std::ptrdiff_t>(0, i - b); j <= std::min(n - 1, i + b); ++j) {
      if (j != i) pairs.emplace_back(seq[i], seq[j]);
    }
  }
  return pairs;
}

template <class Rng>
std::vector<IndexPair> generate_training_pairs(const Paragraph& paragraph, const Vocabulary& vocab,
                                               int window, Rng& rng) {
  auto ids = vocab.encode(paragraph.tokens);
  return generate_training_pairs(std::span<const std::size_t>(ids), vocab, window, rng);
}

}  // namespace mathemb
