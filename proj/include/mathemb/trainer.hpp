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

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mathemb/corpus.hpp"
#include "mathemb/sgns.hpp"
#include "mathemb/vocabulary.hpp"

namespace mathemb {

using Real = float;
using Matrix = RowMatrix<Real>;

struct TrainingConfig {
  int dimensions = 300;
  int window = 15;
  std::int64_t min_count = 10;
  // Frequent-token subsampling threshold; 0 disables subsampling.
  double subsample_threshold = 1e-5;
  int negatives = 5;
  int epochs = 5;
  // Decays linearly to 1e-4 of this value over the whole run.
  double learning_rate = 0.025;
  std::uint64_t seed = 1;
  int workers = 1;

  /// Throws DomainError when an invariant is violated.
  void validate() const;

  friend bool operator==(const TrainingConfig&, const TrainingConfig&) = default;
};

struct EmbeddingModel {
  Vocabulary vocabulary;
  Matrix input_vectors;   // V x d
  Matrix output_vectors;  // V x d
  TrainingConfig config;
  // Mean pair loss per epoch; not persisted.
  std::vector<double> epoch_loss;

  std::size_t dimensions() const noexcept { return static_cast<std::size_t>(input_vectors.cols()); }
};

struct ParagraphModel {
  std::vector<std::string> paragraph_ids;
  Matrix paragraph_vectors;  // P x d
  Vocabulary vocabulary;
  Matrix output_vectors;     // V x d, trained jointly
  TrainingConfig config;
  std::vector<double> epoch_loss;

  std::optional<std::size_t> find(std::string_view paragraph_id) const;
};

/// Skip-gram with negative sampling.
///
/// Input vectors start uniform in [-0.5/d, 0.5/d] and output vectors at zero.
/// Paragraphs are visited in corpus order every epoch. With workers == 1 the
/// result is a pure function of (corpus, config). With more workers the
/// paragraphs are sharded and the threads update the shared matrices without
/// locking, so only finiteness is guaranteed, not bitwise reproducibility.
///
/// Throws EmptyVocabulary when nothing reaches min_count and TrainingDiverged
/// if a non-finite value appears.
EmbeddingModel train_skipgram(std::span<const Paragraph> corpus, const TrainingConfig& config);

/// Distributed bag-of-words paragraph vectors: each paragraph vector is the
/// input side of the same SGNS objective, predicting every token of its
/// paragraph. Token output vectors are trained jointly.
ParagraphModel train_dbow_pv(std::span<const Paragraph> corpus, const TrainingConfig& config);

}  // namespace mathemb
