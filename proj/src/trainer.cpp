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

#include "mathemb/trainer.hpp"

#include <algorithm>
#include <atomic>
#include <random>
#include <thread>

#include "mathemb/errors.hpp"
#include "mathemb/sampling.hpp"

namespace mathemb {

void TrainingConfig::validate() const {
  if (dimensions < 1) throw DomainError("dimensions must be >= 1");
  if (window < 1) throw DomainError("window must be >= 1");
  if (min_count < 1) throw DomainError("min_count must be >= 1");
  if (negatives < 1) throw DomainError("negatives must be >= 1");
  if (epochs < 0) throw DomainError("epochs must be >= 0");
  if (workers < 1) throw DomainError("workers must be >= 1");
  if (!(learning_rate > 0.0)) throw DomainError("learning_rate must be > 0");
  if (subsample_threshold < 0.0) throw DomainError("subsample threshold must be >= 0");
}

std::optional<std::size_t> ParagraphModel::find(std::string_view paragraph_id) const {
  auto it = std::find(paragraph_ids.begin(), paragraph_ids.end(), paragraph_id);
  if (it == paragraph_ids.end()) return std::nullopt;
  return static_cast<std::size_t>(it - paragraph_ids.begin());
}

namespace {

using Engine = std::mt19937_64;

Engine worker_engine(std::uint64_t seed, int worker) {
  // Worker 0 uses the run seed itself.
  return Engine(seed + 0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(worker));
}

void init_uniform(Matrix& m, Engine& rng) {
  const double scale = 1.0 / static_cast<double>(m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      m(i, j) = static_cast<Real>((uniform01(rng) - 0.5) * scale);
    }
  }
}

// One SGD step of the SGNS objective with preallocated scratch buffers.
class SgnsStep {
 public:
  SgnsStep(const NoiseTable& noise, int negatives, int dims)
      : noise_(noise), neg_ids_(negatives), neg_rows_(negatives, dims) {}

  double operator()(Matrix& inputs, std::size_t in_row, Matrix& outputs, std::size_t ctx_row,
                    Real lr, Engine& rng) {
    for (std::size_t n = 0; n < neg_ids_.size(); ++n) {
      neg_ids_[n] = negative_sample(noise_, rng, ctx_row);
      neg_rows_.row(static_cast<Eigen::Index>(n)) = outputs.row(static_cast<Eigen::Index>(neg_ids_[n]));
    }
    const auto in = static_cast<Eigen::Index>(in_row);
    const auto ctx = static_cast<Eigen::Index>(ctx_row);
    Real loss = sgns_gradients_into<Real>(inputs.row(in).transpose(), outputs.row(ctx).transpose(),
                                          neg_rows_, grad_center_, grad_context_, grad_negatives_);
    inputs.row(in).noalias() -= lr * grad_center_.transpose();
    outputs.row(ctx).noalias() -= lr * grad_context_.transpose();
    for (std::size_t n = 0; n < neg_ids_.size(); ++n) {
      outputs.row(static_cast<Eigen::Index>(neg_ids_[n])).noalias() -=
          lr * grad_negatives_.row(static_cast<Eigen::Index>(n));
    }
    return loss;
  }

 private:
  const NoiseTable& noise_;
  std::vector<std::size_t> neg_ids_;
  Matrix neg_rows_;
  Vector<Real> grad_center_, grad_context_;
  Matrix grad_negatives_;
};

struct EpochTotals {
  double loss = 0.0;
  std::int64_t pairs = 0;
};

// Shared driver for both objectives. `visit(paragraph, worker, lr, totals)`
// runs the SGD steps for one paragraph; the driver handles sharding, the learning-rate
// schedule and per-epoch checks.
template <class Visit>
std::vector<double> run_epochs(const TrainingConfig& cfg, std::span<const std::vector<std::size_t>> encoded,
                               Visit&& visit,
                               const std::vector<Matrix*>& watched) {
  std::int64_t total_tokens = 0;
  for (const auto& p : encoded) total_tokens += static_cast<std::int64_t>(p.size());
  const double schedule_len = static_cast<double>(cfg.epochs) * static_cast<double>(total_tokens) + 1.0;
  std::atomic<std::int64_t> processed{0};
  std::vector<double> epoch_loss;

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    std::vector<EpochTotals> totals(static_cast<std::size_t>(cfg.workers));
    auto work = [&](int w) {
      auto& tot = totals[static_cast<std::size_t>(w)];
      for (std::size_t p = static_cast<std::size_t>(w); p < encoded.size();
           p += static_cast<std::size_t>(cfg.workers)) {
        double progress = static_cast<double>(processed.load(std::memory_order_relaxed)) / schedule_len;
        auto lr = static_cast<Real>(cfg.learning_rate * std::max(1e-4, 1.0 - progress));
        visit(p, static_cast<std::size_t>(w), lr, tot);
        processed.fetch_add(static_cast<std::int64_t>(encoded[p].size()), std::memory_order_relaxed);
      }
    };
    if (cfg.workers == 1) {
      work(0);
    } else {
      std::vector<std::jthread> threads;
      for (int w = 0; w < cfg.workers; ++w) threads.emplace_back(work, w);
    }
    EpochTotals sum;
    for (const auto& t : totals) {
      sum.loss += t.loss;
      sum.pairs += t.pairs;
    }
    epoch_loss.push_back(sum.pairs > 0 ? sum.loss / static_cast<double>(sum.pairs) : 0.0);
    for (const Matrix* m : watched) {
      if (!m->allFinite()) throw TrainingDiverged("non-finite vector entry after epoch " + std::to_string(epoch + 1));
    }
  }
  return epoch_loss;
}

std::vector<std::vector<std::size_t>> encode_corpus(std::span<const Paragraph> corpus, const Vocabulary& vocab) {
  std::vector<std::vector<std::size_t>> encoded;
  encoded.reserve(corpus.size());
  for (const auto& p : corpus) encoded.push_back(vocab.encode(p.tokens));
  return encoded;
}

std::vector<Engine> make_engines(const TrainingConfig& cfg) {
  std::vector<Engine> engines;
  for (int w = 0; w < cfg.workers; ++w) engines.push_back(worker_engine(cfg.seed, w));
  return engines;
}

}  // namespace

EmbeddingModel train_skipgram(std::span<const Paragraph> corpus, const TrainingConfig& config) {
  config.validate();
  EmbeddingModel model;
  model.config = config;
  model.vocabulary = build_vocabulary(corpus, config.min_count, config.subsample_threshold);
  const auto V = static_cast<Eigen::Index>(model.vocabulary.size());
  model.input_vectors.resize(V, config.dimensions);
  model.output_vectors = Matrix::Zero(V, config.dimensions);

  auto engines = make_engines(config);
  init_uniform(model.input_vectors, engines[0]);

  const auto encoded = encode_corpus(corpus, model.vocabulary);
  const NoiseTable noise = NoiseTable::from_vocabulary(model.vocabulary);
  std::vector<SgnsStep> steps;
  for (int w = 0; w < config.workers; ++w) steps.emplace_back(noise, config.negatives, config.dimensions);

  auto visit = [&](std::size_t p, std::size_t w, Real lr, EpochTotals& tot) {
    auto& rng = engines[w];
    auto& step = steps[w];
    for (const auto& [center, context] :
         generate_training_pairs(std::span<const std::size_t>(encoded[p]), model.vocabulary, config.window, rng)) {
      tot.loss += step(model.input_vectors, center, model.output_vectors, context, lr, rng);
      ++tot.pairs;
    }
  };
  model.epoch_loss = run_epochs(config, encoded, visit, {&model.input_vectors, &model.output_vectors});
  return model;
}

ParagraphModel train_dbow_pv(std::span<const Paragraph> corpus, const TrainingConfig& config) {
  config.validate();
  ParagraphModel model;
  model.config = config;
  model.vocabulary = build_vocabulary(corpus, config.min_count, config.subsample_threshold);
  const auto V = static_cast<Eigen::Index>(model.vocabulary.size());
  const auto P = static_cast<Eigen::Index>(corpus.size());
  model.paragraph_ids.reserve(corpus.size());
  for (const auto& p : corpus) model.paragraph_ids.push_back(p.paragraph_id);
  model.paragraph_vectors.resize(P, config.dimensions);
  model.output_vectors = Matrix::Zero(V, config.dimensions);

  auto engines = make_engines(config);
  init_uniform(model.paragraph_vectors, engines[0]);

  const auto encoded = encode_corpus(corpus, model.vocabulary);
  const NoiseTable noise = NoiseTable::from_vocabulary(model.vocabulary);
  std::vector<SgnsStep> steps;
  for (int w = 0; w < config.workers; ++w) steps.emplace_back(noise, config.negatives, config.dimensions);

  auto visit = [&](std::size_t p, std::size_t w, Real lr, EpochTotals& tot) {
    auto& rng = engines[w];
    auto& step = steps[w];
    for (std::size_t token : subsample(std::span<const std::size_t>(encoded[p]), model.vocabulary, rng)) {
      tot.loss += step(model.paragraph_vectors, p, model.output_vectors, token, lr, rng);
      ++tot.pairs;
    }
  };
  model.epoch_loss =
      run_epochs(config, encoded, visit, {&model.paragraph_vectors, &model.output_vectors});
  return model;
}

}  // namespace mathemb
