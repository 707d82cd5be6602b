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
#include <Eigen/Eigenvalues>
#include <cstdint>
#include <utility>
#include <vector>

#include "mathemb/errors.hpp"
#include "mathemb/token.hpp"
#include "mathemb/trainer.hpp"

namespace mathemb {

/// Rows to project: the center token first, then its neighbors in cosine
/// order.
struct ProjectionSet {
  std::vector<Token> tokens;
  Matrix vectors;
};

/// Center plus its top_n nearest neighbors over all classes. Throws
/// UnknownToken, and DomainError when top_n exceeds V - 1.
ProjectionSet select_projection_set(const EmbeddingModel& model, const Token& center, std::size_t top_n);

/// Projects mean-centered rows onto the leading `out_dims` principal axes.
///
/// Each axis is oriented so that its largest-magnitude score is positive,
/// which makes the result independent of the eigensolver's sign choice and of
/// any rotation applied to the input. Axes beyond the data rank come out as
/// zero columns. Throws DegenerateData for fewer than two rows and
/// NonFiniteInput for NaN or infinite entries.
template <typename Derived>
Eigen::MatrixXd pca_project(const Eigen::MatrixBase<Derived>& points, int out_dims = 2) {
  const Eigen::Index n = points.rows();
  if (n < 2) throw DegenerateData("PCA needs at least two points");
  if (out_dims < 1) throw DomainError("out_dims must be positive");
  const Eigen::MatrixXd x = points.template cast<double>();
  if (!x.allFinite()) throw NonFiniteInput("PCA input contains NaN or infinity");

  const Eigen::MatrixXd centered = x.rowwise() - x.colwise().mean();
  const Eigen::MatrixXd cov = (centered.transpose() * centered) / static_cast<double>(n - 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);

  const Eigen::Index d = x.cols();
  const Eigen::Index k = std::min<Eigen::Index>(out_dims, d);
  Eigen::MatrixXd scores = Eigen::MatrixXd::Zero(n, out_dims);
  const double scale = eig.eigenvalues().cwiseAbs().maxCoeff();
  for (Eigen::Index c = 0; c < k; ++c) {
    // Eigenvalues come in ascending order.
    if (eig.eigenvalues()(d - 1 - c) <= 1e-12 * scale || scale == 0.0) break;
    Eigen::VectorXd col = centered * eig.eigenvectors().col(d - 1 - c);
    Eigen::Index arg = 0;
    col.cwiseAbs().maxCoeff(&arg);
    if (col(arg) < 0) col = -col;
    scores.col(c) = col;
  }
  return scores;
}

struct TsneConfig {
  double perplexity = 80.0;
  int iterations = 1000;
  double early_exaggeration = 12.0;
  int exaggeration_iterations = 250;
  double learning_rate = 200.0;
  double initial_momentum = 0.5;
  double final_momentum = 0.8;
  int momentum_switch = 250;
  std::uint64_t seed = 1;

  /// Throws DomainError for non-positive perplexity, learning rate or
  /// iteration count.
  void validate() const;
};

/// Symmetrized input affinities.
struct JointAffinities {
  Eigen::MatrixXd p;  // n x n, symmetric, zero diagonal, sums to 1
  // Perplexity 2^H of each conditional row after the bandwidth search.
  std::vector<double> achieved_perplexity;
};

/// Gaussian conditionals with a per-point bandwidth found by bisection (at
/// most 200 steps) so each row's perplexity matches the target, then
/// p_ij = (p_j|i + p_i|j) / 2n.
JointAffinities joint_affinities(const Eigen::MatrixXd& points, double perplexity);

/// KL(P || Q) with Student-t (one degree of freedom) output affinities Q.
double kl_divergence(const Eigen::MatrixXd& p, const Eigen::MatrixXd& y);

struct TsneResult {
  Eigen::MatrixXd coordinates;  // n x 2
  std::vector<double> achieved_perplexity;
  // (iteration, KL) every 50 iterations and at the last one.
  std::vector<std::pair<int, double>> kl_trace;
};

/// Exact t-SNE. The start configuration is the PCA projection rescaled to a
/// standard deviation of 1e-4 per axis, plus seeded Gaussian jitter one
/// hundredth of that size so that different seeds explore different runs.
/// Affinities and the start configuration are rounded to 30 significant bits
/// before optimizing, so inputs equal up to rounding noise (for instance a
/// rotated copy) give the same run.
///
/// Throws PerplexityTooLarge when n < 3 * perplexity, NonFiniteInput for NaN
/// or infinite entries, DegenerateData for fewer than two points.
TsneResult tsne_run(const Eigen::MatrixXd& points, const TsneConfig& config);

template <typename Derived>
Eigen::MatrixXd tsne_project(const Eigen::MatrixBase<Derived>& points, const TsneConfig& config) {
  return tsne_run(points.template cast<double>(), config).coordinates;
}

}  // namespace mathemb
