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

#include "mathemb/projection.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "mathemb/query.hpp"

namespace mathemb {

ProjectionSet select_projection_set(const EmbeddingModel& model, const Token& center, std::size_t top_n) {
  const std::size_t c = model.vocabulary.index_of(center);
  const std::size_t v = model.vocabulary.size();
  if (top_n > v - 1) {
    throw DomainError("top_n = " + std::to_string(top_n) + " exceeds vocabulary size - 1 = " +
                      std::to_string(v - 1));
  }
  std::vector<std::size_t> rows{c};
  for (const auto& n : nearest_neighbors(model, center, top_n, ClassFilter::All)) rows.push_back(n.index);

  ProjectionSet set;
  set.vectors.resize(static_cast<Eigen::Index>(rows.size()), model.input_vectors.cols());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    set.tokens.push_back(model.vocabulary[rows[r]].token);
    set.vectors.row(static_cast<Eigen::Index>(r)) = model.input_vectors.row(static_cast<Eigen::Index>(rows[r]));
  }
  return set;
}

void TsneConfig::validate() const {
  if (!(perplexity > 0.0)) throw DomainError("perplexity must be positive");
  if (iterations < 1) throw DomainError("iterations must be at least 1");
  if (!(learning_rate > 0.0)) throw DomainError("learning rate must be positive");
  if (!(early_exaggeration > 0.0)) throw DomainError("early exaggeration must be positive");
}

namespace {

constexpr int kMaxBisectionSteps = 200;
constexpr double kPerplexityTolerance = 1e-6;

Eigen::MatrixXd squared_distances(const Eigen::MatrixXd& x) {
  const Eigen::VectorXd norms = x.rowwise().squaredNorm();
  Eigen::MatrixXd d = (-2.0 * x * x.transpose()).colwise() + norms;
  d.rowwise() += norms.transpose();
  d = d.cwiseMax(0.0);
  d.diagonal().setZero();
  return d;
}

struct RowFit {
  double perplexity;
};

// Fills `row` with p_j|i for the given squared distances and returns the
// achieved perplexity. Distances are shifted by their minimum so exp never
// underflows to an all-zero row.
RowFit calibrate_row(const Eigen::MatrixXd& dist, Eigen::Index i, double target, Eigen::Ref<Eigen::VectorXd> row) {
  const Eigen::Index n = dist.rows();
  double dmin = std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 0; j < n; ++j) {
    if (j != i) dmin = std::min(dmin, dist(i, j));
  }
  const double log_target = std::log(target);

  double beta = 1.0;
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
  double best_err = std::numeric_limits<double>::infinity();
  double best_beta = beta;
  auto evaluate = [&](double b) {
    double sum = 0.0;
    double weighted = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j == i) {
        row(j) = 0.0;
        continue;
      }
      const double shifted = dist(i, j) - dmin;
      const double w = std::exp(-b * shifted);
      row(j) = w;
      sum += w;
      weighted += w * shifted;
    }
    row /= sum;
    return std::log(sum) + b * weighted / sum;  // entropy in nats
  };

  for (int step = 0; step < kMaxBisectionSteps; ++step) {
    const double h = evaluate(beta);
    const double err = std::abs(std::exp(h) - target);
    if (err < best_err) {
      best_err = err;
      best_beta = beta;
    }
    if (err <= kPerplexityTolerance) break;
    if (h > log_target) {
      lo = beta;
      beta = std::isinf(hi) ? beta * 2.0 : 0.5 * (beta + hi);
    } else {
      hi = beta;
      beta = lo == 0.0 ? beta * 0.5 : 0.5 * (beta + lo);
    }
  }
  const double h = evaluate(best_beta);
  return {std::exp(h)};
}

}  // namespace

JointAffinities joint_affinities(const Eigen::MatrixXd& points, double perplexity) {
  const Eigen::Index n = points.rows();
  if (n < 2) throw DegenerateData("t-SNE needs at least two points");
  if (!points.allFinite()) throw NonFiniteInput("t-SNE input contains NaN or infinity");
  if (static_cast<double>(n) < 3.0 * perplexity) {
    throw PerplexityTooLarge("perplexity " + std::to_string(perplexity) + " needs at least " +
                             std::to_string(static_cast<long long>(std::ceil(3.0 * perplexity))) +
                             " points, got " + std::to_string(n));
  }
  const Eigen::MatrixXd dist = squared_distances(points);

  // Column i holds p_·|i so each bisection writes a contiguous slice.
  Eigen::MatrixXd cond(n, n);
  JointAffinities out;
  out.achieved_perplexity.resize(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    out.achieved_perplexity[static_cast<std::size_t>(i)] = calibrate_row(dist, i, perplexity, cond.col(i)).perplexity;
  }
  out.p = (cond + cond.transpose()) / (2.0 * static_cast<double>(n));
  return out;
}

namespace {

// Unnormalized Student-t kernel 1 / (1 + |y_i - y_j|^2), zero diagonal.
Eigen::MatrixXd student_kernel(const Eigen::MatrixXd& y) {
  Eigen::MatrixXd num = (1.0 + squared_distances(y).array()).inverse().matrix();
  num.diagonal().setZero();
  return num;
}

// Rounds to `bits` significant bits. Inputs that agree up to the last few
// bits (a rotated copy of the data, a different summation order) then start
// the optimizer from bit-identical state, which matters because the gain
// schedule amplifies any difference into a different local optimum.
double snap(double v, int bits) {
  if (v == 0.0 || !std::isfinite(v)) return v;
  int e = 0;
  std::frexp(v, &e);
  return std::ldexp(std::round(std::ldexp(v, bits - e)), e - bits);
}

constexpr int kSnapBits = 30;

}  // namespace

double kl_divergence(const Eigen::MatrixXd& p, const Eigen::MatrixXd& y) {
  const Eigen::MatrixXd num = student_kernel(y);
  const double z = num.sum();
  double kl = 0.0;
  for (Eigen::Index j = 0; j < p.cols(); ++j) {
    for (Eigen::Index i = 0; i < p.rows(); ++i) {
      if (i == j || p(i, j) <= 0.0) continue;
      kl += p(i, j) * std::log(p(i, j) * z / num(i, j));
    }
  }
  return kl;
}

TsneResult tsne_run(const Eigen::MatrixXd& points, const TsneConfig& config) {
  config.validate();
  JointAffinities aff = joint_affinities(points, config.perplexity);
  const Eigen::Index n = points.rows();
  aff.p = aff.p.unaryExpr([](double v) { return snap(v, kSnapBits); });
  aff.p /= aff.p.sum();

  Eigen::MatrixXd y = pca_project(points, 2);
  for (Eigen::Index c = 0; c < 2; ++c) {
    const double sd = std::sqrt(y.col(c).squaredNorm() / static_cast<double>(n));
    if (sd > 0.0) y.col(c) *= 1e-4 / sd;
  }
  y = y.unaryExpr([](double v) { return snap(v, kSnapBits); });
  std::mt19937_64 rng(config.seed);
  std::normal_distribution<double> jitter(0.0, 1e-6);
  for (Eigen::Index i = 0; i < n; ++i) {
    y(i, 0) += jitter(rng);
    y(i, 1) += jitter(rng);
  }

  Eigen::MatrixXd update = Eigen::MatrixXd::Zero(n, 2);
  Eigen::MatrixXd gains = Eigen::MatrixXd::Ones(n, 2);
  Eigen::MatrixXd grad(n, 2);
  TsneResult result;

  for (int it = 1; it <= config.iterations; ++it) {
    const double exaggeration = it <= config.exaggeration_iterations ? config.early_exaggeration : 1.0;
    const double momentum = it <= config.momentum_switch ? config.initial_momentum : config.final_momentum;

    const Eigen::MatrixXd num = student_kernel(y);
    const double z = num.sum();
    // dC/dy_i = 4 Σ_j (p_ij - q_ij) (1 + |y_i - y_j|^2)^-1 (y_i - y_j)
    const Eigen::MatrixXd w = ((exaggeration * aff.p).array() - num.array() / z).matrix().cwiseProduct(num);
    grad = 4.0 * (w.rowwise().sum().asDiagonal() * y - w * y);

    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index c = 0; c < 2; ++c) {
        const bool same_sign = (grad(i, c) > 0.0) == (update(i, c) > 0.0);
        gains(i, c) = same_sign ? std::max(gains(i, c) * 0.8, 0.01) : gains(i, c) + 0.2;
      }
    }
    update = momentum * update - config.learning_rate * gains.cwiseProduct(grad);
    y += update;
    y.rowwise() -= y.colwise().mean();

    if (it % 50 == 0 || it == config.iterations) result.kl_trace.emplace_back(it, kl_divergence(aff.p, y));
  }
  if (!y.allFinite()) throw NonFiniteInput("t-SNE produced non-finite coordinates");

  result.coordinates = std::move(y);
  result.achieved_perplexity = std::move(aff.achieved_perplexity);
  return result;
}

}  // namespace mathemb
