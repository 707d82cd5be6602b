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
#include <cstdint>
#include <random>
#include <vector>

namespace mathemb::testing {

struct LabeledPoints {
  Eigen::MatrixXd points;
  std::vector<int> labels;
};

/// Two isotropic unit-variance Gaussian clusters in d dimensions whose means
/// are `separation` standard deviations apart; the first half is cluster 0.
inline LabeledPoints two_clusters(int n, int d, double separation, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Eigen::VectorXd direction(d);
  for (int j = 0; j < d; ++j) direction(j) = normal(rng);
  direction *= separation / direction.norm();
  LabeledPoints out{Eigen::MatrixXd(n, d), std::vector<int>(static_cast<std::size_t>(n))};
  for (int i = 0; i < n; ++i) {
    const int label = i < n / 2 ? 0 : 1;
    out.labels[static_cast<std::size_t>(i)] = label;
    for (int j = 0; j < d; ++j) out.points(i, j) = normal(rng) + (label == 1 ? direction(j) : 0.0);
  }
  return out;
}

/// Lloyd's 2-means from the two mutually farthest points, then the fraction
/// of points whose cluster agrees with the majority label of that cluster.
inline double two_means_purity(const Eigen::MatrixXd& y, const std::vector<int>& labels) {
  const Eigen::Index n = y.rows();
  Eigen::Index a = 0, b = 0;
  double best = -1;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double d = (y.row(i) - y.row(j)).squaredNorm();
      if (d > best) {
        best = d;
        a = i;
        b = j;
      }
    }
  }
  Eigen::RowVectorXd ca = y.row(a), cb = y.row(b);
  std::vector<int> assign(static_cast<std::size_t>(n), 0);
  for (int iter = 0; iter < 100; ++iter) {
    Eigen::RowVectorXd sa = Eigen::RowVectorXd::Zero(y.cols()), sb = sa;
    int na = 0, nb = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const bool to_a = (y.row(i) - ca).squaredNorm() <= (y.row(i) - cb).squaredNorm();
      assign[static_cast<std::size_t>(i)] = to_a ? 0 : 1;
      if (to_a) {
        sa += y.row(i);
        ++na;
      } else {
        sb += y.row(i);
        ++nb;
      }
    }
    if (na > 0) ca = sa / na;
    if (nb > 0) cb = sb / nb;
  }
  int agree = 0;
  for (int cluster = 0; cluster < 2; ++cluster) {
    int counts[2] = {0, 0};
    for (std::size_t i = 0; i < assign.size(); ++i) {
      if (assign[i] == cluster) ++counts[labels[i]];
    }
    agree += std::max(counts[0], counts[1]);
  }
  return static_cast<double>(agree) / static_cast<double>(n);
}

}  // namespace mathemb::testing
