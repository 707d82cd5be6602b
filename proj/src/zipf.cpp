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

#include "mathemb/zipf.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "mathemb/errors.hpp"

namespace mathemb {

std::vector<RankFrequency> rank_frequency(const TokenCounts& counts, ClassFilter filter) {
  std::vector<RankFrequency> rows;
  for (const auto& [token, n] : counts) {
    if (n > 0 && matches(filter, token.cls)) rows.push_back({0, n, token});
  }
  std::sort(rows.begin(), rows.end(), [](const RankFrequency& a, const RankFrequency& b) {
    if (a.count != b.count) return a.count > b.count;
    return a.token < b.token;
  });
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i].rank = static_cast<std::int64_t>(i + 1);
  return rows;
}

CorpusStats zipf_fit(const TokenCounts& counts, ClassFilter filter) {
  CorpusStats stats;
  stats.rank_frequency = rank_frequency(counts, filter);
  const auto n = static_cast<Eigen::Index>(stats.rank_frequency.size());
  if (n < 2) throw DegenerateDistribution("need at least two distinct tokens for a Zipf fit");

  Eigen::MatrixXd design(n, 2);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    design(i, 0) = 1.0;
    design(i, 1) = std::log(static_cast<double>(stats.rank_frequency[i].rank));
    y(i) = std::log(static_cast<double>(stats.rank_frequency[i].count));
  }
  Eigen::Vector2d beta = design.colPivHouseholderQr().solve(y);
  stats.zipf_slope = beta(1);

  Eigen::VectorXd residual = y - design * beta;
  double ss_res = residual.squaredNorm();
  double ss_tot = (y.array() - y.mean()).square().sum();
  stats.zipf_r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  return stats;
}

}  // namespace mathemb
