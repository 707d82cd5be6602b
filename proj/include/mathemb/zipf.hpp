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
#include <vector>

#include "mathemb/token.hpp"
#include "mathemb/vocabulary.hpp"

namespace mathemb {

struct RankFrequency {
  std::int64_t rank = 0;  // 1-based
  std::int64_t count = 0;
  Token token;
};

struct CorpusStats {
  std::vector<RankFrequency> rank_frequency;  // counts non-increasing in rank
  double zipf_slope = 0.0;
  double zipf_r2 = 0.0;
};

/// Ranks the tokens admitted by `filter` (ties by token order) without fitting.
std::vector<RankFrequency> rank_frequency(const TokenCounts& counts, ClassFilter filter);

/// Least-squares line through (log rank, log count). R² is reported as 1 when
/// every count is equal (the fit is exact). Throws DegenerateDistribution
/// with fewer than two tokens after filtering.
CorpusStats zipf_fit(const TokenCounts& counts, ClassFilter filter);

}  // namespace mathemb
