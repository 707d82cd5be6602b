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
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mathemb/corpus.hpp"
#include "mathemb/query.hpp"
#include "mathemb/zipf.hpp"

namespace mathemb {

/// One "token<TAB>cosine" row per neighbor, cosine to four decimals.
std::string format_neighbors(const QueryResult& result);

/// formula_id, identifier, rank, candidate, cosine, match; one row per kept
/// candidate.
std::string format_eval_rows(const EvalReport& report);
/// "p=<v> r=<v> threshold=<v>" with six decimals.
std::string format_eval_summary(const EvalReport& report);

/// Header "token<TAB>class<TAB>x<TAB>y", then one row per point.
std::string format_coordinates(std::span<const Token> tokens, const Eigen::MatrixXd& xy);

/// Header "rank<TAB>count<TAB>token", then one row per type.
std::string format_rank_frequency(const CorpusStats& stats);
/// "slope=<v> r2=<v>" with six decimals.
std::string format_zipf_summary(const CorpusStats& stats);

struct IngestSummary {
  std::int64_t docs = 0;
  std::int64_t paragraphs = 0;
  std::int64_t tokens = 0;
  std::int64_t math_tokens = 0;
  std::int64_t skipped_formulae = 0;
};

IngestSummary summarize(const DirectoryCorpus& corpus);
std::string format_ingest_summary(const IngestSummary& s);

inline constexpr const char* kToolVersion = "0.1.0";

/// Provenance record written next to every output file as "<output>.manifest".
struct RunManifest {
  std::string command;
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<std::pair<std::string, std::string>> inputs;   // path, sha256
  std::vector<std::pair<std::string, std::string>> outputs;  // path, sha256
  std::string tool_version = kToolVersion;

  void add_input(const std::filesystem::path& path);
  void add_output(const std::filesystem::path& path);
};

std::string format_manifest(const RunManifest& m);
RunManifest parse_manifest(std::string_view text);
std::filesystem::path manifest_path(const std::filesystem::path& output);

}  // namespace mathemb
