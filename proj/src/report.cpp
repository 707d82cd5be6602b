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

#include "mathemb/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "mathemb/digest.hpp"
#include "mathemb/errors.hpp"
#include "mathemb/text.hpp"

namespace mathemb {

namespace {

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  // Avoid "-0.0000" for values that round to zero.
  std::string s(buf);
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

}  // namespace

std::string format_neighbors(const QueryResult& result) {
  std::string out;
  for (const auto& n : result) {
    out += to_notation(n.token);
    out += '\t';
    out += fixed(n.cosine, 4);
    out += '\n';
  }
  return out;
}

std::string format_eval_rows(const EvalReport& report) {
  std::string out;
  for (const auto& rec : report.records) {
    const auto gold = text::split_words(rec.record.gold_definiens);
    for (std::size_t r = 0; r < rec.kept.size(); ++r) {
      const auto& cand = rec.kept[r];
      const auto words = text::split_words(cand.token.surface);
      const bool match = words.size() == 1 && std::find(gold.begin(), gold.end(), words.front()) != gold.end();
      out += rec.record.formula_id + '\t' + escape_surface(rec.record.identifier.surface) + '\t' +
             std::to_string(r + 1) + '\t' + to_notation(cand.token) + '\t' + fixed(cand.cosine, 4) + '\t' +
             (match ? "1" : "0") + '\n';
    }
  }
  return out;
}

std::string format_eval_summary(const EvalReport& report) {
  return "p=" + fixed(report.precision, 6) + " r=" + fixed(report.recall, 6) +
         " threshold=" + fixed(report.threshold, 6);
}

std::string format_coordinates(std::span<const Token> tokens, const Eigen::MatrixXd& xy) {
  if (static_cast<Eigen::Index>(tokens.size()) != xy.rows() || xy.cols() != 2) {
    throw DomainError("coordinates must be one (x, y) row per token");
  }
  std::string out = "token\tclass\tx\ty\n";
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    out += escape_surface(tokens[i].surface) + '\t' + std::string(class_name(tokens[i].cls)) + '\t' +
           fixed(xy(r, 0), 6) + '\t' + fixed(xy(r, 1), 6) + '\n';
  }
  return out;
}

std::string format_rank_frequency(const CorpusStats& stats) {
  std::string out = "rank\tcount\ttoken\n";
  for (const auto& rf : stats.rank_frequency) {
    out += std::to_string(rf.rank) + '\t' + std::to_string(rf.count) + '\t' + to_notation(rf.token) + '\n';
  }
  return out;
}

std::string format_zipf_summary(const CorpusStats& stats) {
  return "slope=" + fixed(stats.zipf_slope, 6) + " r2=" + fixed(stats.zipf_r2, 6);
}

IngestSummary summarize(const DirectoryCorpus& corpus) {
  IngestSummary s;
  s.docs = static_cast<std::int64_t>(corpus.files.size());
  s.paragraphs = static_cast<std::int64_t>(corpus.paragraphs.size());
  s.skipped_formulae = static_cast<std::int64_t>(corpus.skipped_formulae);
  for (const auto& p : corpus.paragraphs) {
    for (const auto& t : p.tokens) {
      ++s.tokens;
      if (t.is_math()) ++s.math_tokens;
    }
  }
  return s;
}

std::string format_ingest_summary(const IngestSummary& s) {
  return "docs=" + std::to_string(s.docs) + " paragraphs=" + std::to_string(s.paragraphs) +
         " tokens=" + std::to_string(s.tokens) + " math_tokens=" + std::to_string(s.math_tokens) +
         " skipped_formulae=" + std::to_string(s.skipped_formulae);
}

void RunManifest::add_input(const std::filesystem::path& path) {
  inputs.emplace_back(path.string(), sha256_file(path));
}

void RunManifest::add_output(const std::filesystem::path& path) {
  outputs.emplace_back(path.string(), sha256_file(path));
}

std::string format_manifest(const RunManifest& m) {
  std::string out = "command=" + m.command + "\ntool_version=" + m.tool_version + '\n';
  for (const auto& [k, v] : m.config) out += "config." + k + '=' + v + '\n';
  for (const auto& [p, d] : m.inputs) out += "input.sha256." + escape_surface(p) + '=' + d + '\n';
  for (const auto& [p, d] : m.outputs) out += "output.sha256." + escape_surface(p) + '=' + d + '\n';
  return out;
}

RunManifest parse_manifest(std::string_view text) {
  RunManifest m;
  m.tool_version.clear();
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    // Digests never contain '=', while paths may.
    const bool digest = line.starts_with("input.") || line.starts_with("output.");
    auto eq = digest ? line.rfind('=') : line.find('=');
    if (eq == std::string::npos) throw FormatError("manifest line without '=': " + line);
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    if (key == "command") {
      m.command = value;
    } else if (key == "tool_version") {
      m.tool_version = value;
    } else if (key.starts_with("config.")) {
      m.config.emplace_back(key.substr(7), value);
    } else if (key.starts_with("input.sha256.")) {
      m.inputs.emplace_back(unescape_surface(key.substr(13)), value);
    } else if (key.starts_with("output.sha256.")) {
      m.outputs.emplace_back(unescape_surface(key.substr(14)), value);
    } else {
      throw FormatError("unknown manifest key: " + key);
    }
  }
  return m;
}

std::filesystem::path manifest_path(const std::filesystem::path& output) {
  auto p = output;
  p += ".manifest";
  return p;
}

}  // namespace mathemb
