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

#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "mathemb/trainer.hpp"

namespace mathemb {

// Vector text format:
//
//   V d
//   <surface>\t<class> f1 ... fd      (V lines)
//
// Surfaces are percent-escaped (escape_surface); reals use the shortest
// representation that round-trips exactly. A model at `path` also owns two
// sidecars:
//
//   path.ctx   output vectors, same format and row order
//   path.meta  key=value lines: training config, model kind and token counts
//
// Sidecars are optional on load; a missing .ctx yields zero output vectors and
// a missing .meta yields default config with unit counts.

struct LabeledMatrix {
  std::vector<Token> labels;
  Matrix vectors;
};

void write_vectors(std::ostream& out, std::span<const Token> labels, const Matrix& vectors);
/// Throws FormatError on a bad header, row width, row count or value.
LabeledMatrix read_vectors(std::istream& in);

using Metadata = std::map<std::string, std::string>;
Metadata config_metadata(const TrainingConfig& config);
TrainingConfig config_from_metadata(const Metadata& meta);
void write_metadata(std::ostream& out, const Metadata& meta);
Metadata read_metadata(std::istream& in);

std::filesystem::path context_path(const std::filesystem::path& model_path);
std::filesystem::path metadata_path(const std::filesystem::path& model_path);

/// Throws IoFailure when a file cannot be written.
void save_model(const EmbeddingModel& model, const std::filesystem::path& path);
/// Throws IoFailure or FormatError.
EmbeddingModel load_model(const std::filesystem::path& path);

void save_paragraph_model(const ParagraphModel& model, const std::filesystem::path& path);
ParagraphModel load_paragraph_model(const std::filesystem::path& path);

/// Writes to a sibling temporary and renames, so `path` is either absent or
/// complete. Throws IoFailure.
void write_file_atomically(const std::filesystem::path& path, const std::string& contents);

}  // namespace mathemb
