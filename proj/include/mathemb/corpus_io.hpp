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
#include <span>
#include <string>
#include <vector>

#include "mathemb/corpus.hpp"

namespace mathemb {

// Corpus token file: one paragraph per line,
//
//   #<paragraph id>\t<token> <token> ...
//
// with tokens in corpus-file notation (see to_notation). Expression tokens are
// written as "e:<key>", so reading a file back yields their keys as surfaces.

std::string format_corpus_line(const Paragraph& paragraph);
void write_corpus(std::ostream& out, std::span<const Paragraph> paragraphs);
/// Throws FormatError on a line without the "#id\t" prefix.
std::vector<Paragraph> read_corpus(std::istream& in);
std::vector<Paragraph> read_corpus_file(const std::filesystem::path& path);

}  // namespace mathemb
