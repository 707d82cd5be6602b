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

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "mathemb/token.hpp"
#include "mathemb/tokenize.hpp"

namespace mathemb {

struct Paragraph {
  std::string paragraph_id;
  std::vector<Token> tokens;

  friend bool operator==(const Paragraph&, const Paragraph&) = default;
};

struct Document {
  std::string id;
  std::vector<Paragraph> paragraphs;
  // Formulae that failed to parse and were left out.
  std::size_t skipped_formulae = 0;
};

using Stoplist = std::unordered_set<std::string>;

/// Splits an HTML page into paragraphs of tokens.
///
/// Text outside math elements is lowercased and split on whitespace and
/// punctuation. Each math element is replaced in place by its tokens under
/// `mode`. Paragraph boundaries are block-level tags (p, div, section,
/// article, h1-h6, li, blockquote, table cells). script and style content is
/// ignored. Paragraph ids are "<doc_id>/p<n>", counting emitted paragraphs
/// from 0.
///
/// Throws MalformedDocument for invalid UTF-8, unterminated tags or comments,
/// or a math element that is never closed. A formula that fails to parse is
/// skipped and counted in `skipped_formulae`.
Document ingest_document(std::string_view html, TokenizationMode mode,
                         std::string_view doc_id = "doc");

/// Built-in English stoplist (lowercase).
const Stoplist& default_stopwords();
/// One word per line; blank lines and lines starting with '#' are ignored.
Stoplist load_stoplist(const std::filesystem::path& path);

/// Drops word tokens found in `stoplist`. Math tokens are always kept.
Paragraph remove_stopwords(const Paragraph& paragraph, const Stoplist& stoplist);

struct DirectoryCorpus {
  std::vector<Paragraph> paragraphs;  // stopwords removed, empty ones dropped
  std::vector<std::filesystem::path> files;  // documents that were ingested
  std::size_t skipped_formulae = 0;
  // One message per document rejected as malformed.
  std::vector<std::string> warnings;
};

/// Ingests every .html/.htm/.xhtml file directly inside `dir`, in path
/// order, using each file's stem as document id. `stoplist` may be null to
/// keep stopwords. Malformed documents are skipped with a warning. Throws
/// IoFailure if `dir` is not a directory and EmptyInput if it holds no HTML
/// file.
DirectoryCorpus ingest_directory(const std::filesystem::path& dir, TokenizationMode mode,
                                 const Stoplist* stoplist);

}  // namespace mathemb
