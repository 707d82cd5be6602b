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

#include "mathemb/corpus_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include "mathemb/errors.hpp"

namespace mathemb {

std::string format_corpus_line(const Paragraph& paragraph) {
  std::string line = "#" + escape_surface(paragraph.paragraph_id) + "\t";
  bool first = true;
  for (const auto& t : paragraph.tokens) {
    if (!first) line.push_back(' ');
    first = false;
    line += to_notation(t);
  }
  return line;
}

void write_corpus(std::ostream& out, std::span<const Paragraph> paragraphs) {
  for (const auto& p : paragraphs) out << format_corpus_line(p) << '\n';
}

std::vector<Paragraph> read_corpus(std::istream& in) {
  std::vector<Paragraph> paragraphs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto tab = line.find('\t');
    if (line.front() != '#' || tab == std::string::npos) {
      throw FormatError("corpus line " + std::to_string(line_no) + ": expected '#id<TAB>tokens'");
    }
    Paragraph p;
    p.paragraph_id = unescape_surface(std::string_view(line).substr(1, tab - 1));
    std::string_view rest = std::string_view(line).substr(tab + 1);
    while (!rest.empty()) {
      auto sp = rest.find(' ');
      auto field = rest.substr(0, sp);
      if (!field.empty()) p.tokens.push_back(from_notation(field));
      if (sp == std::string_view::npos) break;
      rest.remove_prefix(sp + 1);
    }
    paragraphs.push_back(std::move(p));
  }
  return paragraphs;
}

std::vector<Paragraph> read_corpus_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoFailure("cannot read corpus " + path.string());
  return read_corpus(in);
}

}  // namespace mathemb
