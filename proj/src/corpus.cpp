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

#include "mathemb/corpus.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <algorithm>
#include <fstream>
#include <sstream>

#include "mathemb/errors.hpp"
#include "mathemb/mathml.hpp"
#include "mathemb/text.hpp"

namespace mathemb {

namespace {

constexpr std::array<std::string_view, 22> kBlockTags{
    "address", "article", "aside", "blockquote", "body", "dd", "div", "dt",
    "figcaption", "footer", "h1", "h2", "h3", "h4", "h5", "h6",
    "header", "li", "p", "section", "td", "th",
};

bool is_block_tag(std::string_view name) {
  return std::find(kBlockTags.begin(), kBlockTags.end(), name) != kBlockTags.end();
}

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

// Unknown references are kept literally.
std::string decode_lenient(std::string_view s) {
  std::string out;
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] == '&') {
      auto semi = s.find(';', i + 1);
      if (semi != std::string_view::npos && semi - i <= 32) {
        if (auto d = text::decode_entities(s.substr(i, semi - i + 1))) {
          out += *d;
          i = semi + 1;
          continue;
        }
      }
    }
    out.push_back(s[i++]);
  }
  return out;
}

bool is_tag_name_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

class HtmlIngester {
 public:
  HtmlIngester(std::string_view html, TokenizationMode mode, std::string_view doc_id)
      : html_(html), mode_(mode) {
    doc_.id = std::string(doc_id);
  }

  Document run() {
    while (pos_ < html_.size()) {
      auto lt = html_.find('<', pos_);
      if (lt == std::string_view::npos) lt = html_.size();
      add_text(html_.substr(pos_, lt - pos_));
      pos_ = lt;
      if (pos_ < html_.size()) read_markup();
    }
    flush();
    return std::move(doc_);
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw MalformedDocument(doc_.id + ": " + what + " at offset " + std::to_string(pos_));
  }

  void add_text(std::string_view raw) {
    if (raw.empty()) return;
    for (auto& w : text::split_words(decode_lenient(raw))) current_.push_back(Token::word(std::move(w)));
  }

  void flush() {
    if (current_.empty()) return;
    Paragraph p;
    p.paragraph_id = doc_.id + "/p" + std::to_string(doc_.paragraphs.size());
    p.tokens = std::move(current_);
    current_.clear();
    doc_.paragraphs.push_back(std::move(p));
  }

  // Position just past the '>' closing the tag that starts at pos_.
  std::size_t tag_end() const {
    char quote = 0;
    for (std::size_t i = pos_ + 1; i < html_.size(); ++i) {
      char c = html_[i];
      if (quote) {
        if (c == quote) quote = 0;
      } else if (c == '"' || c == '\'') {
        quote = c;
      } else if (c == '>') {
        return i + 1;
      }
    }
    fail("unterminated tag");
  }

  void skip_to(std::string_view terminator, const char* what) {
    auto end = html_.find(terminator, pos_);
    if (end == std::string_view::npos) fail(std::string("unterminated ") + what);
    pos_ = end + terminator.size();
  }

  // Finds "</name>" case-insensitively from `from`; returns npos if absent.
  std::size_t find_close(std::string_view qname, std::size_t from) const {
    std::string needle = ascii_lower(qname);
    for (std::size_t at = html_.find("</", from); at != std::string_view::npos;
         at = html_.find("</", at + 2)) {
      std::size_t p = at + 2;
      if (p + needle.size() > html_.size() || ascii_lower(html_.substr(p, needle.size())) != needle) continue;
      p += needle.size();
      while (p < html_.size() && (html_[p] == ' ' || html_[p] == '\n' || html_[p] == '\t')) ++p;
      if (p < html_.size() && html_[p] == '>') return at;
    }
    return std::string_view::npos;
  }

  void read_markup() {
    std::string_view rest = html_.substr(pos_);
    if (rest.starts_with("<!--")) {
      skip_to("-->", "comment");
      return;
    }
    if (rest.starts_with("<!") || rest.starts_with("<?")) {
      pos_ = tag_end();
      return;
    }
    bool closing = rest.size() > 1 && rest[1] == '/';
    std::size_t name_start = pos_ + (closing ? 2 : 1);
    if (name_start >= html_.size() || !is_tag_name_start(html_[name_start])) {
      add_text("<");  // a literal '<' in text
      ++pos_;
      return;
    }
    std::size_t name_end = name_start;
    while (name_end < html_.size() && (std::isalnum(static_cast<unsigned char>(html_[name_end])) ||
                                       html_[name_end] == ':' || html_[name_end] == '-' ||
                                       html_[name_end] == '_')) {
      ++name_end;
    }
    std::string qname(html_.substr(name_start, name_end - name_start));
    std::string name = ascii_lower(qname.substr(qname.rfind(':') == std::string::npos ? 0 : qname.rfind(':') + 1));
    std::size_t start = pos_;
    std::size_t end = tag_end();
    bool self_closing = end >= 2 && html_[end - 2] == '/';

    if (!closing && name == "math") {
      std::size_t stop = end;
      if (!self_closing) {
        auto close = find_close(qname, end);
        if (close == std::string_view::npos) fail("math element never closed");
        pos_ = close;
        stop = tag_end();
      }
      add_formula(html_.substr(start, stop - start));
      pos_ = stop;
      return;
    }
    if (!closing && (name == "script" || name == "style") && !self_closing) {
      auto close = find_close(name, end);
      if (close == std::string_view::npos) fail("<" + name + "> never closed");
      pos_ = close;
      pos_ = tag_end();
      return;
    }
    if (is_block_tag(name)) flush();
    pos_ = end;
  }

  void add_formula(std::string_view markup) {
    try {
      auto expr = parse_mathml(markup);
      for (auto& t : tokenize(expr, mode_)) current_.push_back(std::move(t));
    } catch (const MalformedMarkup&) {
      ++doc_.skipped_formulae;
    } catch (const EmptyInput&) {
      ++doc_.skipped_formulae;
    }
  }

  std::string_view html_;
  TokenizationMode mode_;
  std::size_t pos_ = 0;
  Document doc_;
  std::vector<Token> current_;
};

}  // namespace

Document ingest_document(std::string_view html, TokenizationMode mode, std::string_view doc_id) {
  if (!text::is_valid_utf8(html)) throw MalformedDocument(std::string(doc_id) + ": invalid UTF-8");
  return HtmlIngester(html, mode, doc_id).run();
}

const Stoplist& default_stopwords() {
  static const Stoplist words{
      "a", "about", "above", "after", "again", "against", "ain", "all", "am", "an", "and", "any",
      "are", "aren", "as", "at", "be", "because", "been", "before", "being", "below", "between",
      "both", "but", "by", "can", "couldn", "d", "did", "didn", "do", "does", "doesn", "doing",
      "don", "down", "during", "each", "few", "for", "from", "further", "had", "hadn", "has",
      "hasn", "have", "haven", "having", "he", "her", "here", "hers", "herself", "him",
      "himself", "his", "how", "i", "if", "in", "into", "is", "isn", "it", "its", "itself",
      "just", "ll", "m", "ma", "me", "mightn", "more", "most", "mustn", "my", "myself", "needn",
      "no", "nor", "not", "now", "o", "of", "off", "on", "once", "only", "or", "other", "our",
      "ours", "ourselves", "out", "over", "own", "re", "s", "same", "shan", "she", "should",
      "shouldn", "so", "some", "such", "t", "than", "that", "the", "their", "theirs", "them",
      "themselves", "then", "there", "these", "they", "this", "those", "through", "to", "too",
      "under", "until", "up", "ve", "very", "was", "wasn", "we", "were", "weren", "what", "when",
      "where", "which", "while", "who", "whom", "why", "will", "with", "won", "wouldn", "y",
      "you", "your", "yours", "yourself", "yourselves",
  };
  return words;
}

Stoplist load_stoplist(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoFailure("cannot read stoplist " + path.string());
  Stoplist words;
  std::string line;
  while (std::getline(in, line)) {
    auto w = text::trim(line);
    if (w.empty() || w.front() == '#') continue;
    for (auto& part : text::split_words(w)) words.insert(std::move(part));
  }
  return words;
}

Paragraph remove_stopwords(const Paragraph& paragraph, const Stoplist& stoplist) {
  Paragraph out;
  out.paragraph_id = paragraph.paragraph_id;
  out.tokens.reserve(paragraph.tokens.size());
  for (const auto& t : paragraph.tokens) {
    if (t.cls == TokenClass::Word && stoplist.contains(t.surface)) continue;
    out.tokens.push_back(t);
  }
  return out;
}

namespace {

bool is_html_file(const std::filesystem::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".html" || ext == ".htm" || ext == ".xhtml";
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

DirectoryCorpus ingest_directory(const std::filesystem::path& dir, TokenizationMode mode,
                                 const Stoplist* stoplist) {
  if (!std::filesystem::is_directory(dir)) throw IoFailure(dir.string() + " is not a directory");
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && is_html_file(entry.path())) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw EmptyInput("no HTML files in " + dir.string());

  DirectoryCorpus out;
  for (const auto& file : files) {
    Document doc;
    try {
      doc = ingest_document(slurp(file), mode, file.stem().string());
    } catch (const MalformedDocument& e) {
      out.warnings.push_back(file.string() + ": " + e.what());
      continue;
    }
    out.files.push_back(file);
    out.skipped_formulae += doc.skipped_formulae;
    for (auto& p : doc.paragraphs) {
      Paragraph kept = stoplist ? remove_stopwords(p, *stoplist) : std::move(p);
      if (!kept.tokens.empty()) out.paragraphs.push_back(std::move(kept));
    }
  }
  return out;
}

}  // namespace mathemb
