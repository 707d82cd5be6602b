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

#include "mathemb/model_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "mathemb/errors.hpp"

namespace mathemb {

namespace {

template <typename T>
std::string format_number(T value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, end);
}

template <typename T>
bool parse_number(std::string_view s, T& value) {
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  return ec == std::errc{} && end == s.data() + s.size();
}

std::vector<std::string_view> split_spaces(std::string_view s) {
  std::vector<std::string_view> out;
  while (!s.empty()) {
    auto sp = s.find(' ');
    if (sp != 0) out.push_back(s.substr(0, sp));
    if (sp == std::string_view::npos) break;
    s.remove_prefix(sp + 1);
  }
  return out;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string vectors_text(std::span<const Token> labels, const Matrix& vectors) {
  std::ostringstream out;
  write_vectors(out, labels, vectors);
  return out.str();
}

std::string metadata_text(const Metadata& meta) {
  std::ostringstream out;
  write_metadata(out, meta);
  return out.str();
}

std::string counts_field(const Vocabulary& vocab) {
  std::string s;
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    if (i) s.push_back(' ');
    s += std::to_string(vocab[i].count);
  }
  return s;
}

Vocabulary vocabulary_from(const std::vector<Token>& labels, const Metadata& meta) {
  std::vector<Vocabulary::Entry> entries;
  entries.reserve(labels.size());
  std::vector<std::string_view> counts;
  if (auto it = meta.find("counts"); it != meta.end()) counts = split_spaces(it->second);
  if (!counts.empty() && counts.size() != labels.size()) {
    throw FormatError("metadata has " + std::to_string(counts.size()) + " counts for " +
                      std::to_string(labels.size()) + " tokens");
  }
  for (std::size_t i = 0; i < labels.size(); ++i) {
    std::int64_t c = 1;
    if (!counts.empty() && !parse_number(counts[i], c)) throw FormatError("bad count in metadata");
    entries.push_back({labels[i], c});
  }
  TrainingConfig cfg = config_from_metadata(meta);
  std::int64_t min_count = meta.contains("min_count") ? cfg.min_count : 1;
  return Vocabulary::from_entries(std::move(entries), min_count, cfg.subsample_threshold);
}

Metadata load_metadata_if_present(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) return {};
  std::istringstream in(slurp(path));
  return read_metadata(in);
}

Matrix load_context_or_zero(const std::filesystem::path& path, const std::vector<Token>& labels,
                            Eigen::Index rows, Eigen::Index cols) {
  if (!std::filesystem::exists(path)) return Matrix::Zero(rows, cols);
  std::istringstream in(slurp(path));
  LabeledMatrix ctx = read_vectors(in);
  if (ctx.vectors.rows() != rows || ctx.vectors.cols() != cols) {
    throw FormatError("output vectors in " + path.string() + " do not match the model shape");
  }
  if (!labels.empty() && ctx.labels != labels) {
    throw FormatError("output vector labels in " + path.string() + " do not match the model");
  }
  return std::move(ctx.vectors);
}

}  // namespace

void write_vectors(std::ostream& out, std::span<const Token> labels, const Matrix& vectors) {
  out << vectors.rows() << ' ' << vectors.cols() << '\n';
  std::string line;
  for (Eigen::Index i = 0; i < vectors.rows(); ++i) {
    const Token& t = labels[static_cast<std::size_t>(i)];
    line = escape_surface(t.surface);
    line.push_back('\t');
    line += class_name(t.cls);
    for (Eigen::Index j = 0; j < vectors.cols(); ++j) {
      line.push_back(' ');
      line += format_number(vectors(i, j));
    }
    line.push_back('\n');
    out << line;
  }
}

LabeledMatrix read_vectors(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("missing header line");
  auto header = split_spaces(line);
  long long rows = 0, cols = 0;
  if (header.size() != 2 || !parse_number(header[0], rows) || !parse_number(header[1], cols) ||
      rows < 0 || cols < 1) {
    throw FormatError("header must be 'V d', got '" + line + "'");
  }
  LabeledMatrix m;
  m.vectors.resize(rows, cols);
  m.labels.reserve(static_cast<std::size_t>(rows));
  for (long long i = 0; i < rows; ++i) {
    if (!std::getline(in, line)) {
      throw FormatError("expected " + std::to_string(rows) + " rows, found " + std::to_string(i));
    }
    auto tab = line.find('\t');
    if (tab == std::string::npos) throw FormatError("row " + std::to_string(i + 1) + ": missing TAB after surface");
    auto fields = split_spaces(std::string_view(line).substr(tab + 1));
    if (fields.empty()) throw FormatError("row " + std::to_string(i + 1) + ": missing class");
    auto cls = parse_class_name(fields[0]);
    if (!cls) throw FormatError("row " + std::to_string(i + 1) + ": unknown class '" + std::string(fields[0]) + "'");
    if (static_cast<long long>(fields.size()) - 1 != cols) {
      throw FormatError("row " + std::to_string(i + 1) + ": expected " + std::to_string(cols) + " values, found " +
                        std::to_string(fields.size() - 1));
    }
    m.labels.push_back({unescape_surface(std::string_view(line).substr(0, tab)), *cls});
    for (long long j = 0; j < cols; ++j) {
      Real v;
      if (!parse_number(fields[static_cast<std::size_t>(j) + 1], v)) {
        throw FormatError("row " + std::to_string(i + 1) + ": bad value '" +
                          std::string(fields[static_cast<std::size_t>(j) + 1]) + "'");
      }
      m.vectors(i, j) = v;
    }
  }
  while (std::getline(in, line)) {
    if (!line.empty()) throw FormatError("trailing content after " + std::to_string(rows) + " rows");
  }
  return m;
}

Metadata config_metadata(const TrainingConfig& c) {
  return {
      {"dimensions", std::to_string(c.dimensions)},
      {"window", std::to_string(c.window)},
      {"min_count", std::to_string(c.min_count)},
      {"subsample_threshold", format_number(c.subsample_threshold)},
      {"negatives", std::to_string(c.negatives)},
      {"epochs", std::to_string(c.epochs)},
      {"learning_rate", format_number(c.learning_rate)},
      {"seed", std::to_string(c.seed)},
      {"workers", std::to_string(c.workers)},
  };
}

TrainingConfig config_from_metadata(const Metadata& meta) {
  TrainingConfig c;
  auto get = [&](const char* key, auto& field) {
    auto it = meta.find(key);
    if (it == meta.end()) return;
    if (!parse_number(std::string_view(it->second), field)) {
      throw FormatError(std::string("bad metadata value for ") + key + ": " + it->second);
    }
  };
  get("dimensions", c.dimensions);
  get("window", c.window);
  get("min_count", c.min_count);
  get("subsample_threshold", c.subsample_threshold);
  get("negatives", c.negatives);
  get("epochs", c.epochs);
  get("learning_rate", c.learning_rate);
  get("seed", c.seed);
  get("workers", c.workers);
  return c;
}

void write_metadata(std::ostream& out, const Metadata& meta) {
  for (const auto& [k, v] : meta) out << k << '=' << v << '\n';
}

Metadata read_metadata(std::istream& in) {
  Metadata meta;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw FormatError("metadata line without '=': " + line);
    meta[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return meta;
}

std::filesystem::path context_path(const std::filesystem::path& model_path) {
  return model_path.string() + ".ctx";
}

std::filesystem::path metadata_path(const std::filesystem::path& model_path) {
  return model_path.string() + ".meta";
}

void write_file_atomically(const std::filesystem::path& path, const std::string& contents) {
  std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoFailure("cannot write " + path.string());
    out << contents;
    out.flush();
    if (!out) throw IoFailure("write failed for " + path.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoFailure("cannot move output into place: " + path.string());
  }
}

void save_model(const EmbeddingModel& model, const std::filesystem::path& path) {
  std::vector<Token> labels;
  labels.reserve(model.vocabulary.size());
  for (const auto& e : model.vocabulary.entries()) labels.push_back(e.token);
  Metadata meta = config_metadata(model.config);
  meta["model"] = "skipgram";
  meta["counts"] = counts_field(model.vocabulary);
  write_file_atomically(metadata_path(path), metadata_text(meta));
  write_file_atomically(context_path(path), vectors_text(labels, model.output_vectors));
  write_file_atomically(path, vectors_text(labels, model.input_vectors));
}

EmbeddingModel load_model(const std::filesystem::path& path) {
  std::istringstream in(slurp(path));
  LabeledMatrix main = read_vectors(in);
  Metadata meta = load_metadata_if_present(metadata_path(path));
  EmbeddingModel model;
  model.config = config_from_metadata(meta);
  if (!meta.contains("dimensions")) model.config.dimensions = static_cast<int>(main.vectors.cols());
  if (model.config.dimensions != main.vectors.cols()) {
    throw FormatError("metadata dimensions disagree with the vector file");
  }
  model.vocabulary = vocabulary_from(main.labels, meta);
  model.output_vectors =
      load_context_or_zero(context_path(path), main.labels, main.vectors.rows(), main.vectors.cols());
  model.input_vectors = std::move(main.vectors);
  return model;
}

void save_paragraph_model(const ParagraphModel& model, const std::filesystem::path& path) {
  std::vector<Token> paragraph_labels;
  for (const auto& id : model.paragraph_ids) paragraph_labels.push_back({id, TokenClass::ParagraphId});
  std::vector<Token> token_labels;
  for (const auto& e : model.vocabulary.entries()) token_labels.push_back(e.token);
  Metadata meta = config_metadata(model.config);
  meta["model"] = "dbow";
  meta["counts"] = counts_field(model.vocabulary);
  write_file_atomically(metadata_path(path), metadata_text(meta));
  write_file_atomically(context_path(path), vectors_text(token_labels, model.output_vectors));
  write_file_atomically(path, vectors_text(paragraph_labels, model.paragraph_vectors));
}

ParagraphModel load_paragraph_model(const std::filesystem::path& path) {
  std::istringstream in(slurp(path));
  LabeledMatrix main = read_vectors(in);
  ParagraphModel model;
  for (const auto& t : main.labels) {
    if (t.cls != TokenClass::ParagraphId) throw FormatError("paragraph model row is not a paragraph-id: " + t.surface);
    model.paragraph_ids.push_back(t.surface);
  }
  model.paragraph_vectors = std::move(main.vectors);
  Metadata meta = load_metadata_if_present(metadata_path(path));
  model.config = config_from_metadata(meta);
  if (!meta.contains("dimensions")) model.config.dimensions = static_cast<int>(model.paragraph_vectors.cols());
  if (std::filesystem::exists(context_path(path))) {
    std::istringstream cin(slurp(context_path(path)));
    LabeledMatrix ctx = read_vectors(cin);
    if (ctx.vectors.cols() != model.paragraph_vectors.cols()) {
      throw FormatError("output vectors do not match paragraph vector width");
    }
    model.vocabulary = vocabulary_from(ctx.labels, meta);
    model.output_vectors = std::move(ctx.vectors);
  }
  return model;
}

}  // namespace mathemb
