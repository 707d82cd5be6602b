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

#include "mathemb/token.hpp"

#include <cstdio>

#include "mathemb/digest.hpp"
#include "mathemb/errors.hpp"

namespace mathemb {

bool matches(ClassFilter filter, TokenClass cls) noexcept {
  switch (filter) {
    case ClassFilter::All:
      return cls != TokenClass::ParagraphId;
    case ClassFilter::Word:
      return cls == TokenClass::Word;
    case ClassFilter::Math:
      return cls == TokenClass::MathIdentifier || cls == TokenClass::MathSymbol ||
             cls == TokenClass::MathExpression;
  }
  return false;
}

std::string_view class_name(TokenClass cls) noexcept {
  switch (cls) {
    case TokenClass::Word: return "word";
    case TokenClass::MathIdentifier: return "math-identifier";
    case TokenClass::MathSymbol: return "math-symbol";
    case TokenClass::MathExpression: return "math-expression";
    case TokenClass::ParagraphId: return "paragraph-id";
  }
  return "word";
}

std::optional<TokenClass> parse_class_name(std::string_view name) noexcept {
  for (auto c : {TokenClass::Word, TokenClass::MathIdentifier, TokenClass::MathSymbol,
                 TokenClass::MathExpression, TokenClass::ParagraphId}) {
    if (class_name(c) == name) return c;
  }
  return std::nullopt;
}

std::optional<ClassFilter> parse_class_filter(std::string_view name) noexcept {
  if (name == "math") return ClassFilter::Math;
  if (name == "word") return ClassFilter::Word;
  if (name == "all") return ClassFilter::All;
  return std::nullopt;
}

std::string escape_surface(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '%': out += "%25"; break;
      case ' ': out += "%20"; break;
      case '\t': out += "%09"; break;
      case '\n': out += "%0A"; break;
      case '\r': out += "%0D"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

namespace {

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

bool is_expression_key(std::string_view s) {
  if (s.size() != 16) return false;
  for (char c : s) {
    if (!((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'))) return false;
  }
  return true;
}

}  // namespace

std::string unescape_surface(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '%' && i + 2 < s.size()) {
      int hi = hex_value(s[i + 1]), lo = hex_value(s[i + 2]);
      if (hi >= 0 && lo >= 0) {
        out.push_back(static_cast<char>(hi * 16 + lo));
        i += 2;
        continue;
      }
    }
    out.push_back(s[i]);
  }
  return out;
}

std::string expression_key(std::string_view surface) {
  if (is_expression_key(surface)) return std::string(surface);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(surface)));
  return buf;
}

std::string to_notation(const Token& t) {
  switch (t.cls) {
    case TokenClass::Word: return escape_surface(t.surface);
    case TokenClass::MathIdentifier: return "m:" + escape_surface(t.surface);
    case TokenClass::MathSymbol: return "s:" + escape_surface(t.surface);
    case TokenClass::MathExpression: return "e:" + expression_key(t.surface);
    case TokenClass::ParagraphId: return "#" + escape_surface(t.surface);
  }
  return escape_surface(t.surface);
}

Token from_notation(std::string_view field) {
  if (field.size() > 2 && field[1] == ':') {
    switch (field[0]) {
      case 'm': return {unescape_surface(field.substr(2)), TokenClass::MathIdentifier};
      case 's': return {unescape_surface(field.substr(2)), TokenClass::MathSymbol};
      case 'e': return {std::string(field.substr(2)), TokenClass::MathExpression};
      default: break;
    }
  }
  if (field.size() > 1 && field[0] == '#') {
    return {unescape_surface(field.substr(1)), TokenClass::ParagraphId};
  }
  return {unescape_surface(field), TokenClass::Word};
}

}  // namespace mathemb
