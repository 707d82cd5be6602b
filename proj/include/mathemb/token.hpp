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

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace mathemb {

enum class TokenClass {
  Word,
  MathIdentifier,
  MathSymbol,
  MathExpression,
  ParagraphId,
};

/// A corpus unit. The class participates in identity, so the word "a" and
/// the identifier a are different tokens.
struct Token {
  std::string surface;
  TokenClass cls = TokenClass::Word;

  static Token word(std::string s) { return {std::move(s), TokenClass::Word}; }
  static Token identifier(std::string s) { return {std::move(s), TokenClass::MathIdentifier}; }
  static Token symbol(std::string s) { return {std::move(s), TokenClass::MathSymbol}; }

  bool is_math() const noexcept {
    return cls == TokenClass::MathIdentifier || cls == TokenClass::MathSymbol ||
           cls == TokenClass::MathExpression;
  }

  friend bool operator==(const Token&, const Token&) = default;
  // Lexicographic by surface first; used for deterministic tie breaking.
  friend std::strong_ordering operator<=>(const Token& a, const Token& b) {
    if (auto c = a.surface <=> b.surface; c != 0) return c;
    return a.cls <=> b.cls;
  }
};

enum class ClassFilter { Math, Word, All };

bool matches(ClassFilter filter, TokenClass cls) noexcept;

std::string_view class_name(TokenClass cls) noexcept;
std::optional<TokenClass> parse_class_name(std::string_view name) noexcept;
std::optional<ClassFilter> parse_class_filter(std::string_view name) noexcept;

/// Percent-escapes '%', space, tab, CR and LF so a surface fits in a
/// whitespace-delimited field.
std::string escape_surface(std::string_view s);
std::string unescape_surface(std::string_view s);

/// Stable 16-hex-digit key for an expression token. Surfaces that already are
/// such a key (e.g. read back from a corpus file) are returned unchanged.
std::string expression_key(std::string_view surface);

/// Corpus-file notation: words bare, identifiers "m:", other math symbols
/// "s:", expressions "e:<key>", paragraph ids "#".
std::string to_notation(const Token& t);
Token from_notation(std::string_view field);

}  // namespace mathemb

template <>
struct std::hash<mathemb::Token> {
  std::size_t operator()(const mathemb::Token& t) const noexcept {
    return std::hash<std::string>{}(t.surface) * 31u + static_cast<std::size_t>(t.cls);
  }
};
