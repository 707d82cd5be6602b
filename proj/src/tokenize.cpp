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

#include "mathemb/tokenize.hpp"

#include <unordered_set>

#include "mathemb/moi.hpp"

namespace mathemb {

std::string_view mode_name(TokenizationMode mode) noexcept {
  switch (mode) {
    case TokenizationMode::SingleToken: return "single";
    case TokenizationMode::IdentifierStream: return "identifiers";
    case TokenizationMode::SymbolStream: return "symbols";
    case TokenizationMode::MoiGroups: return "moi";
  }
  return "identifiers";
}

std::optional<TokenizationMode> parse_mode(std::string_view name) noexcept {
  for (auto m : {TokenizationMode::SingleToken, TokenizationMode::IdentifierStream,
                 TokenizationMode::SymbolStream, TokenizationMode::MoiGroups}) {
    if (mode_name(m) == name) return m;
  }
  return std::nullopt;
}

namespace {

bool is_composite_identifier(const ExprNode& n) {
  return n.kind == NodeKind::Subscript && n.children.size() == 2 &&
         n.children[0].kind == NodeKind::Identifier && n.children[1].kind == NodeKind::Identifier &&
         !n.children[0].text.empty() && !n.children[1].text.empty();
}

void collect_identifiers(const ExprNode& n, std::vector<Token>& out,
                         std::unordered_set<std::string>& seen) {
  auto emit = [&](std::string surface) {
    if (!surface.empty() && seen.insert(surface).second) out.push_back(Token::identifier(std::move(surface)));
  };
  if (is_composite_identifier(n)) {
    emit(render(n));
    return;
  }
  if (n.kind == NodeKind::Identifier) {
    emit(n.text);
    return;
  }
  for (const auto& c : n.children) collect_identifiers(c, out, seen);
}

void collect_symbols(const ExprNode& n, std::vector<Token>& out) {
  switch (n.kind) {
    case NodeKind::Identifier:
      if (!n.text.empty()) out.push_back(Token::identifier(n.text));
      return;
    case NodeKind::Number:
    case NodeKind::Other:
      if (!n.text.empty()) out.push_back(Token::symbol(n.text));
      return;
    case NodeKind::Operator:
      if (!n.text.empty() && n.text != "," && !is_invisible_operator(n.text)) {
        out.push_back(Token::symbol(n.text));
      }
      return;
    case NodeKind::Subscript:
    case NodeKind::Superscript:
    case NodeKind::Fraction: {
      const char* marker = n.kind == NodeKind::Subscript     ? "_"
                           : n.kind == NodeKind::Superscript ? "^"
                                                             : "/";
      collect_symbols(n.children[0], out);
      out.push_back(Token::symbol(marker));
      collect_symbols(n.children[1], out);
      return;
    }
    case NodeKind::Row:
    case NodeKind::Apply:
      for (const auto& c : n.children) collect_symbols(c, out);
      return;
  }
}

}  // namespace

std::vector<Token> to_identifier_stream(const MathExpression& expr) {
  std::vector<Token> out;
  std::unordered_set<std::string> seen;
  collect_identifiers(expr.root, out, seen);
  return out;
}

Token to_single_token(const MathExpression& expr) {
  return Token{serialize(expr.root), TokenClass::MathExpression};
}

std::vector<Token> to_symbol_stream(const MathExpression& expr) {
  std::vector<Token> out;
  collect_symbols(expr.root, out);
  return out;
}

std::vector<Token> tokenize(const MathExpression& expr, TokenizationMode mode) {
  switch (mode) {
    case TokenizationMode::SingleToken: return {to_single_token(expr)};
    case TokenizationMode::IdentifierStream: return to_identifier_stream(expr);
    case TokenizationMode::SymbolStream: return to_symbol_stream(expr);
    case TokenizationMode::MoiGroups: return moi_tokens(build_moi(expr));
  }
  return {};
}

}  // namespace mathemb
