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

#include <optional>
#include <string_view>
#include <vector>

#include "mathemb/mathml.hpp"
#include "mathemb/token.hpp"

namespace mathemb {

enum class TokenizationMode { SingleToken, IdentifierStream, SymbolStream, MoiGroups };

std::string_view mode_name(TokenizationMode mode) noexcept;
/// Accepts the CLI spellings: single, identifiers, symbols, moi.
std::optional<TokenizationMode> parse_mode(std::string_view name) noexcept;

/// Identifier leaves in first-occurrence order, deduplicated. A subscript whose
/// base and script are both identifiers is one composite token ("α_i").
std::vector<Token> to_identifier_stream(const MathExpression& expr);

/// The whole expression as one MathExpression token; its surface is the
/// canonical serialization.
Token to_single_token(const MathExpression& expr);

/// Every leaf symbol in reading order, with "_", "^" and "/" markers for
/// scripts and fractions. Commas and invisible operators are dropped; nothing
/// is deduplicated.
std::vector<Token> to_symbol_stream(const MathExpression& expr);

std::vector<Token> tokenize(const MathExpression& expr, TokenizationMode mode);

}  // namespace mathemb
