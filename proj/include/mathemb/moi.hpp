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
#include <string>
#include <vector>

#include "mathemb/mathml.hpp"
#include "mathemb/token.hpp"

namespace mathemb {

/// Mathematical Object of Interest: a tree where every node, including the
/// leaves, is itself a meaningful object. α_i is a parent "α_i" over the
/// leaves α and i.
struct MoiNode {
  std::string surface;
  NodeKind kind = NodeKind::Row;
  std::vector<MoiNode> children;

  std::size_t node_count() const noexcept;

  friend bool operator==(const MoiNode&, const MoiNode&) = default;
};

/// Linear rendering used for MOI surfaces ("α_i", "W(2,k)", "2^k").
std::string render(const ExprNode& node);

/// Builds the MOI tree. An identifier (or composite subscripted identifier)
/// directly followed by a parenthesized group inside a row becomes an Apply
/// node whose children are the head and one MOI per comma-separated
/// argument. Parentheses, commas and invisible operators are not nodes.
MoiNode build_moi(const MathExpression& expr);
MoiNode build_moi(const ExprNode& node);

/// Pre-order, deduplicated identifier tokens: composites before their
/// constituents, and "head(·)" for every application.
std::vector<Token> moi_tokens(const MoiNode& moi);

}  // namespace mathemb
