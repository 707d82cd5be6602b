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

#include <string>
#include <string_view>
#include <vector>

namespace mathemb {

enum class NodeKind {
  Identifier,
  Number,
  Operator,
  Apply,
  Subscript,
  Superscript,
  Fraction,
  Row,
  Other,
};

std::string_view kind_name(NodeKind kind) noexcept;

/// Presentation-MathML expression tree.
///
/// Leaves (Identifier, Number, Operator, Other) carry their surface text with
/// whitespace collapsed. Scripts hold {base, script}; fractions hold
/// {numerator, denominator}. `msubsup` is represented as a Superscript whose
/// base is a Subscript. Rows with exactly one child are collapsed into that
/// child while parsing, so every tree reachable from `parse_mathml` is already
/// canonical. `tag` is only set for Other leaves and records the element name.
struct ExprNode {
  NodeKind kind = NodeKind::Row;
  std::string text;
  std::string tag;
  std::vector<ExprNode> children;

  static ExprNode leaf(NodeKind kind, std::string text) {
    return ExprNode{kind, std::move(text), {}, {}};
  }

  bool is_leaf() const noexcept {
    return kind == NodeKind::Identifier || kind == NodeKind::Number ||
           kind == NodeKind::Operator || kind == NodeKind::Other;
  }

  friend bool operator==(const ExprNode&, const ExprNode&) = default;
};

struct MathExpression {
  ExprNode root;
  std::string source_markup;
};

/// Parses a `<math>` fragment. Supported elements: mi, mn, mo, mrow, msub,
/// msup, mfrac, msubsup. `semantics` is transparent (its first child is used),
/// `annotation` and `annotation-xml` are dropped, `mstyle` acts as a row;
/// anything else becomes an Other leaf holding its text content.
///
/// Throws EmptyInput for blank input and MalformedMarkup for XML that is not
/// well formed or not rooted at a math element.
MathExpression parse_mathml(std::string_view markup);

/// Canonical markup: attributes dropped, whitespace collapsed, single-child
/// rows removed. Parsing the result yields an equal tree.
std::string serialize(const ExprNode& root);
inline std::string serialize(const MathExpression& expr) { return serialize(expr.root); }

/// U+2061..U+2064 (function application, invisible times/separator/plus).
bool is_invisible_operator(std::string_view text) noexcept;

}  // namespace mathemb
