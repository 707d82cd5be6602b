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

#include "mathemb/moi.hpp"

#include <optional>
#include <span>
#include <unordered_set>

namespace mathemb {

std::size_t MoiNode::node_count() const noexcept {
  std::size_t n = 1;
  for (const auto& c : children) n += c.node_count();
  return n;
}

namespace {

bool is_op(const ExprNode& n, std::string_view text) {
  return n.kind == NodeKind::Operator && n.text == text;
}

bool is_separator(const ExprNode& n) {
  return n.kind == NodeKind::Operator &&
         (n.text.empty() || n.text == "(" || n.text == ")" || n.text == "," ||
          is_invisible_operator(n.text));
}

bool is_application_head(const ExprNode& n) {
  if (n.kind == NodeKind::Identifier) return !n.text.empty();
  return n.kind == NodeKind::Subscript && n.children[0].kind == NodeKind::Identifier &&
         n.children[1].kind == NodeKind::Identifier;
}

std::string render_script(const ExprNode& n) {
  std::string r = render(n);
  return n.is_leaf() ? r : "{" + r + "}";
}

// Index of the ")" matching the "(" at `open`, if any.
std::optional<std::size_t> matching_paren(std::span<const ExprNode> items, std::size_t open) {
  int depth = 0;
  for (std::size_t i = open; i < items.size(); ++i) {
    if (is_op(items[i], "(")) ++depth;
    if (is_op(items[i], ")") && --depth == 0) return i;
  }
  return std::nullopt;
}

MoiNode from_items(std::span<const ExprNode> items);

MoiNode application(const ExprNode& head, std::span<const ExprNode> args_region) {
  MoiNode app;
  app.kind = NodeKind::Apply;
  app.children.push_back(build_moi(head));
  std::string surface = render(head) + "(";
  int depth = 0;
  std::size_t start = 0;
  bool first = true;
  auto flush = [&](std::size_t end) {
    auto arg = args_region.subspan(start, end - start);
    if (!first) surface += ",";
    first = false;
    for (const auto& a : arg) surface += render(a);
    MoiNode child = from_items(arg);
    if (child.kind != NodeKind::Row || !child.children.empty()) app.children.push_back(std::move(child));
  };
  for (std::size_t i = 0; i < args_region.size(); ++i) {
    if (is_op(args_region[i], "(")) ++depth;
    if (is_op(args_region[i], ")")) --depth;
    if (depth == 0 && is_op(args_region[i], ",")) {
      flush(i);
      start = i + 1;
    }
  }
  flush(args_region.size());
  app.surface = surface + ")";
  return app;
}

MoiNode from_items(std::span<const ExprNode> items) {
  std::vector<MoiNode> grouped;
  std::string surface;
  for (const auto& it : items) surface += render(it);
  for (std::size_t i = 0; i < items.size(); ++i) {
    const ExprNode& item = items[i];
    if (is_application_head(item)) {
      std::size_t j = i + 1;
      while (j < items.size() && items[j].kind == NodeKind::Operator &&
             is_invisible_operator(items[j].text)) {
        ++j;
      }
      if (j < items.size() && is_op(items[j], "(")) {
        if (auto close = matching_paren(items, j)) {
          grouped.push_back(application(item, items.subspan(j + 1, *close - j - 1)));
          i = *close;
          continue;
        }
      }
    }
    if (is_separator(item)) continue;
    grouped.push_back(build_moi(item));
  }
  if (grouped.size() == 1) return std::move(grouped.front());
  return MoiNode{std::move(surface), NodeKind::Row, std::move(grouped)};
}

void emit_tokens(const MoiNode& n, std::vector<Token>& out, std::unordered_set<std::string>& seen) {
  auto emit = [&](const std::string& s) {
    if (!s.empty() && seen.insert(s).second) out.push_back(Token::identifier(s));
  };
  switch (n.kind) {
    case NodeKind::Apply:
      emit(n.children.front().surface + "(·)");
      break;
    case NodeKind::Subscript:
      if (n.children[0].kind == NodeKind::Identifier && n.children[1].kind == NodeKind::Identifier) {
        emit(n.surface);
      }
      break;
    case NodeKind::Identifier:
      emit(n.surface);
      break;
    default:
      break;
  }
  for (const auto& c : n.children) emit_tokens(c, out, seen);
}

}  // namespace

std::string render(const ExprNode& node) {
  switch (node.kind) {
    case NodeKind::Identifier:
    case NodeKind::Number:
    case NodeKind::Other:
      return node.text;
    case NodeKind::Operator:
      return is_invisible_operator(node.text) ? std::string() : node.text;
    case NodeKind::Subscript:
      return render(node.children[0]) + "_" + render_script(node.children[1]);
    case NodeKind::Superscript:
      return render(node.children[0]) + "^" + render_script(node.children[1]);
    case NodeKind::Fraction: {
      auto part = [](const ExprNode& n) { return n.is_leaf() ? render(n) : "(" + render(n) + ")"; };
      return part(node.children[0]) + "/" + part(node.children[1]);
    }
    case NodeKind::Row:
    case NodeKind::Apply: {
      std::string s;
      for (const auto& c : node.children) s += render(c);
      return s;
    }
  }
  return {};
}

MoiNode build_moi(const MathExpression& expr) { return build_moi(expr.root); }

MoiNode build_moi(const ExprNode& node) {
  switch (node.kind) {
    case NodeKind::Row:
    case NodeKind::Apply:
      return from_items(node.children);
    case NodeKind::Subscript:
    case NodeKind::Superscript:
    case NodeKind::Fraction:
      return MoiNode{render(node), node.kind, {build_moi(node.children[0]), build_moi(node.children[1])}};
    default:
      return MoiNode{render(node), node.kind, {}};
  }
}

std::vector<Token> moi_tokens(const MoiNode& moi) {
  std::vector<Token> out;
  std::unordered_set<std::string> seen;
  emit_tokens(moi, out, seen);
  return out;
}

}  // namespace mathemb
