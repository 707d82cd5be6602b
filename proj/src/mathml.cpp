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

#include "mathemb/mathml.hpp"

#include <memory>

#include "mathemb/errors.hpp"
#include "mathemb/text.hpp"

namespace mathemb {

std::string_view kind_name(NodeKind kind) noexcept {
  switch (kind) {
    case NodeKind::Identifier: return "identifier";
    case NodeKind::Number: return "number";
    case NodeKind::Operator: return "operator";
    case NodeKind::Apply: return "apply";
    case NodeKind::Subscript: return "subscript";
    case NodeKind::Superscript: return "superscript";
    case NodeKind::Fraction: return "fraction";
    case NodeKind::Row: return "row";
    case NodeKind::Other: return "other";
  }
  return "other";
}

bool is_invisible_operator(std::string_view text) noexcept {
  // U+2061..U+2064 encode as E2 81 A1..A4.
  return text.size() == 3 && static_cast<unsigned char>(text[0]) == 0xe2 &&
         static_cast<unsigned char>(text[1]) == 0x81 &&
         static_cast<unsigned char>(text[2]) >= 0xa1 &&
         static_cast<unsigned char>(text[2]) <= 0xa4;
}

namespace {

constexpr int kMaxDepth = 256;

// Minimal XML element tree; only what the MathML conversion needs.
struct XmlNode {
  std::string name;  // local name; empty for text nodes
  std::string text;  // decoded character data for text nodes
  std::vector<XmlNode> children;

  bool is_text() const noexcept { return name.empty(); }
};

class XmlReader {
 public:
  explicit XmlReader(std::string_view src) : src_(src) {}

  XmlNode read_document() {
    skip_misc();
    if (at_end() || peek() != '<') fail("expected a root element");
    XmlNode root = read_element(0);
    skip_misc();
    if (!at_end()) fail("trailing content after root element");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw MalformedMarkup(what + " at offset " + std::to_string(pos_));
  }

  bool at_end() const noexcept { return pos_ >= src_.size(); }
  char peek() const noexcept { return src_[pos_]; }
  bool starts_with(std::string_view s) const noexcept { return src_.substr(pos_).starts_with(s); }

  void skip_ws() {
    while (!at_end() && (peek() == ' ' || peek() == '\t' || peek() == '\n' || peek() == '\r')) ++pos_;
  }

  void skip_past(std::string_view terminator) {
    auto end = src_.find(terminator, pos_);
    if (end == std::string_view::npos) fail("unterminated construct");
    pos_ = end + terminator.size();
  }

  // Whitespace, comments, processing instructions and doctype around the root.
  void skip_misc() {
    for (;;) {
      skip_ws();
      if (starts_with("<!--")) {
        skip_past("-->");
      } else if (starts_with("<?")) {
        skip_past("?>");
      } else if (starts_with("<!DOCTYPE")) {
        skip_past(">");
      } else {
        return;
      }
    }
  }

  static bool is_name_char(char c) noexcept {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == '-' || c == '_' || c == ':' || c == '.' || static_cast<unsigned char>(c) >= 0x80;
  }

  std::string read_name() {
    std::size_t start = pos_;
    while (!at_end() && is_name_char(peek())) ++pos_;
    if (start == pos_) fail("expected a name");
    return std::string(src_.substr(start, pos_ - start));
  }

  static std::string local_name(const std::string& qname) {
    auto colon = qname.rfind(':');
    return colon == std::string::npos ? qname : qname.substr(colon + 1);
  }

  std::string decode(std::string_view raw) const {
    auto decoded = text::decode_entities(raw);
    if (!decoded) fail("invalid character or entity reference");
    return *std::move(decoded);
  }

  XmlNode read_element(int depth) {
    if (depth > kMaxDepth) fail("nesting too deep");
    ++pos_;  // '<'
    std::string qname = read_name();
    XmlNode node;
    node.name = local_name(qname);
    for (;;) {
      skip_ws();
      if (at_end()) fail("unterminated start tag");
      if (starts_with("/>")) {
        pos_ += 2;
        return node;
      }
      if (peek() == '>') {
        ++pos_;
        break;
      }
      read_name();
      skip_ws();
      if (at_end() || peek() != '=') fail("expected '=' in attribute");
      ++pos_;
      skip_ws();
      if (at_end() || (peek() != '"' && peek() != '\'')) fail("expected quoted attribute value");
      char quote = peek();
      auto end = src_.find(quote, pos_ + 1);
      if (end == std::string_view::npos) fail("unterminated attribute value");
      decode(src_.substr(pos_ + 1, end - pos_ - 1));
      pos_ = end + 1;
    }
    for (;;) {
      if (at_end()) fail("missing end tag for <" + qname + ">");
      if (starts_with("</")) {
        pos_ += 2;
        std::string closing = read_name();
        skip_ws();
        if (at_end() || peek() != '>') fail("malformed end tag");
        ++pos_;
        if (closing != qname) fail("mismatched end tag </" + closing + "> for <" + qname + ">");
        return node;
      }
      if (starts_with("<!--")) {
        skip_past("-->");
      } else if (starts_with("<![CDATA[")) {
        std::size_t start = pos_ + 9;
        auto end = src_.find("]]>", start);
        if (end == std::string_view::npos) fail("unterminated CDATA section");
        node.children.push_back(XmlNode{{}, std::string(src_.substr(start, end - start)), {}});
        pos_ = end + 3;
      } else if (starts_with("<?")) {
        skip_past("?>");
      } else if (peek() == '<') {
        node.children.push_back(read_element(depth + 1));
      } else {
        auto end = src_.find('<', pos_);
        if (end == std::string_view::npos) end = src_.size();
        node.children.push_back(XmlNode{{}, decode(src_.substr(pos_, end - pos_)), {}});
        pos_ = end;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

void collect_text(const XmlNode& node, std::string& out) {
  if (node.is_text()) {
    out += node.text;
    return;
  }
  for (const auto& c : node.children) collect_text(c, out);
}

std::string text_content(const XmlNode& node) {
  std::string raw;
  collect_text(node, raw);
  return text::collapse_whitespace(raw);
}

ExprNode make_row(std::vector<ExprNode> children) {
  if (children.size() == 1) return std::move(children.front());
  ExprNode row;
  row.kind = NodeKind::Row;
  row.children = std::move(children);
  return row;
}

ExprNode convert(const XmlNode& el);

std::vector<ExprNode> convert_children(const XmlNode& el) {
  std::vector<ExprNode> out;
  for (const auto& c : el.children) {
    if (c.is_text()) continue;
    if (c.name == "annotation" || c.name == "annotation-xml") continue;
    out.push_back(convert(c));
  }
  return out;
}

ExprNode opaque(const XmlNode& el) {
  ExprNode n = ExprNode::leaf(NodeKind::Other, text_content(el));
  n.tag = el.name;
  return n;
}

ExprNode convert(const XmlNode& el) {
  const std::string& name = el.name;
  if (name == "mi") return ExprNode::leaf(NodeKind::Identifier, text_content(el));
  if (name == "mn") return ExprNode::leaf(NodeKind::Number, text_content(el));
  if (name == "mo") return ExprNode::leaf(NodeKind::Operator, text_content(el));
  if (name == "mrow" || name == "mstyle" || name == "math") return make_row(convert_children(el));
  if (name == "semantics") {
    auto kids = convert_children(el);
    if (kids.empty()) return make_row({});
    return std::move(kids.front());
  }
  if (name == "msub" || name == "msup" || name == "mfrac") {
    auto kids = convert_children(el);
    if (kids.size() != 2) return opaque(el);
    ExprNode n;
    n.kind = name == "msub"   ? NodeKind::Subscript
             : name == "msup" ? NodeKind::Superscript
                              : NodeKind::Fraction;
    n.children = std::move(kids);
    return n;
  }
  if (name == "msubsup") {
    auto kids = convert_children(el);
    if (kids.size() != 3) return opaque(el);
    ExprNode sub;
    sub.kind = NodeKind::Subscript;
    sub.children = {std::move(kids[0]), std::move(kids[1])};
    ExprNode sup;
    sup.kind = NodeKind::Superscript;
    sup.children = {std::move(sub), std::move(kids[2])};
    return sup;
  }
  return opaque(el);
}

void escape_into(std::string& out, std::string_view s) {
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out.push_back(c);
    }
  }
}

void write_leaf(std::string& out, std::string_view tag, std::string_view text) {
  out += '<';
  out += tag;
  out += '>';
  escape_into(out, text);
  out += "</";
  out += tag;
  out += '>';
}

void write_node(std::string& out, const ExprNode& n) {
  auto wrap = [&](std::string_view tag) {
    out += '<';
    out += tag;
    out += '>';
    for (const auto& c : n.children) write_node(out, c);
    out += "</";
    out += tag;
    out += '>';
  };
  switch (n.kind) {
    case NodeKind::Identifier: write_leaf(out, "mi", n.text); break;
    case NodeKind::Number: write_leaf(out, "mn", n.text); break;
    case NodeKind::Operator: write_leaf(out, "mo", n.text); break;
    case NodeKind::Other: write_leaf(out, n.tag.empty() ? "mtext" : n.tag, n.text); break;
    case NodeKind::Subscript: wrap("msub"); break;
    case NodeKind::Superscript: wrap("msup"); break;
    case NodeKind::Fraction: wrap("mfrac"); break;
    case NodeKind::Row:
    case NodeKind::Apply: wrap("mrow"); break;
  }
}

}  // namespace

MathExpression parse_mathml(std::string_view markup) {
  if (text::trim(markup).empty()) throw EmptyInput("empty MathML input");
  if (!text::is_valid_utf8(markup)) throw MalformedMarkup("input is not valid UTF-8");
  XmlNode root = XmlReader(markup).read_document();
  if (root.name != "math") throw MalformedMarkup("root element is <" + root.name + ">, not <math>");
  return MathExpression{convert(root), std::string(markup)};
}

std::string serialize(const ExprNode& root) {
  std::string out = "<math>";
  if (root.kind == NodeKind::Row) {
    for (const auto& c : root.children) write_node(out, c);
  } else {
    write_node(out, root);
  }
  out += "</math>";
  return out;
}

}  // namespace mathemb
