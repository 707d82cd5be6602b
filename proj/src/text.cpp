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

#include "mathemb/text.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <utility>

namespace mathemb::text {

std::optional<char32_t> next_code_point(std::string_view s, std::size_t& pos) noexcept {
  if (pos >= s.size()) return std::nullopt;
  auto b0 = static_cast<unsigned char>(s[pos]);
  int len;
  char32_t cp;
  if (b0 < 0x80) {
    ++pos;
    return b0;
  } else if ((b0 & 0xe0) == 0xc0) {
    len = 2;
    cp = b0 & 0x1f;
  } else if ((b0 & 0xf0) == 0xe0) {
    len = 3;
    cp = b0 & 0x0f;
  } else if ((b0 & 0xf8) == 0xf0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    return std::nullopt;
  }
  if (pos + len > s.size()) return std::nullopt;
  for (int i = 1; i < len; ++i) {
    auto b = static_cast<unsigned char>(s[pos + i]);
    if ((b & 0xc0) != 0x80) return std::nullopt;
    cp = (cp << 6) | (b & 0x3f);
  }
  // Reject overlong forms, surrogates and out-of-range values.
  static constexpr char32_t kMin[] = {0, 0, 0x80, 0x800, 0x10000};
  if (cp < kMin[len] || cp > 0x10ffff || (cp >= 0xd800 && cp <= 0xdfff)) return std::nullopt;
  pos += len;
  return cp;
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xc0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xe0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
  } else {
    out.push_back(static_cast<char>(0xf0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3f)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
  }
}

bool is_valid_utf8(std::string_view s) noexcept {
  std::size_t pos = 0;
  while (pos < s.size()) {
    if (!next_code_point(s, pos)) return false;
  }
  return true;
}

namespace {

// Named references seen in MathML and scientific HTML. Sorted for binary search.
constexpr std::array<std::pair<std::string_view, char32_t>, 70> kEntities{{
    {"ApplyFunction", 0x2061}, {"Delta", 0x0394}, {"Gamma", 0x0393},
    {"InvisibleComma", 0x2063}, {"InvisiblePlus", 0x2064}, {"InvisibleTimes", 0x2062},
    {"Lambda", 0x039b}, {"Omega", 0x03a9}, {"Phi", 0x03a6},
    {"Pi", 0x03a0}, {"Sigma", 0x03a3}, {"alpha", 0x03b1},
    {"amp", '&'}, {"apos", '\''}, {"beta", 0x03b2},
    {"chi", 0x03c7}, {"copy", 0x00a9}, {"deg", 0x00b0},
    {"delta", 0x03b4}, {"emsp", 0x2003}, {"ensp", 0x2002},
    {"epsilon", 0x03b5}, {"eta", 0x03b7}, {"exist", 0x2203},
    {"forall", 0x2200}, {"gamma", 0x03b3}, {"ge", 0x2265},
    {"gt", '>'}, {"hellip", 0x2026}, {"infin", 0x221e},
    {"int", 0x222b}, {"iota", 0x03b9}, {"isin", 0x2208},
    {"kappa", 0x03ba}, {"lambda", 0x03bb}, {"ldquo", 0x201c},
    {"le", 0x2264}, {"lsquo", 0x2018}, {"lt", '<'},
    {"mdash", 0x2014}, {"middot", 0x00b7}, {"minus", 0x2212},
    {"mu", 0x03bc}, {"nbsp", 0x00a0}, {"ndash", 0x2013},
    {"ne", 0x2260}, {"nu", 0x03bd}, {"omega", 0x03c9},
    {"part", 0x2202}, {"phi", 0x03c6}, {"pi", 0x03c0},
    {"plusmn", 0x00b1}, {"prod", 0x220f}, {"psi", 0x03c8},
    {"quot", '"'}, {"rarr", 0x2192}, {"rdquo", 0x201d},
    {"rho", 0x03c1}, {"rsquo", 0x2019}, {"sect", 0x00a7},
    {"shy", 0x00ad}, {"sigma", 0x03c3}, {"sum", 0x2211},
    {"tau", 0x03c4}, {"theta", 0x03b8}, {"thinsp", 0x2009},
    {"times", 0x00d7}, {"varepsilon", 0x03b5}, {"xi", 0x03be},
    {"zeta", 0x03b6},
}};

std::optional<char32_t> lookup_entity(std::string_view name) {
  auto it = std::lower_bound(kEntities.begin(), kEntities.end(), name,
                             [](const auto& e, std::string_view n) { return e.first < n; });
  if (it != kEntities.end() && it->first == name) return it->second;
  return std::nullopt;
}

}  // namespace

std::optional<std::string> decode_entities(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] != '&') {
      out.push_back(s[i++]);
      continue;
    }
    auto semi = s.find(';', i + 1);
    if (semi == std::string_view::npos || semi - i > 32) return std::nullopt;
    std::string_view ref = s.substr(i + 1, semi - i - 1);
    if (ref.size() >= 2 && ref[0] == '#') {
      int base = 10;
      std::string_view digits = ref.substr(1);
      if (digits[0] == 'x' || digits[0] == 'X') {
        base = 16;
        digits.remove_prefix(1);
      }
      std::uint32_t value = 0;
      auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value, base);
      if (ec != std::errc{} || p != digits.data() + digits.size() || value > 0x10ffff ||
          (value >= 0xd800 && value <= 0xdfff)) {
        return std::nullopt;
      }
      append_utf8(out, value);
    } else if (auto cp = lookup_entity(ref)) {
      append_utf8(out, *cp);
    } else {
      return std::nullopt;
    }
    i = semi + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) noexcept {
  auto ws = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; };
  while (!s.empty() && ws(s.front())) s.remove_prefix(1);
  while (!s.empty() && ws(s.back())) s.remove_suffix(1);
  return s;
}

std::string collapse_whitespace(std::string_view s) {
  std::string out;
  bool pending = false;
  for (char c : trim(s)) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      pending = true;
      continue;
    }
    if (pending) out.push_back(' ');
    pending = false;
    out.push_back(c);
  }
  return out;
}

bool is_space(char32_t cp) noexcept {
  return cp == ' ' || (cp >= 0x09 && cp <= 0x0d) || cp == 0x85 || cp == 0xa0 ||
         cp == 0x1680 || (cp >= 0x2000 && cp <= 0x200a) || cp == 0x2028 || cp == 0x2029 ||
         cp == 0x202f || cp == 0x205f || cp == 0x3000 || cp == 0xfeff;
}

bool is_punct(char32_t cp) noexcept {
  if (cp < 0x80) {
    return (cp >= 0x21 && cp <= 0x2f) || (cp >= 0x3a && cp <= 0x40) ||
           (cp >= 0x5b && cp <= 0x60) || (cp >= 0x7b && cp <= 0x7e);
  }
  return (cp >= 0xa1 && cp <= 0xbf && cp != 0xaa && cp != 0xb2 && cp != 0xb3 && cp != 0xb5 &&
          cp != 0xb9 && cp != 0xba && cp != 0xbc && cp != 0xbd && cp != 0xbe) ||
         cp == 0xd7 || cp == 0xf7 || (cp >= 0x2010 && cp <= 0x2027) ||
         (cp >= 0x2030 && cp <= 0x205e) || (cp >= 0x3001 && cp <= 0x3003) ||
         (cp >= 0x3008 && cp <= 0x3011) || (cp >= 0xff01 && cp <= 0xff0f);
}

char32_t to_lower(char32_t cp) noexcept {
  if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
  if (cp < 0xc0) return cp;
  if (cp <= 0xde && cp != 0xd7) return cp + 0x20;               // Latin-1
  if (cp == 0x178) return 0xff;
  if (cp >= 0x100 && cp <= 0x17f && cp != 0x130 && cp != 0x138 && cp != 0x149) {
    // Latin Extended-A alternates upper/lower, with a shift in parity at U+0139.
    bool odd_upper = (cp >= 0x139 && cp <= 0x148) || (cp >= 0x179 && cp <= 0x17e);
    if (odd_upper ? (cp % 2 == 1) : (cp % 2 == 0)) return cp + 1;
    return cp;
  }
  if (cp >= 0x391 && cp <= 0x3a9 && cp != 0x3a2) return cp + 0x20;  // Greek
  if (cp >= 0x410 && cp <= 0x42f) return cp + 0x20;                 // Cyrillic
  if (cp >= 0x400 && cp <= 0x40f) return cp + 0x50;
  return cp;
}

std::vector<std::string> split_words(std::string_view s) {
  std::vector<std::string> words;
  std::string current;
  std::size_t pos = 0;
  while (pos < s.size()) {
    auto cp = next_code_point(s, pos);
    if (!cp) {
      ++pos;  // skip the offending byte
      continue;
    }
    if (is_space(*cp) || is_punct(*cp)) {
      if (!current.empty()) words.push_back(std::move(current));
      current.clear();
      continue;
    }
    append_utf8(current, to_lower(*cp));
  }
  if (!current.empty()) words.push_back(std::move(current));
  return words;
}

}  // namespace mathemb::text
