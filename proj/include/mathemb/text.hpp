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
#include <string>
#include <string_view>
#include <vector>

namespace mathemb::text {

/// Decodes one code point starting at `pos` and advances it. Returns
/// nullopt on an invalid or truncated sequence.
std::optional<char32_t> next_code_point(std::string_view s, std::size_t& pos) noexcept;
void append_utf8(std::string& out, char32_t cp);
bool is_valid_utf8(std::string_view s) noexcept;

/// Replaces character and entity references. Returns nullopt when a reference
/// is unterminated or names an entity outside the supported table.
std::optional<std::string> decode_entities(std::string_view s);

std::string_view trim(std::string_view s) noexcept;
/// Trims and collapses internal whitespace runs to one space.
std::string collapse_whitespace(std::string_view s);

bool is_space(char32_t cp) noexcept;
bool is_punct(char32_t cp) noexcept;
char32_t to_lower(char32_t cp) noexcept;

/// Lowercases and splits on whitespace and punctuation.
std::vector<std::string> split_words(std::string_view s);

}  // namespace mathemb::text
