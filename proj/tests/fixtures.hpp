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

#include <string_view>

namespace mathemb::testing {

// W(2,k) > 2^k / k^ε
inline constexpr std::string_view kVdwBound =
    "<math><mi>W</mi><mo>(</mo><mn>2</mn><mo>,</mo><mi>k</mi><mo>)</mo><mo>&gt;</mo>"
    "<mfrac><msup><mn>2</mn><mi>k</mi></msup><msup><mi>k</mi><mi>ε</mi></msup></mfrac></math>";

inline constexpr std::string_view kVdwNumber =
    "<math><mi>W</mi><mo>(</mo><mn>2</mn><mo>,</mo><mi>k</mi><mo>)</mo></math>";

inline constexpr std::string_view kAlphaSubI = "<math><msub><mi>α</mi><mi>i</mi></msub></math>";

}  // namespace mathemb::testing
