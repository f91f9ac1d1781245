// Copyright 2026 The SWLM Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SWLM_UTF8_H_
#define SWLM_UTF8_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace swlm::utf8 {

// Byte offset of the first invalid sequence, or nullopt if `text` is
// well-formed UTF-8 (no overlongs, surrogates or values past U+10FFFF).
std::optional<std::size_t> find_invalid(std::string_view text);

bool is_valid(std::string_view text);

std::vector<char32_t> decode(std::string_view text);

void append(std::string& out, char32_t cp);
std::string encode(const std::vector<char32_t>& cps);

// Splits into one string per Unicode scalar value.
std::vector<std::string> split_chars(std::string_view text);

std::size_t length(std::string_view text);

// Simple one-to-one case folding for Latin, Greek and Cyrillic blocks.
// Characters outside those blocks are returned unchanged.
char32_t to_lower(char32_t cp);
bool is_upper(char32_t cp);
std::string to_lower(std::string_view text);
bool has_upper(std::string_view text);

bool is_space(char32_t cp);

}  // namespace swlm::utf8

#endif  // SWLM_UTF8_H_
