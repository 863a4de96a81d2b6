// Copyright 2026 The SPL Authors.
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

#ifndef SPL_UNICODE_H_
#define SPL_UNICODE_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace spl::unicode {

// NFC-normalizes UTF-8 text. Invalid sequences are replaced with U+FFFD.
std::string Nfc(std::string_view text);

bool IsNfc(std::string_view text);

// Locale-independent (root locale) lowercasing, e.g. "İ" -> "i̇".
std::string ToLower(std::string_view text);

// Full Unicode case folding, used for duplicate detection.
std::string CaseFold(std::string_view text);

std::vector<char32_t> Codepoints(std::string_view text);
std::string FromCodepoint(char32_t cp);

// Han, Hiragana, Katakana and CJK punctuation; scripts written without
// inter-word spaces.
bool IsCjk(char32_t cp);

char32_t FirstCodepoint(std::string_view text);
char32_t LastCodepoint(std::string_view text);

// Splits on runs of Unicode whitespace; never returns empty tokens.
std::vector<std::string> SplitWhitespace(std::string_view text);

std::string Join(const std::vector<std::string>& tokens, std::string_view sep);

std::string Trim(std::string_view text);

}  // namespace spl::unicode

#endif  // SPL_UNICODE_H_
