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

#ifndef SPL_TOKENIZE_H_
#define SPL_TOKENIZE_H_

#include <string>
#include <string_view>
#include <vector>

namespace spl {

// Sentencepiece word-boundary marker U+2581.
inline constexpr std::string_view kWordBoundary = "\xE2\x96\x81";
// WordPiece-style continuation prefix.
inline constexpr std::string_view kContinuation = "##";

// Joins translation tokens into text.
//  - If any token carries the word-boundary marker, pieces are concatenated
//    and markers become spaces (sentencepiece convention).
//  - Otherwise tokens are space-joined, except that pieces starting with
//    the continuation prefix merge leftward and no space is put between
//    two CJK codepoints.
std::string Detokenize(const std::vector<std::string>& tokens);

// Joins two already-detokenized pieces of text: a single space unless the
// boundary is CJK/CJK, the right side starts with closing punctuation or the
// left side ends with opening punctuation.
bool NeedsSpaceBetween(std::string_view left, std::string_view right);

// Sentencepiece-like tokenizer used by tests and the mock pipeline: words
// split on spaces, each word cut into pieces of at most `piece_bytes`
// bytes, the first piece carrying the word-boundary marker.
std::vector<std::string> MockSubwordTokenize(std::string_view text, size_t piece_bytes = 4);

}  // namespace spl

#endif  // SPL_TOKENIZE_H_
