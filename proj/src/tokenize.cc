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

#include "spl/tokenize.h"

#include <algorithm>

#include "spl/unicode.h"

namespace spl {
namespace {

bool StartsWith(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

bool IsClosingPunct(char32_t c) {
  static constexpr char32_t kClosing[] = {U',', U'.', U'!', U'?', U';', U':', U')', U']',
                                          U'}', U'%', U'。', U'，', U'！',
                                          U'？', U'、', U'؟', U'،'};
  return std::find(std::begin(kClosing), std::end(kClosing), c) != std::end(kClosing);
}

bool IsOpeningPunct(char32_t c) { return c == U'(' || c == U'[' || c == U'{'; }

}  // namespace

bool NeedsSpaceBetween(std::string_view left, std::string_view right) {
  if (left.empty() || right.empty()) return false;
  const char32_t l = unicode::LastCodepoint(left);
  const char32_t r = unicode::FirstCodepoint(right);
  if (unicode::IsCjk(l) && unicode::IsCjk(r)) return false;
  if (IsClosingPunct(r) || IsOpeningPunct(l)) return false;
  return true;
}

std::string Detokenize(const std::vector<std::string>& tokens) {
  const bool sentencepiece = std::any_of(tokens.begin(), tokens.end(), [](const std::string& t) {
    return t.find(kWordBoundary) != std::string::npos;
  });
  std::string out;
  if (sentencepiece) {
    for (const std::string& t : tokens) {
      size_t pos = 0;
      while (pos < t.size()) {
        const size_t at = t.find(kWordBoundary, pos);
        if (at == std::string::npos) {
          out.append(t, pos, std::string::npos);
          break;
        }
        out.append(t, pos, at - pos);
        out.push_back(' ');
        pos = at + kWordBoundary.size();
      }
    }
    if (!out.empty() && out.front() == ' ') out.erase(0, 1);
    return out;
  }
  for (const std::string& t : tokens) {
    if (StartsWith(t, kContinuation) && !out.empty()) {
      out.append(t, kContinuation.size(), std::string::npos);
      continue;
    }
    if (!out.empty() &&
        !(unicode::IsCjk(unicode::LastCodepoint(out)) && unicode::IsCjk(unicode::FirstCodepoint(t)))) {
      out.push_back(' ');
    }
    out.append(t);
  }
  return out;
}

std::vector<std::string> MockSubwordTokenize(std::string_view text, size_t piece_bytes) {
  std::vector<std::string> pieces;
  size_t i = 0;
  while (i <= text.size()) {
    size_t j = text.find(' ', i);
    if (j == std::string_view::npos) j = text.size();
    std::string_view word = text.substr(i, j - i);
    for (size_t k = 0; k < word.size() || (k == 0 && word.empty()); k += piece_bytes) {
      std::string piece = k == 0 ? std::string(kWordBoundary) : std::string();
      piece.append(word.substr(k, piece_bytes));
      pieces.push_back(std::move(piece));
      if (word.empty()) break;
    }
    i = j + 1;
  }
  return pieces;
}

}  // namespace spl
