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

#include "spl/placeholder.h"

#include <algorithm>

namespace spl {
namespace {

bool IsWordByte(char c) {
  return (c >= '0' && c <= '9') || (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
}

// Occurrences of `token` not embedded in a longer word (PARAM_1 must not
// match inside PARAM_12).
std::vector<size_t> FindToken(const std::string& text, const std::string& token) {
  std::vector<size_t> hits;
  for (size_t at = text.find(token); at != std::string::npos; at = text.find(token, at + 1)) {
    const bool left_ok = at == 0 || !IsWordByte(text[at - 1]);
    const size_t after = at + token.size();
    const bool right_ok = after >= text.size() || !IsWordByte(text[after]);
    if (left_ok && right_ok) hits.push_back(at);
  }
  return hits;
}

}  // namespace

std::string PlaceholderPrefix(const std::string& text) {
  std::string prefix = "PARAM";
  while (text.find(prefix + "_") != std::string::npos) prefix += "X";
  return prefix;
}

PlaceholderTranslation TranslateWithPlaceholders(const TranslationBackend& backend,
                                                 const Example& e, const std::string& src_lang,
                                                 const std::string& tgt_lang,
                                                 const BatchOptions& retry) {
  const std::string prefix = PlaceholderPrefix(e.utterance);
  auto name = [&](size_t i) { return prefix + "_" + std::to_string(i); };

  PlaceholderTranslation out;
  size_t pos = 0;
  for (size_t i = 0; i < e.spans.size(); ++i) {
    out.sent_text.append(e.utterance, pos, e.spans[i].start - pos);
    out.sent_text.append(name(i));
    pos = e.spans[i].end;
  }
  out.sent_text.append(e.utterance, pos, std::string::npos);

  TranslationRequest request{src_lang, tgt_lang, out.sent_text, false, {}};
  const TranslationResult result = TranslateWithRetry(backend, request, retry);
  const std::string& text = result.tgt_text;

  std::vector<std::pair<size_t, size_t>> found;  // (byte offset, span index)
  for (size_t i = 0; i < e.spans.size(); ++i) {
    const auto hits = FindToken(text, name(i));
    if (hits.empty()) {
      throw Error(ErrorCode::kPlaceholderLost,
                  "placeholder " + std::to_string(i) + " (" + name(i) + ") missing from translation");
    }
    if (hits.size() > 1) {
      throw Error(ErrorCode::kPlaceholderDuplicated,
                  "placeholder " + std::to_string(i) + " appears " + std::to_string(hits.size()) +
                      " times in translation");
    }
    found.emplace_back(hits.front(), i);
  }
  std::sort(found.begin(), found.end());

  Example& t = out.example;
  t.id = e.id;
  t.lang = tgt_lang;
  t.logical_form = e.logical_form;
  t.provenance = Provenance::kMachineTranslated;
  pos = 0;
  for (const auto& [at, i] : found) {
    t.utterance.append(text, pos, at - pos);
    EntitySpan span = e.spans[i];
    span.start = t.utterance.size();
    t.utterance.append(span.value);
    span.end = t.utterance.size();
    t.spans.push_back(std::move(span));
    out.source_index.push_back(i);
    pos = at + name(i).size();
  }
  t.utterance.append(text, pos, std::string::npos);
  return out;
}

}  // namespace spl
