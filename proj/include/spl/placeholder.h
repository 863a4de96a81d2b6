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

#ifndef SPL_PLACEHOLDER_H_
#define SPL_PLACEHOLDER_H_

#include <string>
#include <vector>

#include "spl/example.h"
#include "spl/nmt.h"

namespace spl {

struct PlaceholderTranslation {
  // Target-language example: the translation with every placeholder
  // restored to its source value, spans re-recorded at the restored
  // positions, logical form unchanged.
  Example example;
  // For each output span, the index of the source span it came from.
  std::vector<size_t> source_index;
  // The text actually sent to the backend.
  std::string sent_text;
};

// Entity preservation for backends without attention: each span value is
// replaced by PARAM_i (the prefix grows extra X's while it collides with
// text already in the utterance), the sentence is translated, and each
// PARAM_i is located by exact match in the output. Throws
// Error(kPlaceholderLost) when one is missing and Error(kPlaceholderDuplicated)
// when one appears twice.
PlaceholderTranslation TranslateWithPlaceholders(const TranslationBackend& backend,
                                                 const Example& e, const std::string& src_lang,
                                                 const std::string& tgt_lang,
                                                 const BatchOptions& retry = {});

// The placeholder prefix TranslateWithPlaceholders would use for `text`.
std::string PlaceholderPrefix(const std::string& text);

}  // namespace spl

#endif  // SPL_PLACEHOLDER_H_
