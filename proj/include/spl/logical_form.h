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

#ifndef SPL_LOGICAL_FORM_H_
#define SPL_LOGICAL_FORM_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace spl {

// The literal token delimiting a quoted string parameter.
inline constexpr std::string_view kQuoteToken = "\"";

// True for entity placeholders of the form CLASS_INDEX with CLASS one of
// TIME, DATE, NUMBER, PHONE and INDEX a non-negative decimal integer.
bool IsPlaceholderToken(std::string_view token);

// "TIME_0" -> "TIME". Returns the token unchanged when it is not a
// placeholder.
std::string PlaceholderClass(std::string_view token);

// A logical form in canonical quoted-token form: whitespace-separated tokens
// where each string parameter is the run of tokens between two `"` tokens.
class LogicalForm {
 public:
  LogicalForm() = default;
  explicit LogicalForm(std::vector<std::string> tokens);

  const std::vector<std::string>& tokens() const { return tokens_; }
  size_t size() const { return tokens_.size(); }
  bool empty() const { return tokens_.empty(); }

  std::string Serialize() const;

  bool operator==(const LogicalForm&) const = default;

 private:
  std::vector<std::string> tokens_;
};

// Throws Error(kEmptyInput) for blank text and Error(kUnbalancedQuotes) for
// an odd number of quote tokens.
LogicalForm ParseLogicalForm(std::string_view text);

struct ParameterRef {
  enum class Kind { kQuoted, kPlaceholder };

  size_t param_index = 0;
  Kind kind = Kind::kQuoted;
  // Half-open token range in the logical form. For quoted parameters the
  // range includes both quote tokens.
  size_t begin = 0;
  size_t end = 0;
  std::vector<std::string> value_tokens;

  std::string Value() const;

  bool operator==(const ParameterRef&) const = default;
};

// Quoted regions and placeholder tokens in left-to-right order.
std::vector<ParameterRef> ExtractParameters(const LogicalForm& lf);

// Returns a copy of `lf` with the tokens in [begin, end) replaced.
LogicalForm ReplaceTokens(const LogicalForm& lf, size_t begin, size_t end,
                          const std::vector<std::string>& replacement);

}  // namespace spl

#endif  // SPL_LOGICAL_FORM_H_
