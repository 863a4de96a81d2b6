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

#include "spl/logical_form.h"

#include <algorithm>

#include "spl/error.h"
#include "spl/unicode.h"

namespace spl {

bool IsPlaceholderToken(std::string_view token) {
  static constexpr std::string_view kClasses[] = {"TIME", "DATE", "NUMBER", "PHONE"};
  for (std::string_view cls : kClasses) {
    if (token.size() < cls.size() + 2) continue;
    if (token.substr(0, cls.size()) != cls || token[cls.size()] != '_') continue;
    std::string_view index = token.substr(cls.size() + 1);
    if (std::all_of(index.begin(), index.end(),
                    [](char c) { return c >= '0' && c <= '9'; })) {
      return true;
    }
  }
  return false;
}

std::string PlaceholderClass(std::string_view token) {
  if (!IsPlaceholderToken(token)) return std::string(token);
  return std::string(token.substr(0, token.find('_')));
}

LogicalForm::LogicalForm(std::vector<std::string> tokens) : tokens_(std::move(tokens)) {}

std::string LogicalForm::Serialize() const { return unicode::Join(tokens_, " "); }

LogicalForm ParseLogicalForm(std::string_view text) {
  std::vector<std::string> tokens = unicode::SplitWhitespace(text);
  if (tokens.empty()) {
    throw Error(ErrorCode::kEmptyInput, "logical form is empty");
  }
  const auto quotes = std::count(tokens.begin(), tokens.end(), kQuoteToken);
  if (quotes % 2 != 0) {
    throw Error(ErrorCode::kUnbalancedQuotes,
                "odd number of quote tokens in: " + std::string(text));
  }
  return LogicalForm(std::move(tokens));
}

std::string ParameterRef::Value() const { return unicode::Join(value_tokens, " "); }

std::vector<ParameterRef> ExtractParameters(const LogicalForm& lf) {
  std::vector<ParameterRef> params;
  const auto& tokens = lf.tokens();
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i] == kQuoteToken) {
      size_t close = i + 1;
      while (close < tokens.size() && tokens[close] != kQuoteToken) ++close;
      if (close == tokens.size()) {
        throw Error(ErrorCode::kUnbalancedQuotes, "unterminated quoted region");
      }
      ParameterRef ref;
      ref.param_index = params.size();
      ref.kind = ParameterRef::Kind::kQuoted;
      ref.begin = i;
      ref.end = close + 1;
      ref.value_tokens.assign(tokens.begin() + static_cast<long>(i) + 1,
                              tokens.begin() + static_cast<long>(close));
      params.push_back(std::move(ref));
      i = close;
    } else if (IsPlaceholderToken(tokens[i])) {
      ParameterRef ref;
      ref.param_index = params.size();
      ref.kind = ParameterRef::Kind::kPlaceholder;
      ref.begin = i;
      ref.end = i + 1;
      ref.value_tokens = {tokens[i]};
      params.push_back(std::move(ref));
    }
  }
  return params;
}

LogicalForm ReplaceTokens(const LogicalForm& lf, size_t begin, size_t end,
                          const std::vector<std::string>& replacement) {
  const auto& tokens = lf.tokens();
  if (begin > end || end > tokens.size()) {
    throw Error(ErrorCode::kInvalidArgument, "token range out of bounds");
  }
  std::vector<std::string> out(tokens.begin(), tokens.begin() + static_cast<long>(begin));
  out.insert(out.end(), replacement.begin(), replacement.end());
  out.insert(out.end(), tokens.begin() + static_cast<long>(end), tokens.end());
  return LogicalForm(std::move(out));
}

}  // namespace spl
