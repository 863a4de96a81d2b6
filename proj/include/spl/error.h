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

#ifndef SPL_ERROR_H_
#define SPL_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace spl {

// Every failure raised by the library carries one of these codes so callers
// (the quarantine writer in particular) can classify it without parsing text.
enum class ErrorCode {
  kInvalidArgument,
  kEmptyInput,
  kUnbalancedQuotes,
  kMalformedRecord,
  kSpanMismatch,
  kDuplicateId,
  kEmptyParamType,
  kUnknownParamType,
  kBackendUnreachable,
  kAttentionUnavailable,
  kNonStochasticAttention,
  kPlaceholderLost,
  kPlaceholderDuplicated,
  kShapeMismatch,
  kDegenerateSpan,
  kLanguageMismatch,
  kLengthMismatch,
  kIo,
  kConfig,
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace spl

#endif  // SPL_ERROR_H_
