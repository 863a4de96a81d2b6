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

#ifndef SPL_ORACLE_TER_ORACLE_H_
#define SPL_ORACLE_TER_ORACLE_H_

#include <cstddef>
#include <string>
#include <vector>

namespace spl::oracle {

// Minimum over every sequence of at most `max_shifts` block moves of
// (moves + word edit distance to ref). Any contiguous block may move to any
// position. Exponential; meant for sentences of six tokens or fewer.
size_t ExhaustiveTerEdits(const std::vector<std::string>& hyp, const std::vector<std::string>& ref,
                          size_t max_shifts);

// Plain dynamic-programming Levenshtein distance over tokens, written
// independently of the library's.
size_t LevenshteinReference(const std::vector<std::string>& a, const std::vector<std::string>& b);

}  // namespace spl::oracle

#endif  // SPL_ORACLE_TER_ORACLE_H_
