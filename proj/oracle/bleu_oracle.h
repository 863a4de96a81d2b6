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

#ifndef SPL_ORACLE_BLEU_ORACLE_H_
#define SPL_ORACLE_BLEU_ORACLE_H_

#include <string>
#include <vector>

namespace spl::oracle {

// Corpus BLEU (percent) from pre-tokenized sentences by direct n-gram
// enumeration: clipped counts, add-one smoothing on orders 2..4, brevity
// penalty. Shares no code with the library.
double BruteForceBleu(const std::vector<std::vector<std::string>>& cands,
                      const std::vector<std::vector<std::string>>& refs);

}  // namespace spl::oracle

#endif  // SPL_ORACLE_BLEU_ORACLE_H_
