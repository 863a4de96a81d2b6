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

#ifndef SPL_ORACLE_ALIGN_ORACLE_H_
#define SPL_ORACLE_ALIGN_ORACLE_H_

#include <string>
#include <vector>

#include "spl/align.h"
#include "spl/nmt.h"
#include "spl/rng.h"

namespace spl::oracle {

// Exhaustive reference for AlignSpans on small inputs. Quote-retained
// targets try every span-to-slot permutation; the others try every
// assignment of pairwise-disjoint row intervals. Only ranges and methods are
// filled in (score is left at zero).
std::vector<SpanAlignment> BruteForceAlign(const std::vector<std::string>& src_tokens,
                                           const std::vector<std::string>& tgt_tokens,
                                           const AttentionMatrix& attention,
                                           const std::vector<QuotePair>& src_quotes);

struct AlignInstance {
  std::vector<std::string> src_tokens;
  std::vector<std::string> tgt_tokens;
  AttentionMatrix attention;
  std::vector<QuotePair> src_quotes;
};

// A source of `n_src` tokens holding `m` quoted spans (2m <= n_src) and a
// target of `n_tgt` tokens of which `tgt_quotes` are quote-like. Attention
// rows are random and row-stochastic; one instance in four uses coarse
// weights so that argmax ties are common.
AlignInstance RandomAlignInstance(Rng& rng, size_t m, size_t n_src, size_t n_tgt, size_t tgt_quotes);

// Row-stochastic attention with weights drawn from rng; `coarse` draws small
// integers before normalizing.
AttentionMatrix RandomAttention(Rng& rng, size_t rows, size_t cols, bool coarse);

}  // namespace spl::oracle

#endif  // SPL_ORACLE_ALIGN_ORACLE_H_
