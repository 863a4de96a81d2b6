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

#ifndef SPL_ALIGN_H_
#define SPL_ALIGN_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "spl/example.h"
#include "spl/nmt.h"

namespace spl {

enum class AlignMethod { kQuotesRetained, kAttentionFallback };

std::string_view AlignMethodName(AlignMethod m);

struct QuotePair {
  size_t open = 0;
  size_t close = 0;

  bool operator==(const QuotePair&) const = default;
};

struct SpanAlignment {
  size_t source_span_index = 0;
  // Half-open range over the target tokens. A degenerate alignment has
  // start_tok == end_tok and marks the position where the value is inserted.
  size_t start_tok = 0;
  size_t end_tok = 0;
  AlignMethod method = AlignMethod::kQuotesRetained;
  // Mean attention mass the range puts on the source entity tokens.
  // Diagnostic only.
  double score = 0.0;

  bool degenerate() const { return start_tok == end_tok; }

  bool operator==(const SpanAlignment&) const = default;
};

// Pairs consecutive quote-like tokens: (0,1), (2,3), ... Throws
// Error(kUnbalancedQuotes) on an odd count.
std::vector<QuotePair> FindQuotePairs(const std::vector<std::string>& tokens);

// Locates each marked source entity in the translation.
//
// If the target holds exactly two quote tokens per span, the target quotes
// form consecutive pairs ("slots") and every source quote is matched to the
// target quote it attends to most. When that independent choice does not
// give each span its own slot, spans are assigned to slots by a bitmask DP
// maximizing the summed attention of the matched quote pairs. The span is
// the tokens strictly between the slot's quotes.
//
// Otherwise each span resolves its two source quotes independently to the
// target rows with the highest attention on them; the span is the closed
// range between the two rows with quote-like tokens trimmed from its ends.
// If the resulting ranges intersect, a DP picks the pairwise-disjoint set of
// ranges with the highest summed attention. A span whose two resolved rows
// are both quote tokens reports kQuotesRetained, otherwise
// kAttentionFallback.
//
// Argmax ties go to the lowest index. Ranges that come out empty are
// returned as degenerate insertion points and, if `diagnostics` is given,
// reported there as DegenerateSpan. Output order follows the source spans.
// Throws Error(kShapeMismatch) for inconsistent shapes or quote positions,
// and Error(kDegenerateSpan) when ranges collide and the target has fewer
// tokens than there are spans.
std::vector<SpanAlignment> AlignSpans(const std::vector<std::string>& src_tokens,
                                      const std::vector<std::string>& tgt_tokens,
                                      const AttentionMatrix& attention,
                                      const std::vector<QuotePair>& src_quotes,
                                      std::vector<std::string>* diagnostics = nullptr);

struct OverrideResult {
  std::vector<std::string> tokens;
  std::string utterance;
  // Sorted by start offset.
  std::vector<EntitySpan> spans;
  // For each output span, the index of the source span it carries.
  std::vector<size_t> source_index;
};

// Replaces each aligned target range with the source span's value, drops
// every quote-like token and recomputes byte offsets on the detokenized
// text. Degenerate alignments insert the value at their position.
OverrideResult OverrideSpans(const std::vector<std::string>& tgt_tokens,
                             const std::vector<SpanAlignment>& alignments,
                             const std::vector<EntitySpan>& source_spans);

}  // namespace spl

#endif  // SPL_ALIGN_H_
