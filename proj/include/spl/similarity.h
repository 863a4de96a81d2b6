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

#ifndef SPL_SIMILARITY_H_
#define SPL_SIMILARITY_H_

#include <string>
#include <string_view>
#include <vector>

namespace spl {

struct TokenizeOptions {
  // Score at the codepoint level (whitespace ignored), for CJK text that is
  // not pre-segmented.
  bool char_level = false;
};

// NFC, then whitespace split (or codepoints when char_level).
std::vector<std::string> SimilarityTokens(std::string_view text, const TokenizeOptions& opts = {});

// Corpus BLEU in percent: clipped 4-gram precisions pooled over the corpus,
// geometric mean, brevity penalty exp(1 - r/c) when c <= r. Precisions for
// n >= 2 use add-one smoothing, (matches + 1) / (total + 1); unigram
// precision is unsmoothed, so a corpus with no unigram match scores 0.
// Throws Error(kLengthMismatch) when sizes differ, kInvalidArgument if empty.
double CorpusBleu(const std::vector<std::string>& cands, const std::vector<std::string>& refs,
                  const TokenizeOptions& opts = {});

// Word-level Levenshtein distance (insert, delete, substitute; unit costs).
size_t EditDistance(const std::vector<std::string>& hyp, const std::vector<std::string>& ref);

struct TerResult {
  size_t edits = 0;   // includes shifts
  size_t shifts = 0;
  size_t ref_len = 0;
};

inline constexpr size_t kMaxTerShifts = 10;
inline constexpr size_t kExactTerMaxTokens = 6;

// TER edits with up to `max_shifts` block shifts. Hypotheses of at most
// kExactTerMaxTokens tokens are searched exhaustively: every block may move
// anywhere and the minimum of shifts + edit distance is returned. Longer
// ones use the greedy search, which repeatedly applies the shift with the
// largest reduction in edit distance (net of the shift's own cost) and only
// moves hypothesis phrases that also occur in the reference.
TerResult SentenceTer(const std::vector<std::string>& hyp, const std::vector<std::string>& ref,
                      size_t max_shifts = kMaxTerShifts);

struct TerCorpusResult {
  // Mean per-sentence edits / ref_len, in percent.
  double ter = 0.0;
  size_t scored = 0;
  size_t skipped_empty_refs = 0;
};

TerCorpusResult CorpusTer(const std::vector<std::string>& cands, const std::vector<std::string>& refs,
                          const TokenizeOptions& opts = {});

struct SimilarityReport {
  double bleu = 0.0;
  double ter = 0.0;
  size_t n = 0;
  size_t skipped_empty_refs = 0;
};

SimilarityReport Similarity(const std::vector<std::string>& cands,
                            const std::vector<std::string>& refs, const TokenizeOptions& opts = {});

}  // namespace spl

#endif  // SPL_SIMILARITY_H_
