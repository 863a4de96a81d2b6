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

#include "spl/similarity.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "spl/error.h"
#include "spl/unicode.h"

namespace spl {
namespace {

constexpr int kMaxOrder = 4;

void CheckLengths(size_t a, size_t b) {
  if (a != b) {
    throw Error(ErrorCode::kLengthMismatch,
                std::to_string(a) + " candidates vs " + std::to_string(b) + " references");
  }
}

using NgramCounts = std::map<std::vector<std::string>, size_t>;

NgramCounts CountNgrams(const std::vector<std::string>& tokens, size_t n) {
  NgramCounts counts;
  for (size_t i = 0; i + n <= tokens.size(); ++i) {
    ++counts[std::vector<std::string>(tokens.begin() + static_cast<long>(i),
                                      tokens.begin() + static_cast<long>(i + n))];
  }
  return counts;
}

// True if hyp[i, i + len) occurs in ref.
bool OccursIn(const std::vector<std::string>& ref, const std::vector<std::string>& hyp, size_t i,
              size_t len) {
  if (len > ref.size()) return false;
  for (size_t r = 0; r + len <= ref.size(); ++r) {
    if (std::equal(hyp.begin() + static_cast<long>(i), hyp.begin() + static_cast<long>(i + len),
                   ref.begin() + static_cast<long>(r))) {
      return true;
    }
  }
  return false;
}

// Moves [i, i + len) so it starts at `dest` in the sequence without it.
std::vector<std::string> Shift(const std::vector<std::string>& v, size_t i, size_t len, size_t dest) {
  std::vector<std::string> block(v.begin() + static_cast<long>(i), v.begin() + static_cast<long>(i + len));
  std::vector<std::string> rest(v.begin(), v.begin() + static_cast<long>(i));
  rest.insert(rest.end(), v.begin() + static_cast<long>(i + len), v.end());
  rest.insert(rest.begin() + static_cast<long>(dest), block.begin(), block.end());
  return rest;
}

}  // namespace

std::vector<std::string> SimilarityTokens(std::string_view text, const TokenizeOptions& opts) {
  const std::string normalized = unicode::Nfc(text);
  if (!opts.char_level) return unicode::SplitWhitespace(normalized);
  std::vector<std::string> out;
  for (const std::string& word : unicode::SplitWhitespace(normalized)) {
    for (char32_t cp : unicode::Codepoints(word)) out.push_back(unicode::FromCodepoint(cp));
  }
  return out;
}

double CorpusBleu(const std::vector<std::string>& cands, const std::vector<std::string>& refs,
                  const TokenizeOptions& opts) {
  CheckLengths(cands.size(), refs.size());
  if (cands.empty()) throw Error(ErrorCode::kInvalidArgument, "empty corpus");
  size_t matches[kMaxOrder] = {};
  size_t totals[kMaxOrder] = {};
  size_t cand_len = 0;
  size_t ref_len = 0;
  for (size_t s = 0; s < cands.size(); ++s) {
    const auto c = SimilarityTokens(cands[s], opts);
    const auto r = SimilarityTokens(refs[s], opts);
    cand_len += c.size();
    ref_len += r.size();
    for (int n = 1; n <= kMaxOrder; ++n) {
      const auto cc = CountNgrams(c, static_cast<size_t>(n));
      const auto rc = CountNgrams(r, static_cast<size_t>(n));
      for (const auto& [gram, count] : cc) {
        totals[n - 1] += count;
        auto it = rc.find(gram);
        if (it != rc.end()) matches[n - 1] += std::min(count, it->second);
      }
    }
  }
  if (cand_len == 0 || matches[0] == 0) return 0.0;
  double log_precision = std::log(static_cast<double>(matches[0]) / static_cast<double>(totals[0]));
  for (int n = 2; n <= kMaxOrder; ++n) {
    log_precision += std::log(static_cast<double>(matches[n - 1] + 1) /
                              static_cast<double>(totals[n - 1] + 1));
  }
  const double bp = cand_len > ref_len
                        ? 1.0
                        : std::exp(1.0 - static_cast<double>(ref_len) / static_cast<double>(cand_len));
  return 100.0 * bp * std::exp(log_precision / kMaxOrder);
}

size_t EditDistance(const std::vector<std::string>& hyp, const std::vector<std::string>& ref) {
  std::vector<size_t> prev(ref.size() + 1);
  std::vector<size_t> cur(ref.size() + 1);
  for (size_t j = 0; j <= ref.size(); ++j) prev[j] = j;
  for (size_t i = 1; i <= hyp.size(); ++i) {
    cur[0] = i;
    for (size_t j = 1; j <= ref.size(); ++j) {
      const size_t sub = prev[j - 1] + (hyp[i - 1] == ref[j - 1] ? 0 : 1);
      cur[j] = std::min({sub, prev[j] + 1, cur[j - 1] + 1});
    }
    std::swap(prev, cur);
  }
  return prev[ref.size()];
}

namespace {

// Minimum of shifts + edit distance over every token order reachable from
// `hyp` with at most `max_shifts` block moves, breadth first.
TerResult ExactTer(const std::vector<std::string>& hyp, const std::vector<std::string>& ref,
                   size_t max_shifts) {
  TerResult best{EditDistance(hyp, ref), 0, ref.size()};
  std::set<std::vector<std::string>> seen = {hyp};
  std::vector<std::vector<std::string>> frontier = {hyp};
  for (size_t depth = 1; depth <= max_shifts && depth < best.edits && !frontier.empty(); ++depth) {
    std::vector<std::vector<std::string>> next;
    for (const auto& cur : frontier) {
      const size_t n = cur.size();
      for (size_t i = 0; i < n; ++i) {
        for (size_t len = 1; i + len <= n; ++len) {
          for (size_t dest = 0; dest + len <= n; ++dest) {
            if (dest == i) continue;
            auto shifted = Shift(cur, i, len, dest);
            if (!seen.insert(shifted).second) continue;
            const size_t edits = depth + EditDistance(shifted, ref);
            if (edits < best.edits) best = {edits, depth, ref.size()};
            next.push_back(std::move(shifted));
          }
        }
      }
    }
    frontier = std::move(next);
  }
  return best;
}

}  // namespace

TerResult SentenceTer(const std::vector<std::string>& hyp, const std::vector<std::string>& ref,
                      size_t max_shifts) {
  if (hyp.size() <= kExactTerMaxTokens) return ExactTer(hyp, ref, max_shifts);
  TerResult result;
  result.ref_len = ref.size();
  std::vector<std::string> cur = hyp;
  size_t distance = EditDistance(cur, ref);
  while (result.shifts < max_shifts && distance > 0) {
    long best_gain = 0;
    std::vector<std::string> best;
    size_t best_distance = distance;
    const size_t n = cur.size();
    for (size_t i = 0; i < n; ++i) {
      for (size_t len = 1; i + len <= n; ++len) {
        if (!OccursIn(ref, cur, i, len)) break;
        for (size_t dest = 0; dest + len <= n; ++dest) {
          if (dest == i) continue;
          auto shifted = Shift(cur, i, len, dest);
          const size_t d = EditDistance(shifted, ref);
          const long gain = static_cast<long>(distance) - static_cast<long>(d) - 1;
          if (gain > best_gain) {
            best_gain = gain;
            best = std::move(shifted);
            best_distance = d;
          }
        }
      }
    }
    if (best_gain <= 0) break;
    cur = std::move(best);
    distance = best_distance;
    ++result.shifts;
  }
  result.edits = distance + result.shifts;
  return result;
}

TerCorpusResult CorpusTer(const std::vector<std::string>& cands, const std::vector<std::string>& refs,
                          const TokenizeOptions& opts) {
  CheckLengths(cands.size(), refs.size());
  TerCorpusResult out;
  double total = 0.0;
  for (size_t s = 0; s < cands.size(); ++s) {
    const auto r = SimilarityTokens(refs[s], opts);
    if (r.empty()) {
      ++out.skipped_empty_refs;
      continue;
    }
    const TerResult t = SentenceTer(SimilarityTokens(cands[s], opts), r);
    total += static_cast<double>(t.edits) / static_cast<double>(t.ref_len);
    ++out.scored;
  }
  if (out.scored > 0) out.ter = 100.0 * total / static_cast<double>(out.scored);
  return out;
}

SimilarityReport Similarity(const std::vector<std::string>& cands,
                            const std::vector<std::string>& refs, const TokenizeOptions& opts) {
  SimilarityReport report;
  report.bleu = CorpusBleu(cands, refs, opts);
  const TerCorpusResult ter = CorpusTer(cands, refs, opts);
  report.ter = ter.ter;
  report.n = cands.size();
  report.skipped_empty_refs = ter.skipped_empty_refs;
  return report;
}

}  // namespace spl
