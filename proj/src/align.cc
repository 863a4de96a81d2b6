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

#include "spl/align.h"

#include <algorithm>
#include <limits>

#include "spl/preproc.h"
#include "spl/tokenize.h"
#include "spl/unicode.h"

namespace spl {
namespace {

constexpr double kTieEps = 1e-12;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr size_t kMaxSpans = 16;

struct Interval {
  size_t lo = 0;  // closed
  size_t hi = 0;
};

bool Disjoint(const std::vector<Interval>& v) {
  for (size_t i = 0; i < v.size(); ++i) {
    for (size_t j = i + 1; j < v.size(); ++j) {
      if (!(v[i].hi < v[j].lo || v[j].hi < v[i].lo)) return false;
    }
  }
  return true;
}

size_t ArgmaxColumn(const AttentionMatrix& a, size_t col, const std::vector<size_t>& rows) {
  size_t best = rows.front();
  for (size_t r : rows) {
    if (a(r, col) > a(best, col)) best = r;
  }
  return best;
}

double PairScore(const AttentionMatrix& a, size_t l, size_t r, const QuotePair& q) {
  return std::max(a(l, q.open) + a(r, q.close), a(l, q.close) + a(r, q.open));
}

// Assigns each span a distinct slot (pair of consecutive target quotes)
// maximizing the summed pair score; the lexicographically smallest
// assignment wins ties.
std::vector<size_t> BestSlotAssignment(const AttentionMatrix& a, const std::vector<size_t>& tq,
                                       const std::vector<QuotePair>& src) {
  const size_t m = src.size();
  const size_t full = (size_t{1} << m);
  auto w = [&](size_t i, size_t j) { return PairScore(a, tq[2 * j], tq[2 * j + 1], src[i]); };
  // best[i][mask]: best total for spans i..m-1 with `mask` slots taken.
  std::vector<std::vector<double>> best(m + 1, std::vector<double>(full, kNegInf));
  for (size_t mask = 0; mask < full; ++mask) best[m][mask] = 0.0;
  for (size_t i = m; i-- > 0;) {
    for (size_t mask = 0; mask < full; ++mask) {
      if (static_cast<size_t>(__builtin_popcountll(mask)) != i) continue;
      for (size_t j = 0; j < m; ++j) {
        if (mask & (size_t{1} << j)) continue;
        best[i][mask] = std::max(best[i][mask], w(i, j) + best[i + 1][mask | (size_t{1} << j)]);
      }
    }
  }
  std::vector<size_t> slot(m);
  size_t mask = 0;
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < m; ++j) {
      if (mask & (size_t{1} << j)) continue;
      if (w(i, j) + best[i + 1][mask | (size_t{1} << j)] >= best[i][mask] - kTieEps) {
        slot[i] = j;
        mask |= size_t{1} << j;
        break;
      }
    }
  }
  return slot;
}

// Picks pairwise-disjoint closed intervals, one per span, maximizing the
// summed pair score.
std::vector<Interval> BestDisjointIntervals(const AttentionMatrix& a,
                                            const std::vector<QuotePair>& src) {
  const size_t m = src.size();
  const size_t t = a.rows();
  if (t < m) {
    throw Error(ErrorCode::kDegenerateSpan, "fewer target tokens than spans");
  }
  const size_t full = size_t{1} << m;
  // f[pos][mask]: best total placing the spans outside `mask` in rows >= pos.
  std::vector<std::vector<double>> f(t + 1, std::vector<double>(full, kNegInf));
  f[t][full - 1] = 0.0;
  for (size_t pos = t; pos-- > 0;) {
    for (size_t mask = 0; mask < full; ++mask) {
      double v = f[pos + 1][mask];
      for (size_t i = 0; i < m; ++i) {
        if (mask & (size_t{1} << i)) continue;
        for (size_t r = pos; r < t; ++r) {
          const double rest = f[r + 1][mask | (size_t{1} << i)];
          if (rest == kNegInf) continue;
          v = std::max(v, PairScore(a, pos, r, src[i]) + rest);
        }
      }
      f[pos][mask] = v;
    }
  }
  std::vector<Interval> out(m);
  size_t mask = 0;
  size_t pos = 0;
  while (mask != full - 1) {
    const double target = f[pos][mask];
    bool placed = false;
    for (size_t i = 0; i < m && !placed; ++i) {
      if (mask & (size_t{1} << i)) continue;
      for (size_t r = pos; r < t; ++r) {
        const double rest = f[r + 1][mask | (size_t{1} << i)];
        if (rest == kNegInf) continue;
        if (PairScore(a, pos, r, src[i]) + rest >= target - kTieEps) {
          out[i] = {pos, r};
          mask |= size_t{1} << i;
          pos = r + 1;
          placed = true;
          break;
        }
      }
    }
    if (!placed) ++pos;
  }
  return out;
}

double RangeScore(const AttentionMatrix& a, size_t begin, size_t end, const QuotePair& q) {
  if (begin >= end) return 0.0;
  double total = 0.0;
  for (size_t t = begin; t < end; ++t) {
    for (size_t s = q.open + 1; s < q.close; ++s) total += a(t, s);
  }
  return total / static_cast<double>(end - begin);
}

void CheckInputs(const std::vector<std::string>& src_tokens,
                 const std::vector<std::string>& tgt_tokens, const AttentionMatrix& attention,
                 const std::vector<QuotePair>& src_quotes) {
  if (attention.rows() != tgt_tokens.size() || attention.cols() != src_tokens.size()) {
    throw Error(ErrorCode::kShapeMismatch,
                "attention " + std::to_string(attention.rows()) + "x" +
                    std::to_string(attention.cols()) + " vs tokens " +
                    std::to_string(tgt_tokens.size()) + "x" + std::to_string(src_tokens.size()));
  }
  if (src_quotes.size() > kMaxSpans) {
    throw Error(ErrorCode::kShapeMismatch, "more than 16 spans in one sentence");
  }
  size_t prev = 0;
  for (size_t i = 0; i < src_quotes.size(); ++i) {
    const QuotePair& q = src_quotes[i];
    if (q.open >= q.close || q.close >= src_tokens.size() || (i > 0 && q.open <= prev) ||
        !IsQuoteLike(src_tokens[q.open]) || !IsQuoteLike(src_tokens[q.close])) {
      throw Error(ErrorCode::kShapeMismatch, "invalid source quote pair " + std::to_string(i));
    }
    prev = q.close;
  }
}

}  // namespace

std::string_view AlignMethodName(AlignMethod m) {
  return m == AlignMethod::kQuotesRetained ? "quotes_retained" : "attention_fallback";
}

std::vector<QuotePair> FindQuotePairs(const std::vector<std::string>& tokens) {
  std::vector<size_t> quotes;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (IsQuoteLike(tokens[i])) quotes.push_back(i);
  }
  if (quotes.size() % 2 != 0) {
    throw Error(ErrorCode::kUnbalancedQuotes, "odd number of quote tokens");
  }
  std::vector<QuotePair> pairs;
  for (size_t i = 0; i < quotes.size(); i += 2) pairs.push_back({quotes[i], quotes[i + 1]});
  return pairs;
}

std::vector<SpanAlignment> AlignSpans(const std::vector<std::string>& src_tokens,
                                      const std::vector<std::string>& tgt_tokens,
                                      const AttentionMatrix& attention,
                                      const std::vector<QuotePair>& src_quotes,
                                      std::vector<std::string>* diagnostics) {
  CheckInputs(src_tokens, tgt_tokens, attention, src_quotes);
  const size_t m = src_quotes.size();
  std::vector<SpanAlignment> out(m);
  if (m == 0) return out;

  std::vector<size_t> tq;
  for (size_t t = 0; t < tgt_tokens.size(); ++t) {
    if (IsQuoteLike(tgt_tokens[t])) tq.push_back(t);
  }

  auto report = [&](size_t i) {
    if (diagnostics) {
      diagnostics->push_back("DegenerateSpan: span " + std::to_string(i) +
                             " resolved to an empty range at token " +
                             std::to_string(out[i].start_tok));
    }
  };

  if (tq.size() == 2 * m) {
    std::vector<size_t> slot(m);
    std::vector<bool> used(m, false);
    bool valid = true;
    for (size_t i = 0; i < m && valid; ++i) {
      const size_t a = ArgmaxColumn(attention, src_quotes[i].open, tq);
      const size_t b = ArgmaxColumn(attention, src_quotes[i].close, tq);
      const size_t lo = std::min(a, b);
      const size_t hi = std::max(a, b);
      const size_t k = static_cast<size_t>(std::find(tq.begin(), tq.end(), lo) - tq.begin());
      if (k % 2 != 0 || tq[k + 1] != hi || used[k / 2]) {
        valid = false;
      } else {
        slot[i] = k / 2;
        used[k / 2] = true;
      }
    }
    if (!valid) slot = BestSlotAssignment(attention, tq, src_quotes);
    for (size_t i = 0; i < m; ++i) {
      SpanAlignment& s = out[i];
      s.source_span_index = i;
      s.start_tok = tq[2 * slot[i]] + 1;
      s.end_tok = tq[2 * slot[i] + 1];
      s.method = AlignMethod::kQuotesRetained;
      s.score = RangeScore(attention, s.start_tok, s.end_tok, src_quotes[i]);
      if (s.degenerate()) report(i);
    }
    return out;
  }

  std::vector<size_t> all_rows(tgt_tokens.size());
  for (size_t t = 0; t < all_rows.size(); ++t) all_rows[t] = t;
  std::vector<Interval> raw(m);
  for (size_t i = 0; i < m; ++i) {
    const size_t a = ArgmaxColumn(attention, src_quotes[i].open, all_rows);
    const size_t b = ArgmaxColumn(attention, src_quotes[i].close, all_rows);
    raw[i] = {std::min(a, b), std::max(a, b)};
  }
  if (!Disjoint(raw)) raw = BestDisjointIntervals(attention, src_quotes);

  for (size_t i = 0; i < m; ++i) {
    const auto [lo, hi] = raw[i];
    size_t b = lo;
    size_t e = hi + 1;
    while (b < e && IsQuoteLike(tgt_tokens[b])) ++b;
    while (e > b && IsQuoteLike(tgt_tokens[e - 1])) --e;
    SpanAlignment& s = out[i];
    s.source_span_index = i;
    if (b == e) {
      b = e = std::min(lo + (IsQuoteLike(tgt_tokens[lo]) ? 1 : 0), hi + 1);
    }
    s.start_tok = b;
    s.end_tok = e;
    s.method = lo < hi && IsQuoteLike(tgt_tokens[lo]) && IsQuoteLike(tgt_tokens[hi])
                   ? AlignMethod::kQuotesRetained
                   : AlignMethod::kAttentionFallback;
    s.score = RangeScore(attention, b, e, src_quotes[i]);
    if (s.degenerate()) report(i);
  }
  return out;
}

OverrideResult OverrideSpans(const std::vector<std::string>& tgt_tokens,
                             const std::vector<SpanAlignment>& alignments,
                             const std::vector<EntitySpan>& source_spans) {
  std::vector<const SpanAlignment*> order;
  for (const SpanAlignment& a : alignments) {
    if (a.source_span_index >= source_spans.size() || a.start_tok > a.end_tok ||
        a.end_tok > tgt_tokens.size()) {
      throw Error(ErrorCode::kInvalidArgument, "alignment out of range");
    }
    order.push_back(&a);
  }
  std::stable_sort(order.begin(), order.end(), [](const SpanAlignment* x, const SpanAlignment* y) {
    if (x->start_tok != y->start_tok) return x->start_tok < y->start_tok;
    return x->end_tok < y->end_tok;
  });
  for (size_t i = 1; i < order.size(); ++i) {
    if (order[i]->start_tok < order[i - 1]->end_tok) {
      throw Error(ErrorCode::kInvalidArgument, "alignments overlap");
    }
  }

  struct Segment {
    std::string text;
    std::optional<size_t> source;  // set for value segments
  };
  std::vector<Segment> segments;
  OverrideResult result;
  std::vector<std::string> run;
  auto flush = [&] {
    if (run.empty()) return;
    segments.push_back({Detokenize(run), std::nullopt});
    run.clear();
  };

  size_t next = 0;
  for (size_t t = 0; t <= tgt_tokens.size(); ++t) {
    bool jumped = false;
    while (next < order.size() && order[next]->start_tok == t) {
      flush();
      const SpanAlignment& a = *order[next];
      const std::string& value = source_spans[a.source_span_index].value;
      segments.push_back({value, a.source_span_index});
      for (auto& w : unicode::SplitWhitespace(value)) result.tokens.push_back(std::move(w));
      ++next;
      if (a.end_tok > t) {
        t = a.end_tok - 1;
        jumped = true;
        break;
      }
    }
    if (jumped || t == tgt_tokens.size()) continue;
    if (IsQuoteLike(tgt_tokens[t])) continue;
    run.push_back(tgt_tokens[t]);
    result.tokens.push_back(tgt_tokens[t]);
  }
  flush();

  for (const Segment& seg : segments) {
    if (seg.text.empty()) continue;
    if (NeedsSpaceBetween(result.utterance, seg.text)) result.utterance.push_back(' ');
    if (seg.source) {
      EntitySpan span = source_spans[*seg.source];
      span.start = result.utterance.size();
      span.end = span.start + seg.text.size();
      result.spans.push_back(std::move(span));
      result.source_index.push_back(*seg.source);
    }
    result.utterance.append(seg.text);
  }
  return result;
}

}  // namespace spl
