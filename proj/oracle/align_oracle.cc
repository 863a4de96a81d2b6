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

#include "oracle/align_oracle.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "spl/preproc.h"

namespace spl::oracle {
namespace {

constexpr double kEps = 1e-12;

struct Range {
  size_t lo;
  size_t hi;  // closed
};

size_t Argmax(const AttentionMatrix& a, size_t col, const std::vector<size_t>& rows) {
  size_t best = rows[0];
  double v = a(best, col);
  for (size_t r : rows) {
    if (a(r, col) > v) {
      v = a(r, col);
      best = r;
    }
  }
  return best;
}

double Score(const AttentionMatrix& a, size_t x, size_t y, const QuotePair& q) {
  const double straight = a(x, q.open) + a(y, q.close);
  const double crossed = a(x, q.close) + a(y, q.open);
  return straight > crossed ? straight : crossed;
}

// Every way to give span i an interval that misses the ones already taken.
void Enumerate(const AttentionMatrix& a, const std::vector<QuotePair>& q, size_t i,
               std::vector<Range>& cur, double total, double& best_total,
               std::vector<Range>& best, bool& found) {
  if (i == q.size()) {
    // Among (near-)ties prefer the assignment whose intervals, read in row
    // order, start earliest with the lowest span index first.
    if (!found || total > best_total + kEps) {
      best_total = total;
      best = cur;
      found = true;
    } else if (total > best_total - kEps) {
      auto key = [](const std::vector<Range>& v) {
        std::vector<std::pair<size_t, size_t>> k;
        for (size_t s = 0; s < v.size(); ++s) k.push_back({v[s].lo, s});
        std::sort(k.begin(), k.end());
        std::vector<size_t> flat;
        for (auto [lo, s] : k) {
          flat.push_back(lo);
          flat.push_back(s);
          flat.push_back(v[s].hi);
        }
        return flat;
      };
      if (key(cur) < key(best)) best = cur;
    }
    return;
  }
  for (size_t lo = 0; lo < a.rows(); ++lo) {
    for (size_t hi = lo; hi < a.rows(); ++hi) {
      bool clash = false;
      for (size_t j = 0; j < i; ++j) {
        if (!(hi < cur[j].lo || cur[j].hi < lo)) clash = true;
      }
      if (clash) continue;
      cur[i] = {lo, hi};
      Enumerate(a, q, i + 1, cur, total + Score(a, lo, hi, q[i]), best_total, best, found);
    }
  }
}

}  // namespace

std::vector<SpanAlignment> BruteForceAlign(const std::vector<std::string>& src_tokens,
                                           const std::vector<std::string>& tgt_tokens,
                                           const AttentionMatrix& attention,
                                           const std::vector<QuotePair>& src_quotes) {
  (void)src_tokens;
  const size_t m = src_quotes.size();
  std::vector<SpanAlignment> out(m);
  if (m == 0) return out;
  std::vector<size_t> quotes;
  for (size_t t = 0; t < tgt_tokens.size(); ++t) {
    if (IsQuoteLike(tgt_tokens[t])) quotes.push_back(t);
  }

  if (quotes.size() == 2 * m) {
    // Independent argmax per source quote; accept it if it picks a distinct
    // slot for every span.
    std::vector<size_t> perm(m);
    std::vector<bool> taken(m, false);
    bool ok = true;
    for (size_t i = 0; i < m; ++i) {
      size_t x = Argmax(attention, src_quotes[i].open, quotes);
      size_t y = Argmax(attention, src_quotes[i].close, quotes);
      if (x > y) std::swap(x, y);
      size_t slot = m;
      for (size_t j = 0; j < m; ++j) {
        if (quotes[2 * j] == x && quotes[2 * j + 1] == y) slot = j;
      }
      if (slot == m || taken[slot]) {
        ok = false;
        break;
      }
      taken[slot] = true;
      perm[i] = slot;
    }
    if (!ok) {
      std::vector<size_t> p(m);
      std::iota(p.begin(), p.end(), 0);
      double best_total = -1.0;
      do {
        double total = 0.0;
        for (size_t i = 0; i < m; ++i) {
          total += Score(attention, quotes[2 * p[i]], quotes[2 * p[i] + 1], src_quotes[i]);
        }
        if (total > best_total + kEps) {
          best_total = total;
          perm = p;
        }
      } while (std::next_permutation(p.begin(), p.end()));
    }
    for (size_t i = 0; i < m; ++i) {
      out[i].source_span_index = i;
      out[i].start_tok = quotes[2 * perm[i]] + 1;
      out[i].end_tok = quotes[2 * perm[i] + 1];
      out[i].method = AlignMethod::kQuotesRetained;
    }
    return out;
  }

  std::vector<size_t> rows(tgt_tokens.size());
  std::iota(rows.begin(), rows.end(), 0);
  std::vector<Range> chosen(m);
  for (size_t i = 0; i < m; ++i) {
    const size_t x = Argmax(attention, src_quotes[i].open, rows);
    const size_t y = Argmax(attention, src_quotes[i].close, rows);
    chosen[i] = {std::min(x, y), std::max(x, y)};
  }
  bool overlap = false;
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = i + 1; j < m; ++j) {
      if (!(chosen[i].hi < chosen[j].lo || chosen[j].hi < chosen[i].lo)) overlap = true;
    }
  }
  if (overlap) {
    std::vector<Range> cur(m);
    double best_total = 0.0;
    bool found = false;
    Enumerate(attention, src_quotes, 0, cur, 0.0, best_total, chosen, found);
  }

  for (size_t i = 0; i < m; ++i) {
    const Range r = chosen[i];
    // Trim quote-like tokens off both ends of the closed interval.
    size_t first = r.lo;
    size_t last_plus = r.hi + 1;
    while (first < last_plus && IsQuoteLike(tgt_tokens[first])) ++first;
    while (last_plus > first && IsQuoteLike(tgt_tokens[last_plus - 1])) --last_plus;
    if (first == last_plus) {
      first = IsQuoteLike(tgt_tokens[r.lo]) ? r.lo + 1 : r.lo;
      if (first > r.hi + 1) first = r.hi + 1;
      last_plus = first;
    }
    out[i].source_span_index = i;
    out[i].start_tok = first;
    out[i].end_tok = last_plus;
    const bool both_quotes = r.lo < r.hi && IsQuoteLike(tgt_tokens[r.lo]) && IsQuoteLike(tgt_tokens[r.hi]);
    out[i].method = both_quotes ? AlignMethod::kQuotesRetained : AlignMethod::kAttentionFallback;
  }
  return out;
}

AttentionMatrix RandomAttention(Rng& rng, size_t rows, size_t cols, bool coarse) {
  AttentionMatrix a(rows, cols);
  for (size_t r = 0; r < rows; ++r) {
    for (size_t c = 0; c < cols; ++c) {
      a(r, c) = coarse ? static_cast<double>(rng.Below(3)) : std::pow(rng.Uniform(), 3.0);
    }
    a(r, rng.Below(cols)) += 0.01;
  }
  a.NormalizeRows();
  return a;
}

AlignInstance RandomAlignInstance(Rng& rng, size_t m, size_t n_src, size_t n_tgt, size_t tgt_quotes) {
  AlignInstance inst;
  std::vector<size_t> positions(n_src);
  std::iota(positions.begin(), positions.end(), 0);
  rng.Shuffle(positions);
  positions.resize(2 * m);
  std::sort(positions.begin(), positions.end());
  std::vector<bool> is_quote(n_src, false);
  for (size_t p : positions) is_quote[p] = true;
  for (size_t i = 0; i < n_src; ++i) inst.src_tokens.push_back(is_quote[i] ? "\"" : "s" + std::to_string(i));
  for (size_t i = 0; i < m; ++i) inst.src_quotes.push_back({positions[2 * i], positions[2 * i + 1]});

  std::vector<size_t> order(n_tgt);
  std::iota(order.begin(), order.end(), 0);
  rng.Shuffle(order);
  std::vector<bool> quoted(n_tgt, false);
  for (size_t i = 0; i < tgt_quotes; ++i) quoted[order[i]] = true;
  for (size_t i = 0; i < n_tgt; ++i) {
    inst.tgt_tokens.push_back(quoted[i] ? (rng.Below(4) == 0 ? "\xC2\xAB" : "\"") : "t" + std::to_string(i));
  }
  inst.attention = RandomAttention(rng, n_tgt, n_src, rng.Below(4) == 0);
  return inst;
}

}  // namespace spl::oracle
