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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <tuple>

#include "oracle/align_oracle.h"
#include "spl/error.h"
#include "spl/mock_backend.h"
#include "spl/preproc.h"
#include "spl/rng.h"
#include "spl/tokenize.h"
#include "test_util.h"

namespace spl {
namespace {

using Tokens = std::vector<std::string>;

using Instance = oracle::AlignInstance;
using oracle::RandomAttention;

Instance RandomInstance(Rng& rng, size_t m, size_t n_src, size_t n_tgt, size_t tgt_quotes) {
  return oracle::RandomAlignInstance(rng, m, n_src, n_tgt, tgt_quotes);
}

std::vector<std::tuple<size_t, size_t, size_t, AlignMethod>> Ranges(const std::vector<SpanAlignment>& v) {
  std::vector<std::tuple<size_t, size_t, size_t, AlignMethod>> out;
  for (const auto& a : v) out.emplace_back(a.source_span_index, a.start_tok, a.end_tok, a.method);
  return out;
}

std::string Describe(const Instance& inst) {
  std::string s = "src:";
  for (const auto& t : inst.src_tokens) s += " " + t;
  s += "\ntgt:";
  for (const auto& t : inst.tgt_tokens) s += " " + t;
  s += "\n";
  for (size_t r = 0; r < inst.attention.rows(); ++r) {
    for (size_t c = 0; c < inst.attention.cols(); ++c) s += std::to_string(inst.attention(r, c)) + " ";
    s += "\n";
  }
  return s;
}

AttentionMatrix Identity(size_t n) {
  AttentionMatrix a(n, n);
  for (size_t i = 0; i < n; ++i) a(i, i) = 1.0;
  return a;
}

TEST(FindQuotePairsTest, PairsConsecutiveQuotes) {
  EXPECT_EQ(FindQuotePairs({"a", "\"", "b", "\"", "\xC2\xAB", "c", "\xC2\xBB"}),
            (std::vector<QuotePair>{{1, 3}, {4, 6}}));
  try {
    FindQuotePairs({"\"", "a"});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnbalancedQuotes);
  }
}

TEST(AlignSpansTest, IdentityAttention) {
  const Tokens toks = {"find", "\"", "burgers", "\"", "near", "\"", "Woodland", "Pond", "\""};
  const auto out = AlignSpans(toks, toks, Identity(toks.size()), FindQuotePairs(toks));
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].start_tok, 2u);
  EXPECT_EQ(out[0].end_tok, 3u);
  EXPECT_EQ(out[1].start_tok, 6u);
  EXPECT_EQ(out[1].end_tok, 8u);
  for (const auto& a : out) EXPECT_EQ(a.method, AlignMethod::kQuotesRetained);
  EXPECT_DOUBLE_EQ(out[0].score, 1.0);
}

TEST(AlignSpansTest, AntiDiagonalMirrorsTheSpan) {
  const Tokens src = {"w0", "w1", "\"", "v", "\"", "w5"};
  const TranslationResult r =
      MockBackend(MockConfig::Preset("reversal")).Translate({"en", "it", "w0 w1 \" v \" w5", true, {}});
  // Source quotes at 2 and 4 land on rows 5-4 and 5-2.
  const auto out = AlignSpans(src, r.tgt_tokens, *r.attention, {{2, 4}});
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].start_tok, 2u);
  EXPECT_EQ(out[0].end_tok, 3u);
  EXPECT_EQ(r.tgt_tokens[2], "v");
}

TEST(AlignSpansTest, FallbackWhenQuotesDropped) {
  const Tokens src = {"find", "\"", "burgers", "\"", "now"};
  const Tokens tgt = {"trova", "hamburger", "ora"};
  AttentionMatrix a(3, 5, {0.9, 0.05, 0, 0, 0.05,  //
                           0, 0.4, 0.2, 0.4, 0,    //
                           0.05, 0, 0, 0.05, 0.9});
  const auto out = AlignSpans(src, tgt, a, {{1, 3}});
  EXPECT_EQ(out[0].start_tok, 1u);
  EXPECT_EQ(out[0].end_tok, 2u);
  EXPECT_EQ(out[0].method, AlignMethod::kAttentionFallback);
}

TEST(AlignSpansTest, EmptyRangeBecomesInsertionPoint) {
  const Tokens src = {"a", "\"", "b", "\"", "c"};
  const Tokens tgt = {"x", "\"", "\"", "y"};
  std::vector<std::string> diag;
  const auto out = AlignSpans(src, tgt, AttentionMatrix(4, 5, 0.2), {{1, 3}}, &diag);
  EXPECT_TRUE(out[0].degenerate());
  EXPECT_EQ(out[0].start_tok, 2u);
  ASSERT_EQ(diag.size(), 1u);
  EXPECT_NE(diag[0].find("DegenerateSpan: span 0"), std::string::npos);
}

TEST(AlignSpansTest, CollidingSpansNeedOneTargetTokenEach) {
  const Tokens src = {"\"", "a", "\"", "\"", "b", "\""};
  try {
    AlignSpans(src, {"x"}, AttentionMatrix(1, 6, 1.0 / 6), {{0, 2}, {3, 5}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerateSpan);
  }
}

TEST(AlignSpansTest, ShapeErrors) {
  const Tokens src = {"\"", "a", "\""};
  auto code = [&](const Tokens& tgt, const AttentionMatrix& a, std::vector<QuotePair> q) {
    try {
      AlignSpans(src, tgt, a, q);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kInvalidArgument;
  };
  EXPECT_EQ(code({"x"}, AttentionMatrix(2, 3, 1.0 / 3), {{0, 2}}), ErrorCode::kShapeMismatch);
  EXPECT_EQ(code({"x"}, AttentionMatrix(1, 3, 1.0 / 3), {{0, 1}}), ErrorCode::kShapeMismatch);
  EXPECT_EQ(code({"x"}, AttentionMatrix(1, 3, 1.0 / 3), {{0, 7}}), ErrorCode::kShapeMismatch);
}

TEST(AlignSpansTest, MatchesBruteForceOnQuoteRetainedTargets) {
  Rng rng(101);
  for (int trial = 0; trial < 1000; ++trial) {
    const size_t m = 1 + rng.Below(4);
    const size_t n_src = 2 * m + rng.Below(13 - 2 * m);
    const size_t n_tgt = 2 * m + rng.Below(13 - 2 * m);
    const Instance inst = RandomInstance(rng, m, n_src, n_tgt, 2 * m);
    const auto got = AlignSpans(inst.src_tokens, inst.tgt_tokens, inst.attention, inst.src_quotes);
    const auto want = oracle::BruteForceAlign(inst.src_tokens, inst.tgt_tokens, inst.attention, inst.src_quotes);
    ASSERT_EQ(Ranges(got), Ranges(want)) << "trial " << trial << "\n" << Describe(inst);
  }
}

TEST(AlignSpansTest, MatchesBruteForceWhenQuotesDropped) {
  Rng rng(202);
  for (int trial = 0; trial < 1000; ++trial) {
    const size_t m = 1 + rng.Below(3);
    const size_t max_rows = m == 3 ? 8 : 12;
    const size_t n_src = 2 * m + rng.Below(13 - 2 * m);
    const size_t n_tgt = m + rng.Below(max_rows - m + 1);
    size_t quotes = rng.Below(std::min(n_tgt, 2 * m + 2) + 1);
    if (quotes == 2 * m) quotes = quotes > 0 ? quotes - 1 : 0;
    const Instance inst = RandomInstance(rng, m, n_src, n_tgt, quotes);
    const auto got = AlignSpans(inst.src_tokens, inst.tgt_tokens, inst.attention, inst.src_quotes);
    const auto want = oracle::BruteForceAlign(inst.src_tokens, inst.tgt_tokens, inst.attention, inst.src_quotes);
    ASSERT_EQ(Ranges(got), Ranges(want)) << "trial " << trial << "\n" << Describe(inst);
  }
}

TEST(AlignSpansTest, RangesArePairwiseDisjoint) {
  Rng rng(303);
  for (int trial = 0; trial < 2000; ++trial) {
    const size_t m = 1 + rng.Below(4);
    const size_t n_tgt = m + rng.Below(16);
    const Instance inst = RandomInstance(rng, m, 2 * m + rng.Below(8), n_tgt, rng.Below(n_tgt + 1));
    const auto out = AlignSpans(inst.src_tokens, inst.tgt_tokens, inst.attention, inst.src_quotes);
    ASSERT_EQ(out.size(), m);
    for (size_t i = 0; i < m; ++i) {
      EXPECT_EQ(out[i].source_span_index, i);
      EXPECT_LE(out[i].start_tok, out[i].end_tok);
      EXPECT_LE(out[i].end_tok, n_tgt);
      for (size_t t = out[i].start_tok; t < out[i].end_tok; ++t) {
        if (t == out[i].start_tok || t + 1 == out[i].end_tok) {
          EXPECT_FALSE(IsQuoteLike(inst.tgt_tokens[t]));
        }
      }
      for (size_t j = i + 1; j < m; ++j) {
        const auto& a = out[i];
        const auto& b = out[j];
        const bool disjoint = a.end_tok <= b.start_tok || b.end_tok <= a.start_tok ||
                              a.degenerate() || b.degenerate();
        EXPECT_TRUE(disjoint) << "trial " << trial;
      }
    }
    // Overriding must always be possible.
    std::vector<EntitySpan> values(m);
    for (size_t i = 0; i < m; ++i) values[i].value = "v" + std::to_string(i);
    EXPECT_NO_THROW(OverrideSpans(inst.tgt_tokens, out, values));
  }
}

Instance Reversed(const Instance& inst) {
  Instance r = inst;
  std::reverse(r.tgt_tokens.begin(), r.tgt_tokens.end());
  const size_t n = inst.tgt_tokens.size();
  for (size_t t = 0; t < n; ++t) {
    for (size_t c = 0; c < inst.attention.cols(); ++c) r.attention(n - 1 - t, c) = inst.attention(t, c);
  }
  return r;
}

TEST(AlignSpansTest, EquivariantUnderTargetReversal) {
  Rng rng(404);
  for (int trial = 0; trial < 1000; ++trial) {
    const size_t m = 1 + rng.Below(3);
    const size_t n_tgt = m + 1 + rng.Below(10);
    Instance inst = RandomInstance(rng, m, 2 * m + rng.Below(6), n_tgt, rng.Below(n_tgt + 1));
    inst.attention = RandomAttention(rng, n_tgt, inst.src_tokens.size(), false);
    const auto a = AlignSpans(inst.src_tokens, inst.tgt_tokens, inst.attention, inst.src_quotes);
    const auto b = AlignSpans(inst.src_tokens, Reversed(inst).tgt_tokens, Reversed(inst).attention, inst.src_quotes);
    for (size_t i = 0; i < m; ++i) {
      if (a[i].degenerate()) continue;
      EXPECT_EQ(b[i].start_tok, n_tgt - a[i].end_tok) << "trial " << trial << "\n" << Describe(inst);
      EXPECT_EQ(b[i].end_tok, n_tgt - a[i].start_tok) << "trial " << trial;
    }
  }
}

// Rotating the target left by `k` keeps every range that does not straddle
// the cut contiguous. When the independent argmax intervals are disjoint and
// none straddles the cut, the ranges must rotate along.
TEST(AlignSpansTest, EquivariantUnderTargetRotation) {
  Rng rng(505);
  int checked = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    const size_t m = 1 + rng.Below(2);
    const size_t n = 4 + rng.Below(8);
    Instance inst = RandomInstance(rng, m, 2 * m + rng.Below(4), n, 0);
    inst.attention = RandomAttention(rng, n, inst.src_tokens.size(), false);
    const size_t k = 1 + rng.Below(n - 1);
    auto straddles = [&](size_t lo, size_t end) { return lo < k && end > k; };
    bool skip = false;
    std::vector<std::pair<size_t, size_t>> raw;
    for (const auto& q : inst.src_quotes) {
      size_t r[2];
      const size_t cols[2] = {q.open, q.close};
      for (int j = 0; j < 2; ++j) {
        r[j] = 0;
        for (size_t t = 0; t < n; ++t) {
          if (inst.attention(t, cols[j]) > inst.attention(r[j], cols[j])) r[j] = t;
        }
      }
      raw.emplace_back(std::min(r[0], r[1]), std::max(r[0], r[1]) + 1);
      skip |= straddles(raw.back().first, raw.back().second);
    }
    if (m == 2) skip |= !(raw[0].second <= raw[1].first || raw[1].second <= raw[0].first);
    if (skip) continue;
    const auto a = AlignSpans(inst.src_tokens, inst.tgt_tokens, inst.attention, inst.src_quotes);
    Instance rot = inst;
    for (size_t t = 0; t < n; ++t) {
      const size_t to = (t + n - k) % n;
      rot.tgt_tokens[to] = inst.tgt_tokens[t];
      for (size_t c = 0; c < inst.attention.cols(); ++c) rot.attention(to, c) = inst.attention(t, c);
    }
    const auto b = AlignSpans(rot.src_tokens, rot.tgt_tokens, rot.attention, rot.src_quotes);
    for (size_t i = 0; i < m; ++i) {
      const size_t to = a[i].start_tok >= k ? a[i].start_tok - k : a[i].start_tok + n - k;
      EXPECT_EQ(b[i].start_tok, to) << "trial " << trial << "\n" << Describe(inst);
      EXPECT_EQ(b[i].end_tok - b[i].start_tok, a[i].end_tok - a[i].start_tok) << "trial " << trial;
      ++checked;
    }
  }
  EXPECT_GT(checked, 500);
}

TEST(OverrideSpansTest, SubstitutesTheSourceValue) {
  const Tokens tgt = {"trova", "\"", "hamburger", "\"", "vicino"};
  EntitySpan src{0, 0, "cuisine", "burgers", false};
  const auto r = OverrideSpans(tgt, {{0, 2, 3, AlignMethod::kQuotesRetained, 1.0}}, {src});
  EXPECT_EQ(r.utterance, "trova burgers vicino");
  EXPECT_EQ(r.tokens, (Tokens{"trova", "burgers", "vicino"}));
  ASSERT_EQ(r.spans.size(), 1u);
  EXPECT_EQ(r.utterance.substr(r.spans[0].start, r.spans[0].end - r.spans[0].start), "burgers");
  EXPECT_EQ(r.spans[0].param_type, "cuisine");
}

TEST(OverrideSpansTest, DegenerateSpansInsertInOrder) {
  const Tokens tgt = {"a", "b", "c", "d"};
  const std::vector<EntitySpan> src = {{0, 0, "x", "X1", false}, {0, 0, "y", "Y2", false}};
  const auto r = OverrideSpans(tgt,
                               {{0, 1, 1, AlignMethod::kAttentionFallback, 0},
                                {1, 3, 3, AlignMethod::kAttentionFallback, 0}},
                               src);
  EXPECT_EQ(r.utterance, "a X1 b c Y2 d");
  ASSERT_EQ(r.spans.size(), 2u);
  EXPECT_EQ(r.spans[0].value, "X1");
  EXPECT_EQ(r.spans[0].start, 2u);
  EXPECT_EQ(r.spans[1].start, 9u);
  EXPECT_EQ(r.source_index, (std::vector<size_t>{0, 1}));
}

TEST(OverrideSpansTest, ReorderedSpansReportTheirSource) {
  const Tokens tgt = {"\"", "q", "\"", "e", "\"", "p", "\""};
  const std::vector<EntitySpan> src = {{0, 0, "x", "P", false}, {0, 0, "y", "Q", false}};
  const auto r = OverrideSpans(tgt,
                               {{0, 5, 6, AlignMethod::kQuotesRetained, 0},
                                {1, 1, 2, AlignMethod::kQuotesRetained, 0}},
                               src);
  EXPECT_EQ(r.utterance, "Q e P");
  EXPECT_EQ(r.source_index, (std::vector<size_t>{1, 0}));
}

TEST(OverrideSpansTest, RejectsOverlap) {
  const Tokens tgt = {"a", "b", "c"};
  const std::vector<EntitySpan> src(2);
  EXPECT_THROW(OverrideSpans(tgt,
                             {{0, 0, 2, AlignMethod::kAttentionFallback, 0},
                              {1, 1, 3, AlignMethod::kAttentionFallback, 0}},
                             src),
               Error);
}

TEST(OverrideSpansTest, OutputSpansHoldTheirValues) {
  Rng rng(606);
  for (int trial = 0; trial < 1000; ++trial) {
    const size_t n = 1 + rng.Below(10);
    Tokens tgt;
    for (size_t i = 0; i < n; ++i) {
      const uint64_t kind = rng.Below(6);
      tgt.push_back(kind == 0 ? "\"" : kind == 1 ? "," : kind == 2 ? "\xE4\xB8\xAD" : "w" + std::to_string(i));
    }
    // Random disjoint ranges, possibly empty.
    std::vector<SpanAlignment> al;
    std::vector<EntitySpan> values;
    size_t at = 0;
    while (at <= n && al.size() < 4) {
      const size_t start = at + rng.Below(n - at + 1);
      const size_t end = start + rng.Below(n - start + 1);
      const size_t idx = al.size();
      al.push_back({idx, start, end, AlignMethod::kAttentionFallback, 0});
      values.push_back({0, 0, "t", rng.Below(2) ? "Lago di Como" : "\xE6\x9D\xB1\xE4\xBA\xAC", false});
      at = end + (end == start ? 1 : 0);
      if (rng.Below(3) == 0) break;
    }
    const auto r = OverrideSpans(tgt, al, values);
    ASSERT_EQ(r.spans.size(), al.size());
    for (size_t i = 0; i < r.spans.size(); ++i) {
      const auto& s = r.spans[i];
      ASSERT_LE(s.end, r.utterance.size());
      EXPECT_EQ(r.utterance.substr(s.start, s.end - s.start), s.value) << "trial " << trial;
      EXPECT_EQ(s.value, values[r.source_index[i]].value);
      if (i > 0) {
        EXPECT_LE(r.spans[i - 1].end, s.start);
      }
    }
    for (const auto& t : r.tokens) EXPECT_FALSE(IsQuoteLike(t));
  }
}

TEST(AlignPipelineTest, HamburgerIsOverriddenBackToBurger) {
  MockConfig c = MockConfig::Preset("dictionary");
  c.dictionary = {{"burger", "hamburger"}, {"place", "posto"}, {"near", "vicino a"}, {"Woodland", "laghetto"},
                  {"Pond", "nel bosco"}};
  const MockBackend mock(c);
  const Example e = testing::MakeExample(
      "w", "I am looking for a burger place near Woodland Pond",
      "@restaurant filter servesCuisine =~ \" burger \" && geo == new Location ( \" Woodland Pond \" )",
      {{"burger", "cuisine"}, {"Woodland Pond", "location"}});
  const MarkedUtterance marked = MarkEntities(e);
  const TranslationResult r = Translate(mock, {"en", "it", marked.text, true, {}});
  EXPECT_NE(r.tgt_text.find("hamburger"), std::string::npos);
  EXPECT_NE(r.tgt_text.find("laghetto nel bosco"), std::string::npos);
  const auto al = AlignSpans(r.src_tokens, r.tgt_tokens, *r.attention, FindQuotePairs(r.src_tokens));
  const auto o = OverrideSpans(r.tgt_tokens, al, e.spans);
  EXPECT_EQ(o.utterance, "I am looking for a burger posto vicino a Woodland Pond");
  EXPECT_EQ(o.utterance.find("hamburger"), std::string::npos);
  Example out = e;
  out.utterance = o.utterance;
  out.spans = o.spans;
  EXPECT_NO_THROW(ValidateSpans(out));
  EXPECT_TRUE(AlignmentViolations(out).empty());
}

TEST(DetokenizeTest, Conventions) {
  EXPECT_EQ(Detokenize({"ham", "\xE2\x96\x81place"}), "ham place");
  EXPECT_EQ(Detokenize({"\xE2\x96\x81ham", "bur", "\xE2\x96\x81place"}), "hambur place");
  EXPECT_EQ(Detokenize({"\xE4\xB8\xAD", "\xE5\x9B\xBD"}), "\xE4\xB8\xAD\xE5\x9B\xBD");
  EXPECT_EQ(Detokenize({"ham", "##bur", "##ger", "place"}), "hamburger place");
  EXPECT_EQ(Detokenize({"a", "b"}), "a b");
  EXPECT_EQ(Detokenize({}), "");
}

TEST(DetokenizeTest, InvertsMockTokenizer) {
  Rng rng(707);
  for (int trial = 0; trial < 1000; ++trial) {
    std::string s;
    const size_t words = 1 + rng.Below(8);
    for (size_t w = 0; w < words; ++w) {
      if (w) s += ' ';
      const size_t len = 1 + rng.Below(11);
      for (size_t i = 0; i < len; ++i) s += static_cast<char>('!' + rng.Below(94));
    }
    EXPECT_EQ(Detokenize(MockSubwordTokenize(s, 1 + rng.Below(5))), s) << s;
  }
}

}  // namespace
}  // namespace spl
