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

#include "spl/metrics.h"

#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "oracle/bleu_oracle.h"
#include "oracle/ter_oracle.h"
#include "spl/error.h"
#include "spl/rng.h"
#include "spl/similarity.h"
#include "test_util.h"

namespace spl {
namespace {

using Tokens = std::vector<std::string>;

LogicalForm Lf(const std::string& s) { return ParseLogicalForm(s); }

TEST(ExactMatchTest, Examples) {
  EXPECT_TRUE(ExactMatch(Lf("@r filter c == \" pizza \""), Lf("@r filter c == \" pizza \"")));
  EXPECT_FALSE(ExactMatch(Lf("@r filter c == \" pizza \""), Lf("@r filter c == \" sushi \"")));
  EXPECT_FALSE(ExactMatch(Lf("@r filter c == \" pizza \" ;"), Lf("@r filter c == \" pizza \"")));
}

TEST(StructureMatchTest, Examples) {
  EXPECT_TRUE(StructureMatch(Lf("@r filter c == \" pizza \""), Lf("@r filter c == \" hot dog \"")));
  EXPECT_FALSE(StructureMatch(Lf("@r filter c == \" pizza \""), Lf("@r filter d == \" pizza \"")));
  EXPECT_TRUE(StructureMatch(Lf("t == TIME_0"), Lf("t == TIME_1")));
  EXPECT_FALSE(StructureMatch(Lf("t == TIME_0"), Lf("t == DATE_0")));
  EXPECT_EQ(StructureTokens(Lf("a == \" x y \" and TIME_3")).size(), 5u);
}

// Random logical forms over a tiny vocabulary so that matches are common.
std::string RandomLf(Rng& rng) {
  static const char* kWords[] = {"@r", "filter", "==", "and", "c", "d"};
  static const char* kValues[] = {"pizza", "sushi", "hot dog"};
  std::string s;
  const size_t n = 1 + rng.Below(4);
  for (size_t i = 0; i < n; ++i) {
    if (i) s += ' ';
    const uint64_t kind = rng.Below(8);
    if (kind == 0) {
      s += std::string("\" ") + kValues[rng.Below(3)] + " \"";
    } else if (kind == 1) {
      s += "TIME_" + std::to_string(rng.Below(2));
    } else {
      s += kWords[rng.Below(6)];
    }
  }
  return s;
}

TEST(MatchPropertyTest, ExactImpliesStructure) {
  Rng rng(11);
  size_t em = 0;
  size_t sm = 0;
  for (int i = 0; i < 10000; ++i) {
    const LogicalForm a = Lf(RandomLf(rng));
    const LogicalForm b = rng.Below(4) == 0 ? a : Lf(RandomLf(rng));
    const bool e = ExactMatch(a, b);
    const bool s = StructureMatch(a, b);
    if (e) {
      EXPECT_TRUE(s) << a.Serialize() << " | " << b.Serialize();
    }
    em += e;
    sm += s;
  }
  EXPECT_LE(em, sm);
  EXPECT_GT(em, 0u);
  EXPECT_GT(sm, em);
}

// Published (em, sm) accuracy pairs for the localized parsers across ten
// languages and two domains; every pair satisfies em <= sm.
TEST(MatchPropertyTest, PublishedResultsRespectOrdering) {
  const std::vector<std::vector<double>> rows = {
      {22.7, 26.1, 51.6, 59.8, 51.3, 60.8, 53.8, 61.7, 54.9, 61.7, 60.8, 67.2, 61.4, 67.0},
      {51.3, 54.2, 70.7, 73.6, 61.0, 66.1, 70.0, 73.3, 65.9, 68.0, 77.1, 80.2, 68.6, 71.2},
      {53.4, 55.3, 69.0, 72.3, 61.6, 68.2, 73.1, 76.2, 65.3, 70.8, 76.3, 80.9, 67.0, 72.0},
      {51.4, 53.1, 63.5, 65.0, 58.9, 61.0, 70.3, 71.7, 58.9, 61.8, 77.0, 78.9, 63.5, 65.4},
      {50.8, 54.4, 57.9, 59.1, 62.5, 66.7, 64.2, 65.4, 60.3, 65.0, 69.3, 70.7, 68.4, 71.3},
      {53.4, 56.8, 66.9, 72.6, 60.8, 66.7, 66.4, 71.2, 64.4, 69.9, 69.8, 75.8, 65.7, 71.8},
      {42.3, 44.6, 71.0, 72.0, 63.6, 65.0, 71.3, 72.1, 59.5, 61.4, 73.1, 78.2, 67.6, 69.3},
      {49.8, 52.3, 58.7, 62.1, 54.9, 59.3, 60.0, 63.4, 57.6, 60.6, 67.7, 71.6, 64.8, 68.4},
      {55.7, 59.5, 69.0, 72.5, 60.2, 69.1, 73.0, 76.9, 64.0, 73.3, 77.8, 79.6, 69.3, 74.4},
      {29.2, 32.4, 55.9, 60.4, 52.8, 58.1, 54.6, 59.8, 51.1, 56.1, 56.7, 67.2, 62.9, 67.4},
      {34.6, 36.1, 66.7, 69.0, 67.0, 70.0, 60.8, 63.7, 67.7, 71.6, 75.9, 77.4, 74.6, 79.1},
      {52.3, 55.7, 69.4, 71.9, 63.0, 65.6, 74.4, 76.3, 65.3, 68.9, 82.6, 84.8, 77.1, 80.7},
      {58.2, 61.3, 68.6, 72.1, 67.6, 74.0, 70.7, 75.0, 67.4, 75.2, 82.1, 84.7, 77.5, 80.5},
      {57.8, 62.2, 63.0, 64.5, 61.8, 62.4, 69.0, 70.0, 65.5, 66.2, 78.0, 78.5, 74.2, 75.0},
      {53.8, 57.1, 63.0, 65.4, 58.6, 60.3, 63.4, 65.1, 59.2, 60.5, 72.9, 74.9, 68.1, 69.7},
      {56.1, 59.5, 52.1, 53.3, 48.3, 50.6, 53.3, 54.6, 52.9, 55.3, 70.3, 72.0, 69.0, 70.5},
      {49.6, 52.5, 45.1, 47.0, 41.3, 43.6, 48.9, 51.1, 48.7, 50.5, 75.2, 76.5, 70.5, 72.2},
      {49.6, 54.0, 50.9, 52.7, 51.5, 52.7, 55.7, 60.8, 56.5, 60.7, 65.3, 66.1, 64.3, 65.1},
      {57.8, 61.6, 59.6, 61.3, 57.8, 60.1, 58.7, 60.3, 56.1, 58.6, 80.3, 81.3, 74.6, 76.5},
      {42.8, 45.5, 56.6, 58.8, 46.2, 51.1, 64.1, 65.6, 57.3, 61.6, 69.8, 72.1, 65.3, 69.7},
  };
  for (const auto& row : rows) {
    for (size_t i = 0; i + 1 < row.size(); i += 2) EXPECT_LE(row[i], row[i + 1]);
  }
  EXPECT_DOUBLE_EQ(rows[0][12], 61.4);
  EXPECT_DOUBLE_EQ(rows[0][13], 67.0);
}

Dataset Golds(const std::vector<std::pair<std::string, std::string>>& items) {
  Dataset d;
  for (const auto& [id, lf] : items) d.examples.push_back(testing::MakeExample(id, "u", lf, {}));
  return d;
}

TEST(EvaluateRunTest, AllCorrect) {
  const Dataset g = Golds({{"a", "x == \" 1 \""}, {"b", "y"}});
  const EvalReport r = EvaluateRun({{"a", "x == \" 1 \""}, {"b", "y"}}, g);
  EXPECT_EQ(r.em, 1.0);
  EXPECT_EQ(r.sm, 1.0);
  EXPECT_EQ(r.n, 2u);
}

TEST(EvaluateRunTest, ParameterErrorsOnlyHurtExactMatch) {
  const Dataset g = Golds({{"a", "x == \" 1 \""}, {"b", "x == \" 2 \""}, {"c", "y"}, {"d", "z == \" q \""}});
  const EvalReport r =
      EvaluateRun({{"a", "x == \" 1 \""}, {"b", "x == \" 3 \""}, {"c", "y"}, {"d", "z == \" r \""}}, g);
  EXPECT_DOUBLE_EQ(r.em, 0.5);
  EXPECT_DOUBLE_EQ(r.sm, 1.0);
  ASSERT_EQ(r.per_example.size(), 4u);
  EXPECT_EQ(r.per_example[1].id, "b");
  EXPECT_FALSE(r.per_example[1].em);
  EXPECT_TRUE(r.per_example[1].sm);
}

TEST(EvaluateRunTest, MissingAndUnparseableScoreZero) {
  const Dataset g = Golds({{"a", "x"}, {"b", "y"}, {"c", "z"}});
  const EvalReport r = EvaluateRun({{"a", "x"}, {"b", "y \" unterminated"}}, g);
  EXPECT_EQ(r.missing, 1u);
  EXPECT_EQ(r.unparseable, 1u);
  EXPECT_DOUBLE_EQ(r.em, 1.0 / 3);
  std::ostringstream csv;
  WriteEvalCsv(r, csv);
  EXPECT_EQ(csv.str(), "id,em,sm\na,1,1\nb,0,0\nc,0,0\n");
}

TEST(EvaluateRunTest, ReadsPredictions) {
  testing::TempDir dir("pred");
  {
    std::ofstream out(dir.File("p.jsonl"));
    out << R"({"id": "a", "logical_form": "x == \" 1 \"", "score": 3})" << "\n";
  }
  const auto preds = ReadPredictions(dir.File("p.jsonl"));
  ASSERT_EQ(preds.size(), 1u);
  EXPECT_EQ(preds.at("a"), "x == \" 1 \"");
}

TEST(BleuTest, IdenticalCorpusScoresHundred) {
  const std::vector<std::string> x = {"the cat sat on the mat", "a b", "hello"};
  EXPECT_NEAR(CorpusBleu(x, x), 100.0, 1e-9);
}

TEST(BleuTest, RepeatedUnigramIsClipped) {
  // Clipped precisions 1/4, then smoothed (0+1)/(3+1), (0+1)/(2+1), (0+1)/(1+1);
  // the candidate is longer than the reference so there is no penalty.
  const double expected = 100.0 * std::pow(0.25 * 0.25 * (1.0 / 3) * 0.5, 0.25);
  EXPECT_NEAR(CorpusBleu({"the the the the"}, {"the cat"}), expected, 1e-9);
  EXPECT_NEAR(expected, 31.95, 0.01);
}

TEST(BleuTest, MatchesBruteForceOnGuideSentence) {
  const std::string cand = "it is a guide to action which ensures that the military always obeys";
  const std::string ref = "it is a guide to action that ensures that the military will forever heed";
  const double want = oracle::BruteForceBleu({SimilarityTokens(cand)}, {SimilarityTokens(ref)});
  EXPECT_NEAR(CorpusBleu({cand}, {ref}), want, 1e-9);
  EXPECT_GT(want, 0.0);
  EXPECT_LT(want, 100.0);
}

std::string RandomSentence(Rng& rng, size_t max_len, size_t vocab) {
  std::string s;
  const size_t n = 1 + rng.Below(max_len);
  for (size_t i = 0; i < n; ++i) {
    if (i) s += ' ';
    s += "w" + std::to_string(rng.Below(vocab));
  }
  return s;
}

TEST(BleuTest, MatchesBruteForceOnRandomCorpora) {
  Rng rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::string> cands;
    std::vector<std::string> refs;
    std::vector<Tokens> ct;
    std::vector<Tokens> rt;
    const size_t n = 1 + rng.Below(6);
    for (size_t i = 0; i < n; ++i) {
      cands.push_back(RandomSentence(rng, 10, 5));
      refs.push_back(RandomSentence(rng, 10, 5));
      ct.push_back(SimilarityTokens(cands.back()));
      rt.push_back(SimilarityTokens(refs.back()));
    }
    EXPECT_NEAR(CorpusBleu(cands, refs), oracle::BruteForceBleu(ct, rt), 1e-9) << "trial " << trial;
  }
}

TEST(BleuTest, InvariantUnderCorpusReordering) {
  Rng rng(22);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::string> c;
    std::vector<std::string> r;
    for (int i = 0; i < 6; ++i) {
      c.push_back(RandomSentence(rng, 8, 4));
      r.push_back(RandomSentence(rng, 8, 4));
    }
    const double before = CorpusBleu(c, r);
    std::vector<size_t> order = {0, 1, 2, 3, 4, 5};
    rng.Shuffle(order);
    std::vector<std::string> c2;
    std::vector<std::string> r2;
    for (size_t i : order) {
      c2.push_back(c[i]);
      r2.push_back(r[i]);
    }
    EXPECT_NEAR(CorpusBleu(c2, r2), before, 1e-9);
    EXPECT_GE(before, 0.0);
    EXPECT_LE(before, 100.0);
  }
}

TEST(BleuTest, Errors) {
  try {
    CorpusBleu({"a"}, {"a", "b"});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kLengthMismatch);
  }
  EXPECT_THROW(CorpusBleu({}, {}), Error);
  EXPECT_EQ(CorpusBleu({"x y"}, {"a b"}), 0.0);
}

TEST(BleuTest, CharacterLevel) {
  const TokenizeOptions chars{true};
  EXPECT_EQ(SimilarityTokens("\xE4\xB8\xAD\xE5\x9B\xBD \xE4\xBA\xBA", chars).size(), 3u);
  EXPECT_NEAR(CorpusBleu({"\xE4\xB8\xAD\xE5\x9B\xBD\xE4\xBA\xBA"}, {"\xE4\xB8\xAD\xE5\x9B\xBD \xE4\xBA\xBA"}, chars),
              100.0, 1e-9);
}

TEST(TerTest, Examples) {
  EXPECT_EQ(SentenceTer({"a", "b", "c"}, {"a", "b", "c"}).edits, 0u);
  EXPECT_DOUBLE_EQ(CorpusTer({"a b x d"}, {"a b c d"}).ter, 25.0);
  const TerResult swap = SentenceTer({"a", "b", "c", "d"}, {"c", "d", "a", "b"});
  EXPECT_EQ(swap.edits, 1u);
  EXPECT_EQ(swap.shifts, 1u);
  EXPECT_DOUBLE_EQ(CorpusTer({"a b c d"}, {"c d a b"}).ter, 25.0);
  EXPECT_EQ(oracle::ExhaustiveTerEdits({"a", "b", "c", "d"}, {"c", "d", "a", "b"}, kMaxTerShifts), 1u);
}

TEST(TerTest, IdenticalCorpusScoresZero) {
  Rng rng(31);
  std::vector<std::string> x;
  for (int i = 0; i < 20; ++i) x.push_back(RandomSentence(rng, 12, 6));
  EXPECT_EQ(CorpusTer(x, x).ter, 0.0);
}

TEST(TerTest, EmptyReferencesAreSkipped) {
  const TerCorpusResult r = CorpusTer({"a b", "x"}, {"a c", "  "});
  EXPECT_EQ(r.scored, 1u);
  EXPECT_EQ(r.skipped_empty_refs, 1u);
  EXPECT_DOUBLE_EQ(r.ter, 50.0);
  try {
    CorpusTer({"a"}, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kLengthMismatch);
  }
}

TEST(TerTest, EditDistanceMatchesReference) {
  Rng rng(32);
  for (int trial = 0; trial < 500; ++trial) {
    const Tokens a = SimilarityTokens(RandomSentence(rng, 9, 4));
    const Tokens b = SimilarityTokens(RandomSentence(rng, 9, 4));
    EXPECT_EQ(EditDistance(a, b), oracle::LevenshteinReference(a, b));
  }
}

TEST(TerTest, ShiftsNeverHurt) {
  Rng rng(33);
  for (int trial = 0; trial < 2000; ++trial) {
    const Tokens h = SimilarityTokens(RandomSentence(rng, 14, 5));
    const Tokens r = SimilarityTokens(RandomSentence(rng, 14, 5));
    const TerResult t = SentenceTer(h, r);
    EXPECT_LE(t.edits, EditDistance(h, r));
    EXPECT_LE(t.shifts, kMaxTerShifts);
    EXPECT_EQ(t.ref_len, r.size());
  }
}

TEST(TerTest, MatchesExhaustiveSearchOnShortSentences) {
  Rng rng(34);
  for (int trial = 0; trial < 300; ++trial) {
    const Tokens h = SimilarityTokens(RandomSentence(rng, 6, 4));
    const Tokens r = SimilarityTokens(RandomSentence(rng, 6, 4));
    EXPECT_EQ(SentenceTer(h, r).edits, oracle::ExhaustiveTerEdits(h, r, kMaxTerShifts))
        << "trial " << trial;
  }
}

}  // namespace
}  // namespace spl
