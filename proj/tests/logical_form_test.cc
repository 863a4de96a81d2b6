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

#include "spl/logical_form.h"

#include <gtest/gtest.h>

#include "spl/error.h"
#include "spl/rng.h"

namespace spl {
namespace {

using Tokens = std::vector<std::string>;

TEST(ParseLogicalFormTest, QuotedRegion) {
  const LogicalForm lf = ParseLogicalForm("@restaurant filter cuisine == \" italian food \"");
  EXPECT_EQ(lf.tokens(), (Tokens{"@restaurant", "filter", "cuisine", "==", "\"", "italian", "food", "\""}));
  const auto params = ExtractParameters(lf);
  ASSERT_EQ(params.size(), 1u);
  EXPECT_EQ(params[0].value_tokens, (Tokens{"italian", "food"}));
}

TEST(ParseLogicalFormTest, PlaceholderIsOneToken) {
  const LogicalForm lf = ParseLogicalForm("@hotel filter checkin == TIME_0");
  EXPECT_EQ(lf.size(), 5u);
  const auto params = ExtractParameters(lf);
  ASSERT_EQ(params.size(), 1u);
  EXPECT_EQ(params[0].kind, ParameterRef::Kind::kPlaceholder);
  EXPECT_EQ(params[0].Value(), "TIME_0");
}

TEST(ParseLogicalFormTest, Errors) {
  try {
    ParseLogicalForm("a \" b");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnbalancedQuotes);
  }
  try {
    ParseLogicalForm("   ");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyInput);
  }
}

TEST(ExtractParametersTest, RegionTokenRange) {
  const auto params = ExtractParameters(ParseLogicalForm("@restaurant filter cuisine == \" italian food \""));
  ASSERT_EQ(params.size(), 1u);
  EXPECT_EQ(params[0].begin, 4u);
  EXPECT_EQ(params[0].end, 8u);
}

TEST(ExtractParametersTest, NoParameters) {
  EXPECT_TRUE(ExtractParameters(ParseLogicalForm("@restaurant filter true")).empty());
}

TEST(ExtractParametersTest, RegionsInOrder) {
  const auto params = ExtractParameters(ParseLogicalForm("p == \" x \" and q == \" y \""));
  ASSERT_EQ(params.size(), 2u);
  EXPECT_EQ(params[0].Value(), "x");
  EXPECT_EQ(params[0].begin, 2u);
  EXPECT_EQ(params[1].Value(), "y");
  EXPECT_EQ(params[1].begin, 8u);
  EXPECT_EQ(params[0].param_index, 0u);
  EXPECT_EQ(params[1].param_index, 1u);
}

TEST(PlaceholderTest, Pattern) {
  EXPECT_TRUE(IsPlaceholderToken("TIME_0"));
  EXPECT_TRUE(IsPlaceholderToken("PHONE_12"));
  EXPECT_FALSE(IsPlaceholderToken("TIME_"));
  EXPECT_FALSE(IsPlaceholderToken("time_0"));
  EXPECT_FALSE(IsPlaceholderToken("PARAM_0"));
  EXPECT_FALSE(IsPlaceholderToken("DATE_1x"));
  EXPECT_EQ(PlaceholderClass("DATE_3"), "DATE");
  EXPECT_EQ(PlaceholderClass("word"), "word");
}

TEST(ReplaceTokensTest, SwapsValue) {
  const LogicalForm lf = ParseLogicalForm("a == \" x y \" and b");
  const LogicalForm out = ReplaceTokens(lf, 3, 5, {"z"});
  EXPECT_EQ(out.Serialize(), "a == \" z \" and b");
}

// Random valid logical forms survive serialize -> parse unchanged.
TEST(LogicalFormPropertyTest, RoundTrip) {
  const Tokens vocab = {"@restaurant", "filter", "==", "and", "geo", "cuisine", "TIME_0", "NUMBER_2", "x", "é", "中"};
  for (uint64_t seed = 0; seed < 500; ++seed) {
    Rng rng(seed);
    Tokens tokens;
    const size_t n = 1 + rng.Below(12);
    for (size_t i = 0; i < n; ++i) {
      if (rng.Below(4) == 0) {
        tokens.push_back("\"");
        const size_t inner = 1 + rng.Below(3);
        for (size_t j = 0; j < inner; ++j) tokens.push_back(vocab[rng.Below(vocab.size())]);
        tokens.push_back("\"");
      } else {
        tokens.push_back(vocab[rng.Below(vocab.size())]);
      }
    }
    const LogicalForm lf(tokens);
    EXPECT_EQ(ParseLogicalForm(lf.Serialize()), lf);
  }
}

}  // namespace
}  // namespace spl
