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

#include "spl/preproc.h"

#include <algorithm>
#include <fstream>

#include <unicode/regex.h>
#include <unicode/unistr.h>

#include "json.hpp"
#include "spl/error.h"
#include "spl/unicode.h"

namespace spl {
namespace {

bool IsAsciiSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

}  // namespace

MarkedUtterance MarkEntities(const Example& e) {
  MarkedUtterance m;
  const std::string& u = e.utterance;
  size_t pos = 0;
  for (size_t i = 0; i < e.spans.size(); ++i) {
    const EntitySpan& s = e.spans[i];
    m.text.append(u, pos, s.start - pos);
    MarkedRegion r;
    r.span = s;
    r.prefix_begin = m.text.size();
    if (!m.text.empty() && !IsAsciiSpace(m.text.back())) m.text.push_back(' ');
    r.quote_open = m.text.size();
    m.text.append("\" ");
    r.value_begin = m.text.size();
    m.text.append(s.value);
    r.value_end = m.text.size();
    m.text.append(" \"");
    r.quote_close = m.text.size() - 1;
    if (s.end < u.size() && !IsAsciiSpace(u[s.end])) {
      m.text.push_back(' ');
      if (i + 1 < e.spans.size() && e.spans[i + 1].start == s.end) {
        m.warnings.push_back("SpanCollision: spans " + std::to_string(i) + " and " +
                             std::to_string(i + 1) + " are adjacent; separated by a space");
      }
    }
    r.suffix_end = m.text.size();
    m.regions.push_back(std::move(r));
    pos = s.end;
  }
  m.text.append(u, pos, std::string::npos);
  return m;
}

std::string Unmark(const MarkedUtterance& m) {
  std::string out;
  size_t pos = 0;
  for (const MarkedRegion& r : m.regions) {
    out.append(m.text, pos, r.prefix_begin - pos);
    out.append(m.text, r.value_begin, r.value_end - r.value_begin);
    pos = r.suffix_end;
  }
  out.append(m.text, pos, std::string::npos);
  return out;
}

bool IsQuoteLike(std::string_view token) {
  static constexpr std::string_view kMarker = "\xE2\x96\x81";  // U+2581
  if (token.substr(0, kMarker.size()) == kMarker) token.remove_prefix(kMarker.size());
  static constexpr std::string_view kQuotes[] = {
      "\"", "\xC2\xAB", "\xC2\xBB",                    // " « »
      "\xE2\x80\x9E", "\xE2\x80\x9C", "\xE2\x80\x9D",  // „ “ ”
      "\xE3\x80\x8C", "\xE3\x80\x8D",                  // 「 」
      "\xE3\x80\x8E", "\xE3\x80\x8F",                  // 『 』
      "\xEF\xBC\x82",                                  // ＂
  };
  return std::find(std::begin(kQuotes), std::end(kQuotes), token) != std::end(kQuotes);
}

struct RulePack::Compiled {
  std::vector<std::unique_ptr<icu::RegexPattern>> pre;
  std::vector<std::unique_ptr<icu::RegexPattern>> post;
};

namespace {

std::unique_ptr<icu::RegexPattern> CompileRule(const Rule& rule) {
  UParseError parse_error;
  UErrorCode status = U_ZERO_ERROR;
  std::unique_ptr<icu::RegexPattern> p(icu::RegexPattern::compile(
      icu::UnicodeString::fromUTF8(rule.pattern), 0, parse_error, status));
  if (U_FAILURE(status)) {
    throw Error(ErrorCode::kConfig, "rule '" + rule.id + "' pattern does not compile: " +
                                        rule.pattern + " (" + u_errorName(status) + ")");
  }
  return p;
}

}  // namespace

RulePack::RulePack(std::string lang, std::vector<Rule> pre, std::vector<Rule> post)
    : lang_(std::move(lang)), pre_(std::move(pre)), post_(std::move(post)) {
  auto compiled = std::make_shared<Compiled>();
  for (const Rule& r : pre_) compiled->pre.push_back(CompileRule(r));
  for (const Rule& r : post_) compiled->post.push_back(CompileRule(r));
  compiled_ = std::move(compiled);
}

std::string RulePack::Apply(std::string_view text, RulePhase phase, RuleTrace* trace) const {
  if (!compiled_) return std::string(text);
  const auto& rules = phase == RulePhase::kPre ? pre_ : post_;
  const auto& patterns = phase == RulePhase::kPre ? compiled_->pre : compiled_->post;
  icu::UnicodeString current = icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  for (size_t i = 0; i < rules.size(); ++i) {
    const Rule& rule = rules[i];
    if (phase == RulePhase::kPost && !rule.requires_rule.empty() &&
        (trace == nullptr || !trace->count(rule.requires_rule))) {
      continue;
    }
    UErrorCode status = U_ZERO_ERROR;
    std::unique_ptr<icu::RegexMatcher> matcher(patterns[i]->matcher(current, status));
    icu::UnicodeString replaced =
        matcher->replaceAll(icu::UnicodeString::fromUTF8(rule.replace), status);
    if (U_FAILURE(status)) {
      throw Error(ErrorCode::kConfig, "rule '" + rule.id + "' failed: " + u_errorName(status));
    }
    if (phase == RulePhase::kPre && trace != nullptr && replaced != current) {
      trace->insert(rule.id);
    }
    current = std::move(replaced);
  }
  std::string out;
  current.toUTF8String(out);
  return out;
}

RulePack LoadRulePack(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open rule pack " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::kConfig, "rule pack " + path + ": " + ex.what());
  }
  auto read_rules = [&](const char* key) {
    std::vector<Rule> rules;
    if (!j.contains(key)) return rules;
    size_t n = 0;
    for (const auto& jr : j[key]) {
      Rule r;
      r.id = jr.value("id", std::string(key) + "-" + std::to_string(n));
      r.pattern = jr.at("pattern").get<std::string>();
      r.replace = jr.value("replace", "");
      r.why = jr.value("why", "");
      r.requires_rule = jr.value("requires", "");
      rules.push_back(std::move(r));
      ++n;
    }
    return rules;
  };
  try {
    return RulePack(j.value("lang", ""), read_rules("pre"), read_rules("post"));
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::kConfig, "rule pack " + path + ": " + ex.what());
  }
}

Example ApplyRulesToExample(const Example& e, const RulePack& pack, RulePhase phase,
                            RuleTrace* trace) {
  if (pack.empty()) return e;
  auto sentinel = [](size_t i) { return unicode::FromCodepoint(0xE000 + static_cast<char32_t>(i)); };
  for (size_t i = 0; i < e.spans.size(); ++i) {
    if (e.utterance.find(sentinel(i)) != std::string::npos) {
      throw Error(ErrorCode::kInvalidArgument, "utterance contains private-use sentinel");
    }
  }
  std::string masked;
  size_t pos = 0;
  for (size_t i = 0; i < e.spans.size(); ++i) {
    masked.append(e.utterance, pos, e.spans[i].start - pos);
    masked.append(sentinel(i));
    pos = e.spans[i].end;
  }
  masked.append(e.utterance, pos, std::string::npos);

  const std::string rewritten = pack.Apply(masked, phase, trace);

  std::vector<std::pair<size_t, size_t>> found;  // (byte position, span index)
  for (size_t i = 0; i < e.spans.size(); ++i) {
    const std::string s = sentinel(i);
    const size_t at = rewritten.find(s);
    if (at == std::string::npos || rewritten.find(s, at + 1) != std::string::npos) {
      throw Error(ErrorCode::kSpanMismatch,
                  "example '" + e.id + "': a rule removed or duplicated span " + std::to_string(i));
    }
    found.emplace_back(at, i);
  }
  std::sort(found.begin(), found.end());
  for (size_t i = 0; i < found.size(); ++i) {
    if (found[i].second != i) {
      throw Error(ErrorCode::kSpanMismatch, "example '" + e.id + "': a rule reordered spans");
    }
  }

  Example out = e;
  out.utterance.clear();
  out.spans.clear();
  pos = 0;
  for (const auto& [at, i] : found) {
    out.utterance.append(rewritten, pos, at - pos);
    EntitySpan s = e.spans[i];
    s.start = out.utterance.size();
    out.utterance.append(s.value);
    s.end = out.utterance.size();
    out.spans.push_back(std::move(s));
    pos = at + sentinel(i).size();
  }
  out.utterance.append(rewritten, pos, std::string::npos);
  return out;
}

std::string LowercaseExceptPlaceholders(std::string_view text) {
  std::string out;
  size_t i = 0;
  while (i < text.size()) {
    if (IsAsciiSpace(text[i])) {
      out.push_back(text[i++]);
      continue;
    }
    size_t j = i;
    while (j < text.size() && !IsAsciiSpace(text[j])) ++j;
    std::string_view token = text.substr(i, j - i);
    out.append(IsPlaceholderToken(token) ? std::string(token) : unicode::ToLower(token));
    i = j;
  }
  return out;
}

}  // namespace spl
