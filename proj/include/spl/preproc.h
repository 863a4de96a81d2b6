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

#ifndef SPL_PREPROC_H_
#define SPL_PREPROC_H_

#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "spl/example.h"

namespace spl {

// One entity wrapped in quotes inside a MarkedUtterance. All offsets are
// bytes into MarkedUtterance::text.
struct MarkedRegion {
  size_t quote_open = 0;
  size_t quote_close = 0;
  EntitySpan span;
  // Bytes added by marking around the value: [prefix_begin, value_begin) and
  // [value_end, suffix_end). Removing them recovers the original utterance.
  size_t prefix_begin = 0;
  size_t value_begin = 0;
  size_t value_end = 0;
  size_t suffix_end = 0;
};

struct MarkedUtterance {
  std::string text;
  std::vector<MarkedRegion> regions;
  std::vector<std::string> warnings;
};

// Wraps every span (placeholders included) as `" value "`. A space is added
// outside the quotes when a neighbour is not whitespace; when the neighbour
// is another inserted quote a SpanCollision warning is recorded.
MarkedUtterance MarkEntities(const Example& e);

// Inverse of MarkEntities; byte-exact.
std::string Unmark(const MarkedUtterance& m);

// True for the ASCII quote and the typographic quotes NMT systems substitute
// for it (« » „ “ ” 「 」 『 』 and fullwidth), optionally carrying a
// sentencepiece word-boundary marker.
bool IsQuoteLike(std::string_view token);

struct Rule {
  std::string id;
  std::string pattern;
  std::string replace;
  std::string why;
  // For post rules: only applied when the pre rule with this id fired.
  std::string requires_rule;
};

enum class RulePhase { kPre, kPost };

// Ids of pre rules that changed the text.
using RuleTrace = std::set<std::string>;

// Ordered regex rewrites (ICU syntax, $1-style back-references) applied
// before and after translation for one target language.
class RulePack {
 public:
  RulePack() = default;
  RulePack(std::string lang, std::vector<Rule> pre, std::vector<Rule> post);

  const std::string& lang() const { return lang_; }
  const std::vector<Rule>& pre() const { return pre_; }
  const std::vector<Rule>& post() const { return post_; }
  bool empty() const { return pre_.empty() && post_.empty(); }

  // Applies the phase's rules in order. Pre rules record their id in `trace`
  // when they fire; post rules with requires_rule are skipped unless that id
  // is in `trace`.
  std::string Apply(std::string_view text, RulePhase phase, RuleTrace* trace = nullptr) const;

 private:
  struct Compiled;

  std::string lang_;
  std::vector<Rule> pre_;
  std::vector<Rule> post_;
  std::shared_ptr<const Compiled> compiled_;
};

// {"lang", "pre": [{"id"?, "pattern", "replace", "why", "requires"?}], "post": [...]}
RulePack LoadRulePack(const std::string& path);

// Applies rules to an example's utterance without disturbing its spans: each
// span value is swapped for a private-use sentinel while the rules run, then
// restored and the offsets recomputed. Throws Error(kSpanMismatch) if a rule
// deletes or duplicates a sentinel.
Example ApplyRulesToExample(const Example& e, const RulePack& pack, RulePhase phase,
                            RuleTrace* trace = nullptr);

// Lowercases every whitespace-separated token except entity placeholders
// (TIME_0, DATE_1, ...). Root-locale lowercasing; whitespace is preserved.
std::string LowercaseExceptPlaceholders(std::string_view text);

}  // namespace spl

#endif  // SPL_PREPROC_H_
