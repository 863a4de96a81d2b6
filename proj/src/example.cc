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

#include "spl/example.h"

#include "spl/error.h"
#include "spl/unicode.h"

namespace spl {

std::string_view ProvenanceName(Provenance p) {
  switch (p) {
    case Provenance::kSynthesized: return "synthesized";
    case Provenance::kParaphrased: return "paraphrased";
    case Provenance::kMachineTranslated: return "machine_translated";
    case Provenance::kHumanTranslated: return "human_translated";
    case Provenance::kAugmented: return "augmented";
  }
  return "synthesized";
}

std::optional<Provenance> ParseProvenance(std::string_view name) {
  for (auto p : {Provenance::kSynthesized, Provenance::kParaphrased,
                 Provenance::kMachineTranslated, Provenance::kHumanTranslated,
                 Provenance::kAugmented}) {
    if (ProvenanceName(p) == name) return p;
  }
  return std::nullopt;
}

std::string_view SplitName(Split s) {
  switch (s) {
    case Split::kTrain: return "train";
    case Split::kDev: return "dev";
    case Split::kTest: return "test";
  }
  return "train";
}

std::optional<Split> ParseSplit(std::string_view name) {
  if (name == "train") return Split::kTrain;
  if (name == "dev") return Split::kDev;
  if (name == "test") return Split::kTest;
  return std::nullopt;
}

void ValidateSpans(const Example& e) {
  auto fail = [&](size_t i, const std::string& why) {
    throw Error(ErrorCode::kSpanMismatch,
                "example '" + e.id + "' span " + std::to_string(i) + ": " + why);
  };
  size_t prev_end = 0;
  for (size_t i = 0; i < e.spans.size(); ++i) {
    const EntitySpan& s = e.spans[i];
    if (s.start >= s.end) fail(i, "start must be < end");
    if (s.end > e.utterance.size()) fail(i, "end beyond utterance");
    if (s.start < prev_end) fail(i, "spans overlap or are unsorted");
    prev_end = s.end;
    if (e.utterance.compare(s.start, s.end - s.start, s.value) != 0) {
      fail(i, "value '" + s.value + "' != utterance slice '" +
                  e.utterance.substr(s.start, s.end - s.start) + "'");
    }
    if (unicode::Trim(s.value).empty()) fail(i, "blank value");
    if (s.is_placeholder && !IsPlaceholderToken(s.value)) {
      fail(i, "placeholder value '" + s.value + "' is not CLASS_INDEX");
    }
  }
}

std::vector<std::optional<size_t>> LinkParameters(const Example& e) {
  const auto params = ExtractParameters(e.logical_form);
  std::vector<std::optional<size_t>> links(params.size());
  std::vector<bool> claimed(e.spans.size(), false);
  for (size_t p = 0; p < params.size(); ++p) {
    const std::string value = params[p].Value();
    std::optional<size_t> fallback;
    for (size_t s = 0; s < e.spans.size(); ++s) {
      if (e.spans[s].value != value) continue;
      if (!claimed[s]) {
        links[p] = s;
        claimed[s] = true;
        break;
      }
      if (!fallback) fallback = s;
    }
    if (!links[p]) links[p] = fallback;
  }
  return links;
}

std::vector<std::string> AlignmentViolations(const Example& e) {
  std::vector<std::string> out;
  const auto params = ExtractParameters(e.logical_form);
  const auto links = LinkParameters(e);
  for (size_t p = 0; p < params.size(); ++p) {
    if (!links[p]) {
      out.push_back("example '" + e.id + "': parameter " + std::to_string(p) +
                    " '" + params[p].Value() + "' not found among utterance spans");
    }
  }
  return out;
}

std::string MaskedUtterance(const Example& e) {
  std::string out;
  size_t pos = 0;
  for (const EntitySpan& s : e.spans) {
    out.append(e.utterance, pos, s.start - pos);
    out.append(s.param_type);
    pos = s.end;
  }
  out.append(e.utterance, pos, std::string::npos);
  return out;
}

void ReplaceSpanValue(Example& e, size_t index, std::string_view value) {
  EntitySpan& span = e.spans.at(index);
  const long delta = static_cast<long>(value.size()) - static_cast<long>(span.end - span.start);
  e.utterance.replace(span.start, span.end - span.start, value);
  span.value = std::string(value);
  span.end = span.start + value.size();
  for (size_t i = 0; i < e.spans.size(); ++i) {
    if (i == index || e.spans[i].start < span.start) continue;
    e.spans[i].start = static_cast<size_t>(static_cast<long>(e.spans[i].start) + delta);
    e.spans[i].end = static_cast<size_t>(static_cast<long>(e.spans[i].end) + delta);
  }
}

}  // namespace spl
