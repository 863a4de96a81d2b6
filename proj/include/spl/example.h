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

#ifndef SPL_EXAMPLE_H_
#define SPL_EXAMPLE_H_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spl/logical_form.h"

namespace spl {

enum class Provenance {
  kSynthesized,
  kParaphrased,
  kMachineTranslated,
  kHumanTranslated,
  kAugmented,
};

std::string_view ProvenanceName(Provenance p);
std::optional<Provenance> ParseProvenance(std::string_view name);

// A typed parameter occurrence in an utterance. Offsets are bytes into the
// NFC-normalized UTF-8 utterance, half-open.
struct EntitySpan {
  size_t start = 0;
  size_t end = 0;
  std::string param_type;
  std::string value;
  bool is_placeholder = false;

  bool operator==(const EntitySpan&) const = default;
};

struct Example {
  std::string id;
  std::string lang;
  std::string utterance;
  LogicalForm logical_form;
  std::vector<EntitySpan> spans;
  Provenance provenance = Provenance::kSynthesized;

  bool operator==(const Example&) const = default;
};

enum class Split { kTrain, kDev, kTest };

std::string_view SplitName(Split s);
std::optional<Split> ParseSplit(std::string_view name);

struct Dataset {
  std::vector<Example> examples;
  Split split = Split::kTrain;
  std::map<std::string, std::string> meta;

  size_t size() const { return examples.size(); }

  bool operator==(const Dataset&) const = default;
};

// Checks the per-record structural invariants: span bounds, ordering and
// non-overlap, span value equal to the utterance slice, non-blank values and
// the placeholder pattern. Throws Error(kSpanMismatch) naming the example id.
void ValidateSpans(const Example& e);

// For each logical-form parameter (in ExtractParameters order), the index of
// the span carrying its value, or nullopt when no span has that value. Each
// parameter takes the first span with an equal value that no earlier
// parameter claimed, falling back to an already-claimed one.
std::vector<std::optional<size_t>> LinkParameters(const Example& e);

// The parameter/utterance alignment invariant: every logical-form parameter
// value is carried by a span (so it occurs verbatim in the utterance).
// Returns one message per violation; empty means the example is aligned.
std::vector<std::string> AlignmentViolations(const Example& e);

// Utterance with every span value replaced by its param_type; the key used
// for duplicate removal.
std::string MaskedUtterance(const Example& e);

// Replaces span `index` with `value`, shifting later offsets. Does not touch
// the logical form.
void ReplaceSpanValue(Example& e, size_t index, std::string_view value);

}  // namespace spl

#endif  // SPL_EXAMPLE_H_
