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

#ifndef SPL_ONTOLOGY_H_
#define SPL_ONTOLOGY_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace spl {

struct EntityValue {
  std::string text;
  double weight = 1.0;

  bool operator==(const EntityValue&) const = default;
};

// Localized entity values per parameter type, in insertion order. Values of
// one type are unique after NFC and case folding; no list is empty.
class Ontology {
 public:
  using Entry = std::pair<std::string, std::vector<EntityValue>>;

  Ontology() = default;
  explicit Ontology(std::string lang) : lang_(std::move(lang)) {}

  const std::string& lang() const { return lang_; }
  const std::vector<Entry>& entries() const { return entries_; }

  bool Has(std::string_view param_type) const;
  // Throws Error(kUnknownParamType).
  const std::vector<EntityValue>& Values(std::string_view param_type) const;

  // Appends a type. Throws Error(kEmptyParamType) for an empty list and
  // Error(kInvalidArgument) for a repeated type or an invalid value.
  void Add(std::string param_type, std::vector<EntityValue> values);

  bool operator==(const Ontology&) const = default;

 private:
  std::string lang_;
  std::vector<Entry> entries_;
};

// Loads a .json ontology ({"lang", "entries": {type: [{"text","weight"}]}})
// or a TSV file (type \t value [\t weight]). Values that collide after
// NFC + case folding keep their first occurrence; each dropped duplicate
// appends a DuplicateAfterFold message to `warnings`.
Ontology LoadOntology(const std::string& path, const std::string& lang,
                      std::vector<std::string>* warnings = nullptr);

// Same dedup rules applied to in-memory (type, values) lists.
Ontology BuildOntology(const std::string& lang,
                       const std::vector<Ontology::Entry>& raw,
                       std::vector<std::string>* warnings = nullptr);

void SaveOntologyJson(const Ontology& o, const std::string& path);

struct OntologySplit {
  Ontology train;
  Ontology eval;
  double overlap_fraction = 0.0;
};

// Per type with n values: ceil(overlap * n) shared values, the remainder
// partitioned half/half with the odd one going to train. Which values land
// where is a seeded shuffle; each side keeps the original order. A type with
// a single value is always shared so neither side loses the type.
OntologySplit SplitOntology(const Ontology& o, double overlap, uint64_t seed);

// Number of shared values SplitOntology assigns to a type of size n.
size_t SharedCount(double overlap, size_t n);

struct SampleResult {
  std::vector<EntityValue> values;
  // Set when fewer than k values could be drawn: the number available.
  std::optional<size_t> short_of;
};

// Weight-proportional draws. With `distinct`, draws are without replacement
// (sequential renormalization). Zero-weight values are never drawn.
SampleResult SampleValues(const Ontology& o, std::string_view param_type, size_t k,
                          uint64_t seed, bool distinct);

}  // namespace spl

#endif  // SPL_ONTOLOGY_H_
