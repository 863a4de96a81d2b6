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

#ifndef SPL_METRICS_H_
#define SPL_METRICS_H_

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spl/example.h"
#include "spl/logical_form.h"

namespace spl {

// Token-for-token equality.
bool ExactMatch(const LogicalForm& pred, const LogicalForm& gold);

// Equality after every quoted region collapses to one mask token and every
// placeholder to its class (TIME_0 -> TIME). Parameter types are kept.
bool StructureMatch(const LogicalForm& pred, const LogicalForm& gold);

// The token sequence StructureMatch compares.
std::vector<std::string> StructureTokens(const LogicalForm& lf);

struct ExampleScore {
  std::string id;
  bool em = false;
  bool sm = false;
};

struct EvalReport {
  double em = 0.0;
  double sm = 0.0;
  size_t n = 0;
  size_t missing = 0;
  size_t unparseable = 0;
  std::vector<ExampleScore> per_example;
};

// Predictions keyed by id, as raw logical-form strings. A prediction that
// fails to parse scores 0/0 and is counted; so does a missing one. Gold
// order defines per_example order.
EvalReport EvaluateRun(const std::map<std::string, std::string>& predictions, const Dataset& golds);

// Reads {"id", "logical_form"} JSONL; extra fields are ignored.
std::map<std::string, std::string> ReadPredictions(const std::string& path);

void WriteEvalCsv(const EvalReport& report, std::ostream& out);

}  // namespace spl

#endif  // SPL_METRICS_H_
