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

#include <fstream>
#include <ostream>

#include "json.hpp"
#include "spl/error.h"
#include "spl/unicode.h"

namespace spl {
namespace {

constexpr const char* kMaskToken = "\"<param>\"";

}  // namespace

bool ExactMatch(const LogicalForm& pred, const LogicalForm& gold) {
  return pred.tokens() == gold.tokens();
}

std::vector<std::string> StructureTokens(const LogicalForm& lf) {
  std::vector<std::string> out;
  const auto& tokens = lf.tokens();
  size_t next = 0;
  for (const ParameterRef& p : ExtractParameters(lf)) {
    out.insert(out.end(), tokens.begin() + static_cast<long>(next),
               tokens.begin() + static_cast<long>(p.begin));
    out.push_back(p.kind == ParameterRef::Kind::kQuoted ? std::string(kMaskToken)
                                                        : PlaceholderClass(p.value_tokens[0]));
    next = p.end;
  }
  out.insert(out.end(), tokens.begin() + static_cast<long>(next), tokens.end());
  return out;
}

bool StructureMatch(const LogicalForm& pred, const LogicalForm& gold) {
  return StructureTokens(pred) == StructureTokens(gold);
}

EvalReport EvaluateRun(const std::map<std::string, std::string>& predictions, const Dataset& golds) {
  EvalReport report;
  size_t em = 0;
  size_t sm = 0;
  for (const Example& gold : golds.examples) {
    ExampleScore score{gold.id, false, false};
    auto it = predictions.find(gold.id);
    if (it == predictions.end()) {
      ++report.missing;
    } else {
      try {
        const LogicalForm pred = ParseLogicalForm(unicode::Nfc(it->second));
        score.em = ExactMatch(pred, gold.logical_form);
        score.sm = StructureMatch(pred, gold.logical_form);
      } catch (const Error&) {
        ++report.unparseable;
      }
    }
    em += score.em;
    sm += score.sm;
    report.per_example.push_back(std::move(score));
  }
  report.n = golds.size();
  if (report.n > 0) {
    report.em = static_cast<double>(em) / static_cast<double>(report.n);
    report.sm = static_cast<double>(sm) / static_cast<double>(report.n);
  }
  return report;
}

std::map<std::string, std::string> ReadPredictions(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open predictions " + path);
  std::map<std::string, std::string> preds;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (unicode::Trim(line).empty()) continue;
    try {
      auto j = nlohmann::json::parse(line);
      preds[j.at("id").get<std::string>()] = j.value("logical_form", "");
    } catch (const nlohmann::json::exception& ex) {
      throw Error(ErrorCode::kMalformedRecord,
                  "predictions line " + std::to_string(line_no) + ": " + ex.what());
    }
  }
  return preds;
}

void WriteEvalCsv(const EvalReport& report, std::ostream& out) {
  out << "id,em,sm\n";
  for (const ExampleScore& s : report.per_example) {
    std::string id = s.id;
    if (id.find_first_of(",\"\n") != std::string::npos) {
      std::string quoted = "\"";
      for (char c : id) {
        if (c == '"') quoted.push_back('"');
        quoted.push_back(c);
      }
      id = quoted + "\"";
    }
    out << id << ',' << s.em << ',' << s.sm << '\n';
  }
}

}  // namespace spl
