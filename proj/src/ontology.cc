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

#include "spl/ontology.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "json.hpp"
#include "spl/error.h"
#include "spl/rng.h"
#include "spl/unicode.h"

namespace spl {

bool Ontology::Has(std::string_view param_type) const {
  return std::any_of(entries_.begin(), entries_.end(),
                     [&](const Entry& e) { return e.first == param_type; });
}

const std::vector<EntityValue>& Ontology::Values(std::string_view param_type) const {
  for (const Entry& e : entries_) {
    if (e.first == param_type) return e.second;
  }
  throw Error(ErrorCode::kUnknownParamType, "no values for '" + std::string(param_type) + "'");
}

void Ontology::Add(std::string param_type, std::vector<EntityValue> values) {
  if (values.empty()) {
    throw Error(ErrorCode::kEmptyParamType, "'" + param_type + "' has no values");
  }
  if (Has(param_type)) {
    throw Error(ErrorCode::kInvalidArgument, "duplicate param type '" + param_type + "'");
  }
  for (const EntityValue& v : values) {
    const auto words = unicode::SplitWhitespace(v.text);
    if (words.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "blank value in '" + param_type + "'");
    }
    // A bare quote token would end the quoted region in a logical form.
    if (std::find(words.begin(), words.end(), "\"") != words.end()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "value '" + v.text + "' contains a standalone quote token");
    }
    if (!(v.weight >= 0.0) || !std::isfinite(v.weight)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "weight of '" + v.text + "' must be finite and >= 0");
    }
  }
  entries_.emplace_back(std::move(param_type), std::move(values));
}

Ontology BuildOntology(const std::string& lang, const std::vector<Ontology::Entry>& raw,
                       std::vector<std::string>* warnings) {
  Ontology o(lang);
  for (const auto& [type, values] : raw) {
    std::vector<EntityValue> kept;
    std::unordered_set<std::string> seen;
    for (const EntityValue& v : values) {
      EntityValue nv{unicode::Join(unicode::SplitWhitespace(unicode::Nfc(v.text)), " "), v.weight};
      if (!seen.insert(unicode::CaseFold(nv.text)).second) {
        if (warnings) {
          warnings->push_back("DuplicateAfterFold: '" + nv.text + "' in '" + type +
                              "' dropped, first occurrence kept");
        }
        continue;
      }
      kept.push_back(std::move(nv));
    }
    o.Add(type, std::move(kept));
  }
  return o;
}

namespace {

std::vector<Ontology::Entry> ReadJsonEntries(std::istream& in, std::string* lang) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(in);
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::kMalformedRecord, std::string("ontology JSON: ") + ex.what());
  }
  if (j.contains("lang") && j["lang"].is_string()) *lang = j["lang"].get<std::string>();
  if (!j.contains("entries") || !j["entries"].is_object()) {
    throw Error(ErrorCode::kMalformedRecord, "ontology JSON needs an 'entries' object");
  }
  std::vector<Ontology::Entry> raw;
  for (const auto& [type, list] : j["entries"].items()) {
    if (!list.is_array()) {
      throw Error(ErrorCode::kMalformedRecord, "entries['" + type + "'] is not a list");
    }
    std::vector<EntityValue> values;
    for (const auto& item : list) {
      if (item.is_string()) {
        values.push_back({item.get<std::string>(), 1.0});
      } else if (item.is_object() && item.contains("text")) {
        values.push_back({item["text"].get<std::string>(), item.value("weight", 1.0)});
      } else {
        throw Error(ErrorCode::kMalformedRecord, "bad value in '" + type + "'");
      }
    }
    raw.emplace_back(type, std::move(values));
  }
  return raw;
}

std::vector<Ontology::Entry> ReadTsvEntries(std::istream& in) {
  std::vector<Ontology::Entry> raw;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (unicode::Trim(line).empty() || line[0] == '#') continue;
    std::vector<std::string> cols;
    std::stringstream ss(line);
    std::string col;
    while (std::getline(ss, col, '\t')) cols.push_back(col);
    if (cols.empty() || unicode::Trim(cols[0]).empty()) {
      throw Error(ErrorCode::kMalformedRecord, "ontology line " + std::to_string(line_no));
    }
    const std::string type = unicode::Trim(cols[0]);
    auto it = std::find_if(raw.begin(), raw.end(),
                           [&](const Ontology::Entry& e) { return e.first == type; });
    if (it == raw.end()) {
      raw.emplace_back(type, std::vector<EntityValue>{});
      it = raw.end() - 1;
    }
    // A type with an empty value column declares the type without values.
    if (cols.size() < 2 || unicode::Trim(cols[1]).empty()) continue;
    double weight = 1.0;
    if (cols.size() >= 3 && !unicode::Trim(cols[2]).empty()) {
      try {
        weight = std::stod(cols[2]);
      } catch (const std::exception&) {
        throw Error(ErrorCode::kMalformedRecord,
                    "ontology line " + std::to_string(line_no) + ": bad weight");
      }
    }
    it->second.push_back({cols[1], weight});
  }
  return raw;
}

}  // namespace

Ontology LoadOntology(const std::string& path, const std::string& lang,
                      std::vector<std::string>* warnings) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open ontology " + path);
  const bool is_json = path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
  std::string file_lang = lang;
  auto raw = is_json ? ReadJsonEntries(in, &file_lang) : ReadTsvEntries(in);
  // The caller's language wins over the file's when given.
  return BuildOntology(lang.empty() ? file_lang : lang, raw, warnings);
}

void SaveOntologyJson(const Ontology& o, const std::string& path) {
  nlohmann::ordered_json j;
  j["lang"] = o.lang();
  j["entries"] = nlohmann::ordered_json::object();
  for (const auto& [type, values] : o.entries()) {
    auto list = nlohmann::ordered_json::array();
    for (const EntityValue& v : values) list.push_back({{"text", v.text}, {"weight", v.weight}});
    j["entries"][type] = std::move(list);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  out << j.dump(2) << '\n';
}

size_t SharedCount(double overlap, size_t n) {
  if (n == 0) return 0;
  if (n == 1) return 1;
  // 0.45 * 100 is 45.000000000000007 in binary; ceil must still give 45.
  const double raw = overlap * static_cast<double>(n);
  auto shared = static_cast<size_t>(std::ceil(raw - 1e-9));
  return std::min(shared, n);
}

OntologySplit SplitOntology(const Ontology& o, double overlap, uint64_t seed) {
  if (!(overlap >= 0.0 && overlap <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "overlap must be in [0, 1]");
  }
  OntologySplit split{Ontology(o.lang()), Ontology(o.lang()), overlap};
  for (const auto& [type, values] : o.entries()) {
    const size_t n = values.size();
    std::vector<size_t> order(n);
    for (size_t i = 0; i < n; ++i) order[i] = i;
    Rng rng(MixSeed(seed, type));
    rng.Shuffle(order);

    const size_t shared = SharedCount(overlap, n);
    const size_t rest = n - shared;
    const size_t train_only = rest - rest / 2;
    // 0 = shared, 1 = train only, 2 = eval only
    std::vector<int> side(n, 0);
    for (size_t r = shared; r < n; ++r) side[order[r]] = (r < shared + train_only) ? 1 : 2;

    std::vector<EntityValue> train, eval;
    for (size_t i = 0; i < n; ++i) {
      if (side[i] != 2) train.push_back(values[i]);
      if (side[i] != 1) eval.push_back(values[i]);
    }
    split.train.Add(type, std::move(train));
    if (!eval.empty()) split.eval.Add(type, std::move(eval));
  }
  return split;
}

SampleResult SampleValues(const Ontology& o, std::string_view param_type, size_t k,
                          uint64_t seed, bool distinct) {
  const std::vector<EntityValue>& values = o.Values(param_type);
  SampleResult result;
  std::vector<size_t> pool;
  for (size_t i = 0; i < values.size(); ++i) {
    if (values[i].weight > 0.0) pool.push_back(i);
  }
  Rng rng(MixSeed(seed, param_type));
  while (result.values.size() < k && !pool.empty()) {
    double total = 0.0;
    for (size_t i : pool) total += values[i].weight;
    const double target = rng.Uniform() * total;
    double acc = 0.0;
    size_t pick = pool.size() - 1;
    for (size_t j = 0; j < pool.size(); ++j) {
      acc += values[pool[j]].weight;
      if (target < acc) {
        pick = j;
        break;
      }
    }
    result.values.push_back(values[pool[pick]]);
    if (distinct) pool.erase(pool.begin() + static_cast<long>(pick));
  }
  if (result.values.size() < k) result.short_of = result.values.size();
  return result;
}

}  // namespace spl
