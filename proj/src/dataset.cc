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

#include "spl/dataset.h"

#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_set>

#include "spl/error.h"
#include "spl/unicode.h"

namespace spl {
namespace {

std::string RequireString(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_string()) {
    throw Error(ErrorCode::kMalformedRecord, std::string("missing string field '") + key + "'");
  }
  return j[key].get<std::string>();
}

}  // namespace

Example ExampleFromJson(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::kMalformedRecord, "record is not an object");
  Example e;
  e.id = RequireString(j, "id");
  e.lang = RequireString(j, "lang");
  e.utterance = unicode::Nfc(RequireString(j, "utterance"));
  e.logical_form = ParseLogicalForm(unicode::Nfc(RequireString(j, "logical_form")));
  const std::string prov = j.contains("provenance") ? RequireString(j, "provenance") : "synthesized";
  auto p = ParseProvenance(prov);
  if (!p) throw Error(ErrorCode::kMalformedRecord, "unknown provenance '" + prov + "'");
  e.provenance = *p;
  if (j.contains("spans")) {
    if (!j["spans"].is_array()) throw Error(ErrorCode::kMalformedRecord, "spans is not an array");
    for (const auto& js : j["spans"]) {
      if (!js.is_object() || !js.contains("start") || !js.contains("end") ||
          !js["start"].is_number_unsigned() || !js["end"].is_number_unsigned()) {
        throw Error(ErrorCode::kMalformedRecord, "span needs non-negative integer start/end");
      }
      EntitySpan s;
      s.start = js["start"].get<size_t>();
      s.end = js["end"].get<size_t>();
      s.param_type = RequireString(js, "param_type");
      s.value = unicode::Nfc(RequireString(js, "value"));
      s.is_placeholder = js.value("is_placeholder", false);
      e.spans.push_back(std::move(s));
    }
  }
  ValidateSpans(e);
  return e;
}

nlohmann::ordered_json ExampleToJson(const Example& e) {
  nlohmann::ordered_json j;
  j["id"] = e.id;
  j["lang"] = e.lang;
  j["utterance"] = e.utterance;
  j["logical_form"] = e.logical_form.Serialize();
  j["spans"] = nlohmann::ordered_json::array();
  for (const EntitySpan& s : e.spans) {
    nlohmann::ordered_json js;
    js["start"] = s.start;
    js["end"] = s.end;
    js["param_type"] = s.param_type;
    js["value"] = s.value;
    js["is_placeholder"] = s.is_placeholder;
    j["spans"].push_back(std::move(js));
  }
  j["provenance"] = std::string(ProvenanceName(e.provenance));
  return j;
}

std::string ExampleToLine(const Example& e) { return ExampleToJson(e).dump(); }

Dataset ReadDataset(std::istream& in, Split split) {
  Dataset d;
  d.split = split;
  std::unordered_set<std::string> ids;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (unicode::Trim(line).empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& ex) {
      throw Error(ErrorCode::kMalformedRecord,
                  "line " + std::to_string(line_no) + ": " + ex.what());
    }
    std::string id = j.is_object() && j.contains("id") && j["id"].is_string()
                         ? j["id"].get<std::string>()
                         : std::string("?");
    try {
      Example e = ExampleFromJson(j);
      if (!ids.insert(e.id).second) {
        throw Error(ErrorCode::kDuplicateId, "duplicate id");
      }
      d.examples.push_back(std::move(e));
    } catch (const Error& ex) {
      throw Error(ex.code(), "line " + std::to_string(line_no) + " id '" + id + "': " + ex.what());
    }
  }
  return d;
}

Dataset ReadDataset(const std::string& path, Split split) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  return ReadDataset(in, split);
}

void WriteDataset(const Dataset& d, std::ostream& out) {
  for (const Example& e : d.examples) out << ExampleToLine(e) << '\n';
}

void WriteDataset(const Dataset& d, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  WriteDataset(d, out);
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path);
}

}  // namespace spl
