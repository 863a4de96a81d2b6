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

#ifndef SPL_DATASET_H_
#define SPL_DATASET_H_

#include <iosfwd>
#include <string>
#include <string_view>

#include "json.hpp"
#include "spl/example.h"

namespace spl {

// JSONL record <-> Example. Text fields are NFC-normalized on ingest; span
// offsets refer to the normalized utterance.
Example ExampleFromJson(const nlohmann::json& j);
nlohmann::ordered_json ExampleToJson(const Example& e);

// One JSONL line, no trailing newline.
std::string ExampleToLine(const Example& e);

// Reads a JSONL dataset. Any malformed line raises Error(kMalformedRecord)
// and any span inconsistency Error(kSpanMismatch); both messages carry the
// line number and, when known, the record id. Duplicate ids raise
// Error(kDuplicateId).
Dataset ReadDataset(const std::string& path, Split split = Split::kTrain);
Dataset ReadDataset(std::istream& in, Split split = Split::kTrain);

void WriteDataset(const Dataset& d, const std::string& path);
void WriteDataset(const Dataset& d, std::ostream& out);

}  // namespace spl

#endif  // SPL_DATASET_H_
