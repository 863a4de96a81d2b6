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

#ifndef SPL_PIPELINE_H_
#define SPL_PIPELINE_H_

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "spl/augment.h"
#include "spl/example.h"
#include "spl/nmt.h"
#include "spl/preproc.h"

namespace spl {

enum class PipelineMode {
  kLocalizeZeroShot,
  kLocalizeFewShot,
  kBootstrap,
  kBacktranslate,
  kBacktranslateAligned,
  kEvaluate,
  kSimilarity,
  kSplitOntology,
  kPtrgenCheck,
};

std::string_view PipelineModeName(PipelineMode m);
std::optional<PipelineMode> ParsePipelineMode(std::string_view name);

using Config = nlohmann::ordered_json;

// Reads a JSON config object. Throws Error(kConfig).
Config LoadConfig(const std::string& path);

// Recursive object merge; keys in `overrides` win.
Config MergeConfig(const Config& base, const Config& overrides);

// Builds the backend a config names: "mock" (a MockConfig preset, with
// "mock_dictionary", "mock_quote_drop_p" and "mock_seed" refinements), else
// "backend_url", else the SPL_BACKEND_URL environment variable.
// Throws Error(kConfig) when none is set.
std::unique_ptr<TranslationBackend> MakeBackend(const Config& cfg);

struct EntitySurvival {
  size_t entities = 0;
  size_t survived = 0;

  double rate() const { return entities == 0 ? 1.0 : double(survived) / double(entities); }
};

// For every input span, whether its value occurs verbatim in the utterance
// of the output with the same id. Inputs with no output count as lost.
EntitySurvival CountEntitySurvival(const Dataset& inputs, const Dataset& outputs);

struct BacktranslateReport {
  Dataset dataset;
  std::vector<QuarantineEntry> quarantine;
  EntitySurvival survival;
};

// Translates a target-language test set back into the source language.
// Without `align` this is plain translation and spans are dropped. With
// `align` the target entities are marked, located in the translation
// through attention, and overridden with their original (localized)
// strings, so the output keeps its spans.
BacktranslateReport RunBacktranslate(const Dataset& test, const TranslationBackend& backend,
                                     const std::string& from_lang, const std::string& to_lang,
                                     bool align, const RulePack& rulepack = {},
                                     const BatchOptions& batch = {});

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;

// Runs one experiment mode from a merged config, writing its artifacts and a
// manifest (config, config hash, seeds, input and output digests). Returns
// kExitConfig for config problems, kExitFailure for pipeline errors and
// kExitOk otherwise; per-example failures are quarantined, not fatal.
int RunMode(PipelineMode mode, const Config& cfg, std::ostream& log);

}  // namespace spl

#endif  // SPL_PIPELINE_H_
