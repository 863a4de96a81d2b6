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

#ifndef SPL_AUGMENT_H_
#define SPL_AUGMENT_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "spl/example.h"
#include "spl/nmt.h"
#include "spl/ontology.h"
#include "spl/preproc.h"

namespace spl {

// An example (or some of its expansions) set aside with the stage that
// failed. Quarantined records are written out, never silently dropped.
struct QuarantineEntry {
  std::string id;
  std::string stage;
  ErrorCode code = ErrorCode::kInvalidArgument;
  std::string message;
  size_t expansions = 1;
  Example record;
};

nlohmann::ordered_json QuarantineToJson(const QuarantineEntry& q);
void WriteQuarantine(const std::vector<QuarantineEntry>& entries, const std::string& path);

struct LocalizationConfig {
  std::string src_lang = "en";
  std::string tgt_lang;
  size_t k_augment = 10;
  uint64_t seed = 0;
  // Already restricted to the train or eval side of a split.
  const Ontology* ontology = nullptr;
  const TranslationBackend* backend = nullptr;
  RulePack rulepack;
  std::string quarantine_path;
  BatchOptions batch;
};

// A translation whose entity spans still carry the source values.
struct EntityPreservingTranslation {
  Example example;
  std::vector<size_t> source_index;
  std::vector<std::string> warnings;
};

// pre rules -> mark -> translate -> align -> override -> post rules when
// the backend emits attention; placeholder round-tripping otherwise.
// Throws StageError on failure.
EntityPreservingTranslation TranslatePreservingEntities(const Example& e,
                                                        const TranslationBackend& backend,
                                                        const std::string& src_lang,
                                                        const std::string& tgt_lang,
                                                        const RulePack& rulepack,
                                                        const BatchOptions& batch = {});

class StageError : public Error {
 public:
  StageError(std::string stage, const Error& cause)
      : Error(cause.code(), stage + ": " + cause.what()), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

struct LocalizeOutcome {
  std::vector<Example> outputs;
  std::vector<QuarantineEntry> quarantined;
  // Variants dropped because they duplicated an earlier variant.
  size_t collapsed = 0;
};

// Translates one source example with entity preservation and emits up to
// k variants, each substituting freshly sampled ontology values into the
// utterance and the logical form together (keyed by span index). Never
// throws for per-example failures; they come back as quarantine entries.
LocalizeOutcome LocalizeExample(const Example& e, const LocalizationConfig& cfg);

struct LocalizeStats {
  size_t inputs = 0;
  size_t deduplicated = 0;
  size_t unique_inputs = 0;
  size_t outputs = 0;
  size_t quarantined_examples = 0;
  size_t quarantined_expansions = 0;
  size_t collapsed = 0;
  // Quarantined expansions per failing stage.
  std::map<std::string, size_t> by_stage;

  // unique_inputs * k == outputs + quarantined_expansions + collapsed
  bool Balanced(size_t k) const {
    return unique_inputs * k == outputs + quarantined_expansions + collapsed;
  }
};

struct LocalizeReport {
  Dataset dataset;
  std::vector<QuarantineEntry> quarantine;
  LocalizeStats stats;
};

// Removes examples whose masked utterance repeats an earlier one.
Dataset DeduplicateMasked(const Dataset& d, size_t* removed = nullptr);

// Dedup, then LocalizeExample per example in parallel. Output order is
// input order x variant index. Writes the quarantine file when configured.
LocalizeReport LocalizeDataset(const Dataset& d, const LocalizationConfig& cfg);

struct FewShotMix {
  Dataset train;
  Dataset dev;
  size_t human_in_train = 0;
  size_t renamed = 0;
  double human_share_train = 0.0;
  double human_share_dev = 0.0;
};

// train' = train ++ human_dev, dev' = machine_dev ++ human_dev. Colliding
// ids get a "#n" suffix. Throws Error(kLanguageMismatch) when the sets'
// language tags disagree.
FewShotMix MixFewShot(const Dataset& train, const Dataset& human_dev, const Dataset& machine_dev);

struct BootstrapReport {
  Dataset dataset;
  std::vector<QuarantineEntry> quarantine;
};

// Baseline: plain translation of every utterance, logical forms untouched,
// spans dropped. meta["bootstrap"] = "true".
BootstrapReport BuildBootstrapDataset(const Dataset& d, const TranslationBackend& backend,
                                      const std::string& src_lang, const std::string& tgt_lang,
                                      const BatchOptions& batch = {});

}  // namespace spl

#endif  // SPL_AUGMENT_H_
