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

#include "spl/augment.h"

#include <algorithm>
#include <fstream>
#include <unordered_set>

#include "spl/align.h"
#include "spl/dataset.h"
#include "spl/placeholder.h"
#include "spl/rng.h"
#include "spl/unicode.h"

namespace spl {

nlohmann::ordered_json QuarantineToJson(const QuarantineEntry& q) {
  nlohmann::ordered_json j;
  j["id"] = q.id;
  j["stage"] = q.stage;
  j["error"] = std::string(ErrorCodeName(q.code));
  j["message"] = q.message;
  j["expansions"] = q.expansions;
  j["record"] = ExampleToJson(q.record);
  return j;
}

void WriteQuarantine(const std::vector<QuarantineEntry>& entries, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  for (const auto& q : entries) out << QuarantineToJson(q).dump() << '\n';
}

EntityPreservingTranslation TranslatePreservingEntities(const Example& e,
                                                        const TranslationBackend& backend,
                                                        const std::string& src_lang,
                                                        const std::string& tgt_lang,
                                                        const RulePack& rulepack,
                                                        const BatchOptions& batch) {
  RuleTrace trace;
  Example pre;
  try {
    pre = ApplyRulesToExample(e, rulepack, RulePhase::kPre, &trace);
  } catch (const Error& x) {
    throw StageError("preproc", x);
  }

  EntityPreservingTranslation out;
  if (backend.ProvidesAttention()) {
    const MarkedUtterance marked = MarkEntities(pre);
    out.warnings = marked.warnings;
    TranslationResult r;
    try {
      r = TranslateWithRetry(backend, {src_lang, tgt_lang, marked.text, true, {}}, batch);
    } catch (const Error& x) {
      throw StageError("translate", x);
    }
    OverrideResult ov;
    try {
      const auto quotes = FindQuotePairs(r.src_tokens);
      if (quotes.size() != pre.spans.size()) {
        throw Error(ErrorCode::kShapeMismatch,
                    std::to_string(quotes.size()) + " quoted regions in backend source tokens, " +
                        std::to_string(pre.spans.size()) + " spans marked");
      }
      const auto alignments = AlignSpans(r.src_tokens, r.tgt_tokens, *r.attention, quotes,
                                         &out.warnings);
      ov = OverrideSpans(r.tgt_tokens, alignments, pre.spans);
    } catch (const Error& x) {
      throw StageError("align", x);
    }
    out.example = Example{e.id, tgt_lang, ov.utterance, e.logical_form, ov.spans,
                          Provenance::kMachineTranslated};
    out.source_index = ov.source_index;
  } else {
    try {
      PlaceholderTranslation pt = TranslateWithPlaceholders(backend, pre, src_lang, tgt_lang, batch);
      out.example = std::move(pt.example);
      out.source_index = std::move(pt.source_index);
    } catch (const Error& x) {
      throw StageError("translate", x);
    }
  }

  // Post rules keep spans in order, so source_index stays valid.
  try {
    out.example = ApplyRulesToExample(out.example, rulepack, RulePhase::kPost, &trace);
  } catch (const Error& x) {
    throw StageError("postproc", x);
  }
  try {
    ValidateSpans(out.example);
    const auto violations = AlignmentViolations(out.example);
    if (!violations.empty()) throw Error(ErrorCode::kSpanMismatch, violations.front());
  } catch (const Error& x) {
    throw StageError("validate", x);
  }
  return out;
}

namespace {

QuarantineEntry MakeEntry(const Example& e, const std::string& stage, const Error& x,
                          size_t expansions) {
  return QuarantineEntry{e.id, stage, x.code(), x.what(), expansions, e};
}

}  // namespace

LocalizeOutcome LocalizeExample(const Example& e, const LocalizationConfig& cfg) {
  if (cfg.k_augment < 1) throw Error(ErrorCode::kConfig, "k_augment must be >= 1");
  if (cfg.ontology == nullptr || cfg.backend == nullptr) {
    throw Error(ErrorCode::kConfig, "localization needs an ontology and a backend");
  }
  const size_t k = cfg.k_augment;
  LocalizeOutcome out;
  auto quarantine_all = [&](const std::string& stage, const Error& x) {
    out.quarantined.push_back(MakeEntry(e, stage, x, k));
    return out;
  };

  try {
    ValidateSpans(e);
    const auto violations = AlignmentViolations(e);
    if (!violations.empty()) throw Error(ErrorCode::kSpanMismatch, violations.front());
  } catch (const Error& x) {
    return quarantine_all("input", x);
  }

  std::vector<size_t> substitutable;
  for (size_t s = 0; s < e.spans.size(); ++s) {
    if (!e.spans[s].is_placeholder) substitutable.push_back(s);
  }
  std::map<size_t, std::vector<EntityValue>> samples;
  try {
    for (size_t s : substitutable) {
      const uint64_t seed = MixSeed(MixSeed(cfg.seed, e.id), s);
      auto drawn = SampleValues(*cfg.ontology, e.spans[s].param_type, k, seed, true);
      if (drawn.values.empty()) {
        throw Error(ErrorCode::kUnknownParamType,
                    "no drawable values for '" + e.spans[s].param_type + "'");
      }
      samples[s] = std::move(drawn.values);
    }
  } catch (const Error& x) {
    return quarantine_all("substitute", x);
  }

  EntityPreservingTranslation base;
  try {
    base = TranslatePreservingEntities(e, *cfg.backend, cfg.src_lang, cfg.tgt_lang, cfg.rulepack,
                                       cfg.batch);
  } catch (const StageError& x) {
    return quarantine_all(x.stage(), x);
  }

  const auto params = ExtractParameters(e.logical_form);
  const auto links = LinkParameters(e);
  const size_t variants = substitutable.empty() ? 1 : k;
  out.collapsed = k - variants;

  std::unordered_set<std::string> seen;
  for (size_t j = 0; j < variants; ++j) {
    Example v = base.example;
    v.id = e.id + "-" + std::to_string(j);
    v.provenance = Provenance::kAugmented;
    std::map<size_t, std::string> chosen;
    for (size_t s : substitutable) {
      const auto& drawn = samples[s];
      chosen[s] = drawn[j % drawn.size()].text;
    }
    try {
      for (size_t o = 0; o < v.spans.size(); ++o) {
        auto it = chosen.find(base.source_index[o]);
        if (it != chosen.end()) ReplaceSpanValue(v, o, it->second);
      }
      LogicalForm lf = e.logical_form;
      for (size_t p = params.size(); p-- > 0;) {
        if (params[p].kind != ParameterRef::Kind::kQuoted || !links[p]) continue;
        auto it = chosen.find(*links[p]);
        if (it == chosen.end()) continue;
        lf = ReplaceTokens(lf, params[p].begin + 1, params[p].end - 1,
                           unicode::SplitWhitespace(it->second));
      }
      v.logical_form = std::move(lf);
      ValidateSpans(v);
      const auto violations = AlignmentViolations(v);
      if (!violations.empty()) throw Error(ErrorCode::kSpanMismatch, violations.front());
    } catch (const Error& x) {
      out.quarantined.push_back(MakeEntry(v, "validate", x, 1));
      continue;
    }
    if (!seen.insert(v.utterance + '\t' + v.logical_form.Serialize()).second) {
      ++out.collapsed;
      continue;
    }
    out.outputs.push_back(std::move(v));
  }
  return out;
}

Dataset DeduplicateMasked(const Dataset& d, size_t* removed) {
  Dataset out;
  out.split = d.split;
  out.meta = d.meta;
  std::unordered_set<std::string> seen;
  size_t dropped = 0;
  for (const Example& e : d.examples) {
    if (seen.insert(MaskedUtterance(e)).second) {
      out.examples.push_back(e);
    } else {
      ++dropped;
    }
  }
  if (removed) *removed = dropped;
  return out;
}

LocalizeReport LocalizeDataset(const Dataset& d, const LocalizationConfig& cfg) {
  LocalizeReport report;
  report.stats.inputs = d.size();
  const Dataset unique = DeduplicateMasked(d, &report.stats.deduplicated);
  report.stats.unique_inputs = unique.size();

  std::vector<LocalizeOutcome> outcomes(unique.size());
  ParallelFor(unique.size(), cfg.batch.width, [&](size_t i) {
    try {
      outcomes[i] = LocalizeExample(unique.examples[i], cfg);
    } catch (const Error& x) {
      outcomes[i].quarantined.push_back(MakeEntry(unique.examples[i], "internal", x, cfg.k_augment));
    }
  });

  report.dataset.split = d.split;
  report.dataset.meta = d.meta;
  for (LocalizeOutcome& o : outcomes) {
    report.stats.collapsed += o.collapsed;
    for (auto& q : o.quarantined) {
      report.stats.quarantined_expansions += q.expansions;
      report.stats.by_stage[q.stage] += q.expansions;
      if (q.expansions == cfg.k_augment) ++report.stats.quarantined_examples;
      report.quarantine.push_back(std::move(q));
    }
    for (auto& e : o.outputs) report.dataset.examples.push_back(std::move(e));
  }
  report.stats.outputs = report.dataset.size();
  if (!cfg.quarantine_path.empty()) WriteQuarantine(report.quarantine, cfg.quarantine_path);
  return report;
}

namespace {

void AppendWithUniqueIds(Dataset& into, const Dataset& from, std::unordered_set<std::string>& ids,
                         size_t* renamed) {
  for (Example e : from.examples) {
    if (ids.count(e.id)) {
      std::string candidate;
      for (size_t n = 1;; ++n) {
        candidate = e.id + "#" + std::to_string(n);
        if (!ids.count(candidate)) break;
      }
      e.id = candidate;
      ++*renamed;
    }
    ids.insert(e.id);
    into.examples.push_back(std::move(e));
  }
}

}  // namespace

FewShotMix MixFewShot(const Dataset& train, const Dataset& human_dev, const Dataset& machine_dev) {
  std::optional<std::string> lang;
  for (const Dataset* d : {&train, &human_dev, &machine_dev}) {
    for (const Example& e : d->examples) {
      if (!lang) lang = e.lang;
      if (e.lang != *lang) {
        throw Error(ErrorCode::kLanguageMismatch,
                    "example '" + e.id + "' is '" + e.lang + "', expected '" + *lang + "'");
      }
    }
  }
  FewShotMix mix;
  size_t renamed_train = 0;
  size_t renamed_dev = 0;

  mix.train.split = Split::kTrain;
  mix.train.meta = train.meta;
  std::unordered_set<std::string> train_ids;
  AppendWithUniqueIds(mix.train, train, train_ids, &renamed_train);
  AppendWithUniqueIds(mix.train, human_dev, train_ids, &renamed_train);

  mix.dev.split = Split::kDev;
  mix.dev.meta = machine_dev.meta;
  std::unordered_set<std::string> dev_ids;
  AppendWithUniqueIds(mix.dev, machine_dev, dev_ids, &renamed_dev);
  AppendWithUniqueIds(mix.dev, human_dev, dev_ids, &renamed_dev);

  mix.human_in_train = human_dev.size();
  mix.renamed = renamed_train + renamed_dev;
  if (!mix.train.examples.empty()) {
    mix.human_share_train = static_cast<double>(human_dev.size()) / mix.train.size();
  }
  if (!mix.dev.examples.empty()) {
    mix.human_share_dev = static_cast<double>(human_dev.size()) / mix.dev.size();
  }
  return mix;
}

BootstrapReport BuildBootstrapDataset(const Dataset& d, const TranslationBackend& backend,
                                      const std::string& src_lang, const std::string& tgt_lang,
                                      const BatchOptions& batch) {
  std::vector<std::optional<Example>> translated(d.size());
  std::vector<std::optional<QuarantineEntry>> failed(d.size());
  ParallelFor(d.size(), batch.width, [&](size_t i) {
    const Example& e = d.examples[i];
    try {
      const auto r = TranslateWithRetry(backend, {src_lang, tgt_lang, e.utterance, false, {}}, batch);
      translated[i] = Example{e.id, tgt_lang, r.tgt_text, e.logical_form, {},
                              Provenance::kMachineTranslated};
    } catch (const Error& x) {
      failed[i] = MakeEntry(e, "translate", x, 1);
    }
  });
  BootstrapReport report;
  report.dataset.split = d.split;
  report.dataset.meta = d.meta;
  report.dataset.meta["bootstrap"] = "true";
  for (size_t i = 0; i < d.size(); ++i) {
    if (translated[i]) report.dataset.examples.push_back(std::move(*translated[i]));
    if (failed[i]) report.quarantine.push_back(std::move(*failed[i]));
  }
  return report;
}

}  // namespace spl
