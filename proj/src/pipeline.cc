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

#include "spl/pipeline.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "oracle/gradient_check.h"
#include "spl/dataset.h"
#include "spl/digest.h"
#include "spl/error.h"
#include "spl/http_backend.h"
#include "spl/metrics.h"
#include "spl/mock_backend.h"
#include "spl/ontology.h"
#include "spl/ptrgen.h"
#include "spl/rng.h"
#include "spl/similarity.h"

namespace spl {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

constexpr std::pair<PipelineMode, std::string_view> kModeNames[] = {
    {PipelineMode::kLocalizeZeroShot, "localize_zero_shot"},
    {PipelineMode::kLocalizeFewShot, "localize_few_shot"},
    {PipelineMode::kBootstrap, "bootstrap"},
    {PipelineMode::kBacktranslate, "backtranslate"},
    {PipelineMode::kBacktranslateAligned, "backtranslate_aligned"},
    {PipelineMode::kEvaluate, "evaluate"},
    {PipelineMode::kSimilarity, "similarity"},
    {PipelineMode::kSplitOntology, "split_ontology"},
    {PipelineMode::kPtrgenCheck, "ptrgen_check"},
};

constexpr double kGradientTolerance = 1e-4;
constexpr double kSumTolerance = 1e-6;

Error ConfigError(const std::string& key, const std::string& what) {
  return Error(ErrorCode::kConfig, "config key '" + key + "': " + what);
}

std::string GetString(const Config& cfg, const std::string& key) {
  if (!cfg.contains(key) || cfg[key].is_null()) throw ConfigError(key, "missing");
  if (!cfg[key].is_string()) throw ConfigError(key, "expected a string");
  return cfg[key].get<std::string>();
}

std::string GetString(const Config& cfg, const std::string& key, const std::string& fallback) {
  if (!cfg.contains(key) || cfg[key].is_null()) return fallback;
  return GetString(cfg, key);
}

double GetNumber(const Config& cfg, const std::string& key, double fallback) {
  if (!cfg.contains(key) || cfg[key].is_null()) return fallback;
  if (!cfg[key].is_number()) throw ConfigError(key, "expected a number");
  return cfg[key].get<double>();
}

uint64_t GetU64(const Config& cfg, const std::string& key, uint64_t fallback) {
  if (!cfg.contains(key) || cfg[key].is_null()) return fallback;
  const auto& v = cfg[key];
  if (v.is_number_unsigned()) return v.get<uint64_t>();
  if (v.is_number_integer() && v.get<int64_t>() >= 0) return static_cast<uint64_t>(v.get<int64_t>());
  throw ConfigError(key, "expected a nonnegative integer");
}

bool GetBool(const Config& cfg, const std::string& key, bool fallback) {
  if (!cfg.contains(key) || cfg[key].is_null()) return fallback;
  if (!cfg[key].is_boolean()) throw ConfigError(key, "expected true or false");
  return cfg[key].get<bool>();
}

// Tracks the files a run reads and writes for the manifest.
class Artifacts {
 public:
  explicit Artifacts(const Config& cfg) : cfg_(cfg) {}

  std::string Input(const std::string& key) {
    const std::string path = GetString(cfg_, key);
    if (!fs::is_regular_file(path)) throw ConfigError(key, "no such file: " + path);
    inputs_.push_back({{"key", key}, {"path", path}, {"sha256", Sha256File(path)}});
    return path;
  }

  std::optional<std::string> OptionalInput(const std::string& key) {
    if (!cfg_.contains(key) || cfg_[key].is_null()) return std::nullopt;
    return Input(key);
  }

  std::string OutputPath(const std::string& key, const std::string& fallback = "") {
    const std::string path = fallback.empty() ? GetString(cfg_, key) : GetString(cfg_, key, fallback);
    const fs::path parent = fs::path(path).parent_path();
    if (!parent.empty()) fs::create_directories(parent);
    return path;
  }

  void Wrote(const std::string& key, const std::string& path) {
    outputs_.push_back({{"key", key}, {"path", path}, {"sha256", Sha256File(path)}});
  }

  Json inputs() const { return inputs_; }
  Json outputs() const { return outputs_; }

 private:
  const Config& cfg_;
  Json inputs_ = Json::array();
  Json outputs_ = Json::array();
};

Json StatsJson(const LocalizeStats& s, size_t k) {
  Json by_stage = Json::object();
  for (const auto& [stage, n] : s.by_stage) by_stage[stage] = n;
  return Json{{"inputs", s.inputs},
              {"deduplicated", s.deduplicated},
              {"unique_inputs", s.unique_inputs},
              {"k", k},
              {"outputs", s.outputs},
              {"quarantined_examples", s.quarantined_examples},
              {"quarantined_expansions", s.quarantined_expansions},
              {"collapsed", s.collapsed},
              {"by_stage", by_stage},
              {"balanced", s.Balanced(k)}};
}

BatchOptions BatchFrom(const Config& cfg) {
  BatchOptions b;
  b.width = static_cast<size_t>(GetU64(cfg, "width", b.width));
  if (b.width == 0) throw ConfigError("width", "must be at least 1");
  return b;
}

RulePack RulePackFrom(Artifacts& io) {
  const auto path = io.OptionalInput("rulepack");
  return path ? LoadRulePack(*path) : RulePack();
}

struct ModeOutput {
  Json stats = Json::object();
  bool failed = false;
};

ModeOutput Localize(const Config& cfg, Artifacts& io, std::ostream& log, bool few_shot) {
  const std::string in_path = io.Input("input");
  const std::string ont_path = io.Input("ontology");
  const std::string tgt = GetString(cfg, "tgt_lang");
  const std::string src = GetString(cfg, "src_lang", "en");
  const uint64_t seed = GetU64(cfg, "seed", 0);
  const auto k = static_cast<size_t>(GetU64(cfg, "k", 10));
  if (k == 0) throw ConfigError("k", "must be at least 1");
  const std::string side = GetString(cfg, "split_side", "all");
  const double overlap = GetNumber(cfg, "overlap", 0.45);
  if (overlap < 0.0 || overlap > 1.0) throw ConfigError("overlap", "must be in [0, 1]");
  const uint64_t split_seed = GetU64(cfg, "split_seed", seed);

  std::optional<std::string> human_path;
  std::optional<std::string> machine_path;
  if (few_shot) {
    human_path = io.Input("human_dev");
    machine_path = io.Input("machine_dev");
  }
  RulePack pack = RulePackFrom(io);
  const std::string out_path = io.OutputPath("output");
  const std::string q_path = io.OutputPath("quarantine", out_path + ".quarantine.jsonl");
  const std::string dev_out = few_shot ? io.OutputPath("dev_output") : std::string();

  std::vector<std::string> warnings;
  const Ontology full = LoadOntology(ont_path, tgt, &warnings);
  for (const auto& w : warnings) log << "warning: " << w << "\n";
  Ontology ontology;
  if (side == "all") {
    ontology = full;
  } else if (side == "train" || side == "eval") {
    OntologySplit split = SplitOntology(full, overlap, split_seed);
    ontology = side == "train" ? split.train : split.eval;
  } else {
    throw ConfigError("split_side", "expected all, train or eval");
  }
  const auto backend = MakeBackend(cfg);

  LocalizationConfig lc;
  lc.src_lang = src;
  lc.tgt_lang = tgt;
  lc.k_augment = k;
  lc.seed = seed;
  lc.ontology = &ontology;
  lc.backend = backend.get();
  lc.rulepack = pack;
  lc.quarantine_path = q_path;
  lc.batch = BatchFrom(cfg);

  const Dataset input = ReadDataset(in_path, Split::kTrain);
  LocalizeReport report = LocalizeDataset(input, lc);
  ModeOutput out;
  out.stats = StatsJson(report.stats, k);
  log << "localized " << report.stats.unique_inputs << " unique inputs into "
      << report.stats.outputs << " examples; quarantined " << report.stats.quarantined_examples
      << " examples (" << report.stats.quarantined_expansions << " expansions)\n";

  if (!few_shot) {
    WriteDataset(report.dataset, out_path);
    io.Wrote("output", out_path);
  } else {
    Dataset human = ReadDataset(*human_path, Split::kDev);
    Dataset machine = ReadDataset(*machine_path, Split::kDev);
    FewShotMix mix = MixFewShot(report.dataset, human, machine);
    WriteDataset(mix.train, out_path);
    io.Wrote("output", out_path);
    WriteDataset(mix.dev, dev_out);
    io.Wrote("dev_output", dev_out);
    out.stats["train_size"] = mix.train.size();
    out.stats["dev_size"] = mix.dev.size();
    out.stats["human_in_train"] = mix.human_in_train;
    out.stats["renamed"] = mix.renamed;
    out.stats["human_share_train"] = mix.human_share_train;
    out.stats["human_share_dev"] = mix.human_share_dev;
    log << "few-shot train " << mix.train.size() << " (human share " << mix.human_share_train
        << "), dev " << mix.dev.size() << "\n";
  }
  io.Wrote("quarantine", q_path);
  return out;
}

ModeOutput Bootstrap(const Config& cfg, Artifacts& io, std::ostream& log) {
  const std::string in_path = io.Input("input");
  const std::string tgt = GetString(cfg, "tgt_lang");
  const std::string src = GetString(cfg, "src_lang", "en");
  const std::string out_path = io.OutputPath("output");
  const std::string q_path = io.OutputPath("quarantine", out_path + ".quarantine.jsonl");
  const auto backend = MakeBackend(cfg);
  const Dataset input = ReadDataset(in_path, Split::kTrain);
  BootstrapReport report = BuildBootstrapDataset(input, *backend, src, tgt, BatchFrom(cfg));
  WriteDataset(report.dataset, out_path);
  io.Wrote("output", out_path);
  WriteQuarantine(report.quarantine, q_path);
  io.Wrote("quarantine", q_path);

  size_t violating = 0;
  size_t with_spans = 0;
  for (const Example& e : report.dataset.examples) {
    if (ExtractParameters(e.logical_form).empty()) continue;
    ++with_spans;
    if (!AlignmentViolations(e).empty()) ++violating;
  }
  ModeOutput out;
  out.stats = Json{{"inputs", input.size()},
                   {"outputs", report.dataset.size()},
                   {"quarantined", report.quarantine.size()},
                   {"parameter_bearing", with_spans},
                   {"alignment_violations", violating}};
  log << "bootstrap: " << report.dataset.size() << " translated, " << report.quarantine.size()
      << " quarantined, " << violating << "/" << with_spans
      << " parameter-bearing examples violate alignment\n";
  return out;
}

ModeOutput Backtranslate(const Config& cfg, Artifacts& io, std::ostream& log, bool align) {
  const std::string in_path = io.Input("input");
  const std::string to = GetString(cfg, "src_lang", "en");
  RulePack pack = RulePackFrom(io);
  const std::string out_path = io.OutputPath("output");
  const std::string q_path = io.OutputPath("quarantine", out_path + ".quarantine.jsonl");
  const auto backend = MakeBackend(cfg);
  const Dataset test = ReadDataset(in_path, Split::kTest);
  std::string from = GetString(cfg, "tgt_lang", "");
  if (from.empty() && !test.examples.empty()) from = test.examples.front().lang;
  if (from.empty()) throw ConfigError("tgt_lang", "missing and the input is empty");

  BacktranslateReport report = RunBacktranslate(test, *backend, from, to, align, pack, BatchFrom(cfg));
  WriteDataset(report.dataset, out_path);
  io.Wrote("output", out_path);
  WriteQuarantine(report.quarantine, q_path);
  io.Wrote("quarantine", q_path);
  ModeOutput out;
  out.stats = Json{{"inputs", test.size()},
                   {"outputs", report.dataset.size()},
                   {"quarantined", report.quarantine.size()},
                   {"entities", report.survival.entities},
                   {"entities_survived", report.survival.survived},
                   {"entity_survival", report.survival.rate()}};
  log << "backtranslate" << (align ? " (aligned)" : "") << ": " << report.dataset.size()
      << " outputs, entity survival " << report.survival.survived << "/"
      << report.survival.entities << "\n";
  return out;
}

ModeOutput Evaluate(const Config& cfg, Artifacts& io, std::ostream& log) {
  const std::string pred_path = io.Input("predictions");
  const std::string gold_path = io.Input("gold");
  const std::string out_path = io.OutputPath("output");
  const auto preds = ReadPredictions(pred_path);
  const Dataset gold = ReadDataset(gold_path, Split::kTest);
  const EvalReport r = EvaluateRun(preds, gold);
  {
    std::ofstream csv(out_path, std::ios::binary);
    if (!csv) throw Error(ErrorCode::kIo, "cannot write " + out_path);
    WriteEvalCsv(r, csv);
  }
  io.Wrote("output", out_path);
  ModeOutput out;
  out.stats = Json{{"em", r.em}, {"sm", r.sm}, {"n", r.n}, {"missing", r.missing},
                   {"unparseable", r.unparseable}};
  if (cfg.contains("report")) {
    const std::string report_path = io.OutputPath("report");
    std::ofstream js(report_path, std::ios::binary);
    js << out.stats.dump(2) << "\n";
    js.close();
    io.Wrote("report", report_path);
  }
  log << "em " << r.em << " sm " << r.sm << " n " << r.n << " missing " << r.missing
      << " unparseable " << r.unparseable << "\n";
  return out;
}

std::vector<std::string> ReadLines(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

ModeOutput SimilarityMode(const Config& cfg, Artifacts& io, std::ostream& log) {
  const auto cands = ReadLines(io.Input("candidates"));
  const auto refs = ReadLines(io.Input("references"));
  TokenizeOptions opts;
  opts.char_level = GetBool(cfg, "char_level", false);
  const SimilarityReport r = Similarity(cands, refs, opts);
  ModeOutput out;
  out.stats = Json{{"bleu", r.bleu}, {"ter", r.ter}, {"n", r.n},
                   {"skipped_empty_refs", r.skipped_empty_refs}};
  if (cfg.contains("output")) {
    const std::string path = io.OutputPath("output");
    std::ofstream js(path, std::ios::binary);
    js << out.stats.dump(2) << "\n";
    js.close();
    io.Wrote("output", path);
  }
  log << "bleu " << r.bleu << " ter " << r.ter << " n " << r.n << "\n";
  return out;
}

ModeOutput SplitOntologyMode(const Config& cfg, Artifacts& io, std::ostream& log) {
  const std::string path = io.Input("ontology");
  const std::string lang = GetString(cfg, "tgt_lang", "und");
  const double overlap = GetNumber(cfg, "overlap", 0.45);
  if (overlap < 0.0 || overlap > 1.0) throw ConfigError("overlap", "must be in [0, 1]");
  const uint64_t seed = GetU64(cfg, "split_seed", GetU64(cfg, "seed", 0));
  const std::string train_path = io.OutputPath("train_output");
  const std::string eval_path = io.OutputPath("eval_output");
  std::vector<std::string> warnings;
  const Ontology o = LoadOntology(path, lang, &warnings);
  for (const auto& w : warnings) log << "warning: " << w << "\n";
  const OntologySplit split = SplitOntology(o, overlap, seed);
  SaveOntologyJson(split.train, train_path);
  io.Wrote("train_output", train_path);
  SaveOntologyJson(split.eval, eval_path);
  io.Wrote("eval_output", eval_path);
  ModeOutput out;
  Json types = Json::object();
  for (const auto& [type, values] : o.entries()) {
    const size_t n = values.size();
    const size_t shared = SharedCount(overlap, n);
    types[type] = Json{{"n", n},
                       {"shared", shared},
                       {"train", split.train.Values(type).size()},
                       {"eval", split.eval.Values(type).size()}};
    log << type << ": " << n << " values, " << shared << " shared\n";
  }
  out.stats = Json{{"overlap", overlap}, {"types", types}};
  return out;
}

ModeOutput PtrgenCheck(const Config& cfg, Artifacts& io, std::ostream& log) {
  const uint64_t seed = GetU64(cfg, "seed", 0);
  const auto instances = static_cast<size_t>(GetU64(cfg, "instances", 100));
  double worst_rel = 0.0;
  double worst_sum = 0.0;
  std::string worst_at;
  for (size_t i = 0; i < instances; ++i) {
    const oracle::PtrgenInstance inst = oracle::RandomInstance(MixSeed(seed, i));
    const ptrgen::Vector pooled = ptrgen::Pool(inst.enc, inst.params.pool);
    for (const ptrgen::Step& step : inst.steps) {
      const auto d = ptrgen::StepDistributionsFor(inst.enc, step.decoder_state + pooled,
                                                  inst.params.w_o, step.copy_switch);
      for (const ptrgen::Vector* p : {&d.copy, &d.vocab, &d.mixed}) {
        worst_sum = std::max(worst_sum, std::abs(p->sum() - 1.0));
      }
    }
    const oracle::GradientCheckResult g = oracle::CheckGradients(inst);
    if (g.max_rel_error > worst_rel) {
      worst_rel = g.max_rel_error;
      worst_at = "instance " + std::to_string(i) + " " + g.worst;
    }
  }
  ModeOutput out;
  out.failed = !(worst_rel < kGradientTolerance) || !(worst_sum <= kSumTolerance);
  out.stats = Json{{"instances", instances},
                   {"max_rel_error", worst_rel},
                   {"worst", worst_at},
                   {"max_sum_error", worst_sum},
                   {"tolerance", kGradientTolerance},
                   {"passed", !out.failed}};
  if (cfg.contains("output")) {
    const std::string path = io.OutputPath("output");
    std::ofstream js(path, std::ios::binary);
    js << out.stats.dump(2) << "\n";
    js.close();
    io.Wrote("output", path);
  }
  log << "ptrgen-check: " << instances << " instances, max relative error " << worst_rel
      << " (" << worst_at << "), max |sum - 1| " << worst_sum << ": "
      << (out.failed ? "FAIL" : "ok") << "\n";
  return out;
}

std::string DefaultManifestPath(const Config& cfg) {
  for (const char* key : {"output", "train_output"}) {
    if (cfg.contains(key) && cfg[key].is_string()) return cfg[key].get<std::string>() + ".manifest.json";
  }
  return "";
}

}  // namespace

std::string_view PipelineModeName(PipelineMode m) {
  for (const auto& [mode, name] : kModeNames) {
    if (mode == m) return name;
  }
  return "unknown";
}

std::optional<PipelineMode> ParsePipelineMode(std::string_view name) {
  for (const auto& [mode, n] : kModeNames) {
    if (n == name) return mode;
  }
  return std::nullopt;
}

Config LoadConfig(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kConfig, "cannot read config " + path);
  Config cfg;
  try {
    cfg = Config::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kConfig, "config " + path + ": " + e.what());
  }
  if (!cfg.is_object()) throw Error(ErrorCode::kConfig, "config " + path + " is not an object");
  return cfg;
}

Config MergeConfig(const Config& base, const Config& overrides) {
  if (!base.is_object() || !overrides.is_object()) return overrides;
  Config out = base;
  for (const auto& [key, value] : overrides.items()) {
    out[key] = out.contains(key) ? MergeConfig(out[key], value) : value;
  }
  return out;
}

std::unique_ptr<TranslationBackend> MakeBackend(const Config& cfg) {
  if (cfg.contains("mock") && !cfg["mock"].is_null()) {
    const std::string mode = GetString(cfg, "mock");
    MockConfig mc;
    try {
      mc = MockConfig::Preset(mode);
    } catch (const Error& e) {
      throw ConfigError("mock", e.what());
    }
    if (cfg.contains("mock_dictionary")) {
      const std::string path = GetString(cfg, "mock_dictionary");
      if (!fs::is_regular_file(path)) throw ConfigError("mock_dictionary", "no such file: " + path);
      mc.dictionary = LoadDictionary(path);
    }
    mc.quote_drop_p = GetNumber(cfg, "mock_quote_drop_p", mc.quote_drop_p);
    if (mc.quote_drop_p < 0.0 || mc.quote_drop_p > 1.0) {
      throw ConfigError("mock_quote_drop_p", "must be in [0, 1]");
    }
    mc.seed = GetU64(cfg, "mock_seed", GetU64(cfg, "seed", 0));
    return std::make_unique<MockBackend>(std::move(mc));
  }
  std::string url = GetString(cfg, "backend_url", "");
  if (url.empty()) {
    if (const char* env = std::getenv("SPL_BACKEND_URL")) url = env;
  }
  if (url.empty()) {
    throw ConfigError("backend_url", "no backend: set mock, backend_url or SPL_BACKEND_URL");
  }
  return std::make_unique<HttpBackend>(url, GetBool(cfg, "backend_attention", true));
}

EntitySurvival CountEntitySurvival(const Dataset& inputs, const Dataset& outputs) {
  std::map<std::string, const Example*> by_id;
  for (const Example& e : outputs.examples) by_id.emplace(e.id, &e);
  EntitySurvival s;
  for (const Example& e : inputs.examples) {
    auto it = by_id.find(e.id);
    for (const EntitySpan& span : e.spans) {
      ++s.entities;
      if (it != by_id.end() && it->second->utterance.find(span.value) != std::string::npos) {
        ++s.survived;
      }
    }
  }
  return s;
}

BacktranslateReport RunBacktranslate(const Dataset& test, const TranslationBackend& backend,
                                     const std::string& from_lang, const std::string& to_lang,
                                     bool align, const RulePack& rulepack,
                                     const BatchOptions& batch) {
  std::vector<std::optional<Example>> done(test.size());
  std::vector<std::optional<QuarantineEntry>> failed(test.size());
  ParallelFor(test.size(), batch.width, [&](size_t i) {
    const Example& e = test.examples[i];
    if (align) {
      try {
        Example x = TranslatePreservingEntities(e, backend, from_lang, to_lang, rulepack, batch).example;
        x.provenance = Provenance::kMachineTranslated;
        done[i] = std::move(x);
      } catch (const StageError& x) {
        failed[i] = QuarantineEntry{e.id, x.stage(), x.code(), x.what(), 1, e};
      }
      return;
    }
    try {
      const auto r = TranslateWithRetry(backend, {from_lang, to_lang, e.utterance, false, {}}, batch);
      done[i] = Example{e.id, to_lang, r.tgt_text, e.logical_form, {}, Provenance::kMachineTranslated};
    } catch (const Error& x) {
      failed[i] = QuarantineEntry{e.id, "translate", x.code(), x.what(), 1, e};
    }
  });
  BacktranslateReport report;
  report.dataset.split = test.split;
  report.dataset.meta = test.meta;
  report.dataset.meta["backtranslated"] = align ? "aligned" : "plain";
  for (size_t i = 0; i < test.size(); ++i) {
    if (done[i]) report.dataset.examples.push_back(std::move(*done[i]));
    if (failed[i]) report.quarantine.push_back(std::move(*failed[i]));
  }
  report.survival = CountEntitySurvival(test, report.dataset);
  return report;
}

int RunMode(PipelineMode mode, const Config& cfg, std::ostream& log) {
  try {
    Artifacts io(cfg);
    ModeOutput out;
    switch (mode) {
      case PipelineMode::kLocalizeZeroShot: out = Localize(cfg, io, log, false); break;
      case PipelineMode::kLocalizeFewShot: out = Localize(cfg, io, log, true); break;
      case PipelineMode::kBootstrap: out = Bootstrap(cfg, io, log); break;
      case PipelineMode::kBacktranslate: out = Backtranslate(cfg, io, log, false); break;
      case PipelineMode::kBacktranslateAligned: out = Backtranslate(cfg, io, log, true); break;
      case PipelineMode::kEvaluate: out = Evaluate(cfg, io, log); break;
      case PipelineMode::kSimilarity: out = SimilarityMode(cfg, io, log); break;
      case PipelineMode::kSplitOntology: out = SplitOntologyMode(cfg, io, log); break;
      case PipelineMode::kPtrgenCheck: out = PtrgenCheck(cfg, io, log); break;
    }

    const std::string manifest_path = GetString(cfg, "manifest", DefaultManifestPath(cfg));
    if (!manifest_path.empty()) {
      const uint64_t seed = GetU64(cfg, "seed", 0);
      Json seeds{{"seed", seed},
                 {"split_seed", GetU64(cfg, "split_seed", seed)},
                 {"mock_seed", GetU64(cfg, "mock_seed", seed)},
                 {"per_example", "MixSeed(MixSeed(seed, example_id), span_index)"}};
      Json manifest{{"mode", PipelineModeName(mode)},
                    {"config", cfg},
                    {"config_hash", Sha256Hex(cfg.dump())},
                    {"seeds", seeds},
                    {"inputs", io.inputs()},
                    {"outputs", io.outputs()},
                    {"stats", out.stats}};
      const fs::path parent = fs::path(manifest_path).parent_path();
      if (!parent.empty()) fs::create_directories(parent);
      std::ofstream m(manifest_path, std::ios::binary);
      if (!m) throw Error(ErrorCode::kIo, "cannot write " + manifest_path);
      m << manifest.dump(2) << "\n";
    }
    return out.failed ? kExitFailure : kExitOk;
  } catch (const Error& e) {
    log << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::kConfig ? kExitConfig : kExitFailure;
  } catch (const nlohmann::json::exception& e) {
    log << "error: config: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace spl
