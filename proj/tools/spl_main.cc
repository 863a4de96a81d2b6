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

// Command-line entry point. Every experiment subcommand turns its flags into
// config keys, merges them over --config (flags win) and hands the result to
// RunMode. `mix-fewshot`, `validate` and `align` are standalone utilities.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "oracle/align_oracle.h"
#include "spl/align.h"
#include "spl/augment.h"
#include "spl/dataset.h"
#include "spl/error.h"
#include "spl/example.h"
#include "spl/pipeline.h"

namespace {

using spl::Config;

enum class Kind { kString, kU64, kNumber };

// Flags that map one-to-one onto config keys. Only flags the user passed
// end up in the override object.
class FlagSet {
 public:
  void Add(CLI::App* app, const std::string& flag, const std::string& key, Kind kind,
           const std::string& help) {
    auto& slot = values_[key];
    CLI::Option* opt = app->add_option(flag, slot, help);
    entries_.push_back({key, kind, opt});
  }

  void AddBool(CLI::App* app, const std::string& flag, const std::string& key,
               const std::string& help) {
    CLI::Option* opt = app->add_flag(flag, help);
    bools_.push_back({key, opt});
  }

  Config Overrides() const {
    Config out = Config::object();
    for (const auto& e : entries_) {
      if (e.opt->count() == 0) continue;
      const std::string& v = values_.at(e.key);
      try {
        switch (e.kind) {
          case Kind::kString: out[e.key] = v; break;
          case Kind::kU64: out[e.key] = static_cast<uint64_t>(std::stoull(v)); break;
          case Kind::kNumber: out[e.key] = std::stod(v); break;
        }
      } catch (const std::exception&) {
        throw spl::Error(spl::ErrorCode::kConfig, "flag " + e.opt->get_name() + ": bad value '" + v + "'");
      }
    }
    for (const auto& [key, opt] : bools_) {
      if (opt->count() > 0) out[key] = true;
    }
    return out;
  }

 private:
  struct Entry {
    std::string key;
    Kind kind;
    CLI::Option* opt;
  };
  std::map<std::string, std::string> values_;
  std::vector<Entry> entries_;
  std::vector<std::pair<std::string, CLI::Option*>> bools_;
};

struct Command {
  CLI::App* app = nullptr;
  FlagSet flags;
  std::string config_path;
};

void AddCommon(Command& c) {
  c.app->add_option("--config", c.config_path, "JSON config file; flags override its keys");
  c.flags.Add(c.app, "--manifest", "manifest", Kind::kString, "manifest path");
  c.flags.Add(c.app, "--seed", "seed", Kind::kU64, "master seed");
}

void AddBackend(Command& c) {
  c.flags.Add(c.app, "--backend-url", "backend_url", Kind::kString,
              "translation service URL (default: $SPL_BACKEND_URL)");
  c.flags.Add(c.app, "--mock", "mock", Kind::kString,
              "mock backend: identity|dictionary|reversal|quote-dropping|placeholder-deletion");
  c.flags.Add(c.app, "--mock-dictionary", "mock_dictionary", Kind::kString, "TSV dictionary for the mock");
  c.flags.Add(c.app, "--mock-drop-p", "mock_quote_drop_p", Kind::kNumber, "mock quote drop probability");
  c.flags.Add(c.app, "--mock-seed", "mock_seed", Kind::kU64, "mock seed");
  c.flags.Add(c.app, "--width", "width", Kind::kU64, "parallel requests in flight");
}

Config Merge(const Command& c) {
  Config base = Config::object();
  if (!c.config_path.empty()) base = spl::LoadConfig(c.config_path);
  return spl::MergeConfig(base, c.flags.Overrides());
}

int Run(spl::PipelineMode mode, const Config& cfg) { return spl::RunMode(mode, cfg, std::cerr); }

int MixFewShotCommand(const std::string& train, const std::string& human, const std::string& machine,
                      const std::string& out, const std::string& dev_out) {
  const spl::FewShotMix mix = spl::MixFewShot(spl::ReadDataset(train, spl::Split::kTrain),
                                              spl::ReadDataset(human, spl::Split::kDev),
                                              spl::ReadDataset(machine, spl::Split::kDev));
  spl::WriteDataset(mix.train, out);
  spl::WriteDataset(mix.dev, dev_out);
  std::cerr << "train " << mix.train.size() << " (human " << mix.human_in_train << ", share "
            << mix.human_share_train << "), dev " << mix.dev.size() << " (share "
            << mix.human_share_dev << "), renamed " << mix.renamed << "\n";
  return 0;
}

int ValidateCommand(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw spl::Error(spl::ErrorCode::kIo, "cannot read " + path);
  size_t records = 0;
  size_t bad = 0;
  std::string line;
  size_t lineno = 0;
  std::map<std::string, size_t> seen;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    ++records;
    std::vector<std::string> problems;
    std::string id = "?";
    try {
      const spl::Example e = spl::ExampleFromJson(nlohmann::json::parse(line));
      id = e.id;
      if (auto [it, fresh] = seen.emplace(e.id, lineno); !fresh) {
        problems.push_back("duplicate id (first on line " + std::to_string(it->second) + ")");
      }
      for (auto& v : spl::AlignmentViolations(e)) problems.push_back(std::move(v));
    } catch (const std::exception& x) {
      problems.push_back(x.what());
    }
    if (!problems.empty()) {
      ++bad;
      for (const auto& p : problems) std::cout << "line " << lineno << " id " << id << ": " << p << "\n";
    }
  }
  std::cout << records << " records, " << bad << " with violations\n";
  return bad == 0 ? 0 : 1;
}

int AlignCommand(const std::string& input, const std::string& output, bool check) {
  std::ifstream in(input, std::ios::binary);
  if (!in) throw spl::Error(spl::ErrorCode::kIo, "cannot read " + input);
  std::ofstream file;
  if (!output.empty()) {
    file.open(output, std::ios::binary);
    if (!file) throw spl::Error(spl::ErrorCode::kIo, "cannot write " + output);
  }
  std::ostream& out = output.empty() ? std::cout : file;
  size_t records = 0;
  size_t disagreements = 0;
  size_t failures = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    ++records;
    nlohmann::ordered_json result;
    result["record"] = records - 1;
    try {
      const auto j = nlohmann::json::parse(line);
      const auto src = j.at("src_tokens").get<std::vector<std::string>>();
      const auto tgt = j.at("tgt_tokens").get<std::vector<std::string>>();
      const auto rows = j.at("attention").get<std::vector<std::vector<double>>>();
      std::vector<double> flat;
      for (const auto& r : rows) {
        if (r.size() != src.size()) throw spl::Error(spl::ErrorCode::kShapeMismatch, "ragged attention row");
        flat.insert(flat.end(), r.begin(), r.end());
      }
      const spl::AttentionMatrix attention(rows.size(), src.size(), std::move(flat));
      spl::CheckRowStochastic(attention);
      std::vector<spl::QuotePair> quotes;
      if (j.contains("spans")) {
        for (const auto& s : j["spans"]) {
          if (s.is_array()) {
            quotes.push_back({s.at(0).get<size_t>(), s.at(1).get<size_t>()});
          } else {
            quotes.push_back({s.at("open").get<size_t>(), s.at("close").get<size_t>()});
          }
        }
      } else {
        quotes = spl::FindQuotePairs(src);
      }
      std::vector<std::string> diagnostics;
      const auto alignments = spl::AlignSpans(src, tgt, attention, quotes, &diagnostics);
      nlohmann::ordered_json list = nlohmann::ordered_json::array();
      for (const auto& a : alignments) {
        list.push_back({{"source_span_index", a.source_span_index},
                        {"start_tok", a.start_tok},
                        {"end_tok", a.end_tok},
                        {"method", spl::AlignMethodName(a.method)},
                        {"score", a.score}});
      }
      result["alignments"] = list;
      result["diagnostics"] = diagnostics;
      if (check) {
        const auto expected = spl::oracle::BruteForceAlign(src, tgt, attention, quotes);
        bool same = expected.size() == alignments.size();
        for (size_t i = 0; same && i < expected.size(); ++i) {
          same = expected[i].start_tok == alignments[i].start_tok &&
                 expected[i].end_tok == alignments[i].end_tok && expected[i].method == alignments[i].method;
        }
        result["oracle_agrees"] = same;
        if (!same) {
          ++disagreements;
          std::cerr << "record " << records - 1 << ": oracle disagrees\n";
        }
      }
    } catch (const std::exception& x) {
      ++failures;
      result["error"] = x.what();
    }
    out << result.dump() << "\n";
  }
  std::cerr << records << " records, " << failures << " errors";
  if (check) std::cerr << ", " << disagreements << " oracle disagreements";
  std::cerr << "\n";
  return disagreements == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Localize semantic-parsing datasets across languages"};
  app.require_subcommand(1);

  Command localize{app.add_subcommand("localize", "translate, align and augment a dataset")};
  AddCommon(localize);
  AddBackend(localize);
  {
    auto& f = localize.flags;
    auto* a = localize.app;
    f.Add(a, "--input", "input", Kind::kString, "source-language dataset (JSONL)");
    f.Add(a, "--output", "output", Kind::kString, "localized dataset (JSONL)");
    f.Add(a, "--src-lang", "src_lang", Kind::kString, "source language (default en)");
    f.Add(a, "--tgt-lang", "tgt_lang", Kind::kString, "target language");
    f.Add(a, "--ontology", "ontology", Kind::kString, "target-language ontology (JSON or TSV)");
    f.Add(a, "--split-side", "split_side", Kind::kString, "all|train|eval (default all)");
    f.Add(a, "--overlap", "overlap", Kind::kNumber, "ontology split overlap (default 0.45)");
    f.Add(a, "--split-seed", "split_seed", Kind::kU64, "ontology split seed (default --seed)");
    f.Add(a, "--k", "k", Kind::kU64, "variants per example (default 10)");
    f.Add(a, "--rulepack", "rulepack", Kind::kString, "pre/post-processing rule pack");
    f.Add(a, "--quarantine", "quarantine", Kind::kString, "quarantine JSONL (default <output>.quarantine.jsonl)");
    f.Add(a, "--human-dev", "human_dev", Kind::kString, "human-translated dev set (few-shot)");
    f.Add(a, "--machine-dev", "machine_dev", Kind::kString, "machine-translated dev set (few-shot)");
    f.Add(a, "--dev-output", "dev_output", Kind::kString, "mixed dev set output (few-shot)");
    f.AddBool(a, "--bootstrap", "bootstrap", "build the direct-translation baseline instead");
  }

  Command bootstrap{app.add_subcommand("bootstrap", "direct-translation baseline dataset")};
  AddCommon(bootstrap);
  AddBackend(bootstrap);
  bootstrap.flags.Add(bootstrap.app, "--input", "input", Kind::kString, "source-language dataset");
  bootstrap.flags.Add(bootstrap.app, "--output", "output", Kind::kString, "output dataset");
  bootstrap.flags.Add(bootstrap.app, "--src-lang", "src_lang", Kind::kString, "source language");
  bootstrap.flags.Add(bootstrap.app, "--tgt-lang", "tgt_lang", Kind::kString, "target language");
  bootstrap.flags.Add(bootstrap.app, "--quarantine", "quarantine", Kind::kString, "quarantine JSONL");

  Command bt{app.add_subcommand("backtranslate", "translate a target-language test set back")};
  AddCommon(bt);
  AddBackend(bt);
  bool bt_align = false;
  bt.flags.Add(bt.app, "--input", "input", Kind::kString, "target-language dataset");
  bt.flags.Add(bt.app, "--output", "output", Kind::kString, "back-translated dataset");
  bt.flags.Add(bt.app, "--src-lang", "src_lang", Kind::kString, "language to translate into (default en)");
  bt.flags.Add(bt.app, "--tgt-lang", "tgt_lang", Kind::kString, "language of the input (default: from data)");
  bt.flags.Add(bt.app, "--rulepack", "rulepack", Kind::kString, "rule pack");
  bt.flags.Add(bt.app, "--quarantine", "quarantine", Kind::kString, "quarantine JSONL");
  bt.app->add_flag("--align,!--no-align", bt_align, "keep entity strings via alignment");

  std::string mix_train, mix_human, mix_machine, mix_out, mix_dev_out;
  CLI::App* mix = app.add_subcommand("mix-fewshot", "add human-translated dev data to train and dev");
  mix->add_option("--train", mix_train, "machine-generated train set")->required();
  mix->add_option("--human-dev", mix_human, "human-translated dev set")->required();
  mix->add_option("--machine-dev", mix_machine, "machine-translated dev set")->required();
  mix->add_option("--output", mix_out, "mixed train set")->required();
  mix->add_option("--dev-output", mix_dev_out, "mixed dev set")->required();

  Command eval{app.add_subcommand("evaluate", "exact and structure match")};
  AddCommon(eval);
  eval.flags.Add(eval.app, "--predictions", "predictions", Kind::kString, "JSONL of {id, logical_form}");
  eval.flags.Add(eval.app, "--gold", "gold", Kind::kString, "gold dataset");
  eval.flags.Add(eval.app, "--output", "output", Kind::kString, "per-example CSV");
  eval.flags.Add(eval.app, "--report", "report", Kind::kString, "summary JSON");

  Command sim{app.add_subcommand("similarity", "corpus BLEU and TER")};
  AddCommon(sim);
  sim.flags.Add(sim.app, "--candidates", "candidates", Kind::kString, "one sentence per line");
  sim.flags.Add(sim.app, "--references", "references", Kind::kString, "one sentence per line");
  sim.flags.Add(sim.app, "--output", "output", Kind::kString, "report JSON");
  sim.flags.AddBool(sim.app, "--char-level", "char_level", "score codepoints instead of words");

  Command split{app.add_subcommand("split-ontology", "train/eval ontology split")};
  AddCommon(split);
  split.flags.Add(split.app, "--ontology", "ontology", Kind::kString, "ontology (JSON or TSV)");
  split.flags.Add(split.app, "--lang", "tgt_lang", Kind::kString, "language tag for TSV input");
  split.flags.Add(split.app, "--overlap", "overlap", Kind::kNumber, "shared fraction (default 0.45)");
  split.flags.Add(split.app, "--split-seed", "split_seed", Kind::kU64, "split seed (default --seed)");
  split.flags.Add(split.app, "--train-output", "train_output", Kind::kString, "train-side ontology JSON");
  split.flags.Add(split.app, "--eval-output", "eval_output", Kind::kString, "eval-side ontology JSON");

  Command ptr{app.add_subcommand("ptrgen-check", "gradient check of the pointer-generator math")};
  AddCommon(ptr);
  ptr.flags.Add(ptr.app, "--instances", "instances", Kind::kU64, "random instances (default 100)");
  ptr.flags.Add(ptr.app, "--output", "output", Kind::kString, "report JSON");

  std::string validate_input;
  CLI::App* validate = app.add_subcommand("validate", "check dataset invariants");
  validate->add_option("input", validate_input, "dataset JSONL")->required();

  std::string align_input, align_output;
  bool align_oracle = false;
  CLI::App* align = app.add_subcommand("align", "align spans from recorded attention");
  align->add_option("--input", align_input, "JSONL of {src_tokens, tgt_tokens, attention, spans?}; spans are source quote index pairs, default: quote tokens paired in order")->required();
  align->add_option("--output", align_output, "alignments JSONL (default stdout)");
  align->add_flag("--oracle", align_oracle, "cross-check against the brute-force oracle");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : spl::kExitConfig;
  }

  try {
    if (localize.app->parsed()) {
      const Config cfg = Merge(localize);
      if (cfg.value("bootstrap", false)) return Run(spl::PipelineMode::kBootstrap, cfg);
      const bool few = cfg.contains("human_dev") || cfg.contains("machine_dev");
      return Run(few ? spl::PipelineMode::kLocalizeFewShot : spl::PipelineMode::kLocalizeZeroShot, cfg);
    }
    if (bootstrap.app->parsed()) return Run(spl::PipelineMode::kBootstrap, Merge(bootstrap));
    if (bt.app->parsed()) {
      Config cfg = Merge(bt);
      bool aligned = cfg.value("align", false);
      if (bt.app->count("--align") > 0 || bt.app->count("--no-align") > 0) aligned = bt_align;
      cfg["align"] = aligned;
      return Run(aligned ? spl::PipelineMode::kBacktranslateAligned : spl::PipelineMode::kBacktranslate, cfg);
    }
    if (mix->parsed()) return MixFewShotCommand(mix_train, mix_human, mix_machine, mix_out, mix_dev_out);
    if (eval.app->parsed()) return Run(spl::PipelineMode::kEvaluate, Merge(eval));
    if (sim.app->parsed()) return Run(spl::PipelineMode::kSimilarity, Merge(sim));
    if (split.app->parsed()) return Run(spl::PipelineMode::kSplitOntology, Merge(split));
    if (ptr.app->parsed()) return Run(spl::PipelineMode::kPtrgenCheck, Merge(ptr));
    if (validate->parsed()) return ValidateCommand(validate_input);
    if (align->parsed()) return AlignCommand(align_input, align_output, align_oracle);
  } catch (const spl::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == spl::ErrorCode::kConfig ? spl::kExitConfig : spl::kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return spl::kExitFailure;
  }
  return spl::kExitFailure;
}
