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

#ifndef SPL_MOCK_BACKEND_H_
#define SPL_MOCK_BACKEND_H_

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>

#include "spl/nmt.h"

namespace spl {

// Deterministic word-level translator used as a test double. Tokens are
// whitespace-separated; each source token becomes zero or more target
// tokens and the attention row of every target token is one-hot on the
// source token it came from. To make dropped quotes recoverable the mock
// also puts `quote_affinity` weight on an opening quote from the first
// token it precedes, and on a closing quote from the last token it follows,
// before row normalization.
struct MockConfig {
  std::string name = "mock";
  // Source word -> target text (may be several words or empty). Lookup is
  // exact, then on the lowercased word; unknown words pass through.
  std::map<std::string, std::string> dictionary;
  bool reverse = false;
  // Each quote token is dropped independently with this probability.
  double quote_drop_p = 0.0;
  // Source tokens removed from the output.
  std::set<std::string> delete_tokens;
  bool emit_attention = true;
  double quote_affinity = 0.5;
  uint64_t seed = 0;

  // identity | dictionary | reversal | quote-dropping | placeholder-deletion
  static MockConfig Preset(std::string_view mode);
};

class MockBackend : public TranslationBackend {
 public:
  explicit MockBackend(MockConfig config) : config_(std::move(config)) {}

  // The quote-dropping draws are seeded from the config seed (or the
  // request's "seed" option) and the request text, so equal requests give
  // equal results.
  TranslationResult Translate(const TranslationRequest& request) const override;
  bool ProvidesAttention() const override { return config_.emit_attention; }
  std::string Name() const override { return config_.name; }

  const MockConfig& config() const { return config_; }

 private:
  MockConfig config_;
};

// Reads "source \t target" lines.
std::map<std::string, std::string> LoadDictionary(const std::string& path);

}  // namespace spl

#endif  // SPL_MOCK_BACKEND_H_
