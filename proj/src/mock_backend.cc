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

#include "spl/mock_backend.h"

#include <algorithm>
#include <fstream>

#include "spl/preproc.h"
#include "spl/rng.h"
#include "spl/unicode.h"

namespace spl {

MockConfig MockConfig::Preset(std::string_view mode) {
  MockConfig c;
  c.name = "mock-" + std::string(mode);
  if (mode == "identity" || mode == "dictionary") {
    // dictionary entries are supplied by the caller
  } else if (mode == "reversal") {
    c.reverse = true;
  } else if (mode == "quote-dropping") {
    c.quote_drop_p = 0.5;
  } else if (mode == "placeholder-deletion") {
    c.delete_tokens = {"PARAM_1"};
    c.emit_attention = false;
  } else {
    throw Error(ErrorCode::kConfig, "unknown mock mode '" + std::string(mode) + "'");
  }
  return c;
}

TranslationResult MockBackend::Translate(const TranslationRequest& request) const {
  TranslationResult r;
  r.src_tokens = unicode::SplitWhitespace(request.text);
  const auto& src = r.src_tokens;

  uint64_t seed = config_.seed;
  if (auto it = request.options.find("seed"); it != request.options.end()) {
    seed = std::stoull(it->second);
  }
  Rng rng(MixSeed(seed, request.text));

  // Quote parity: odd occurrences open a region, even ones close it.
  std::vector<int> quote_role(src.size(), 0);  // +1 open, -1 close
  int parity = 0;
  for (size_t i = 0; i < src.size(); ++i) {
    if (IsQuoteLike(src[i])) quote_role[i] = (parity++ % 2 == 0) ? 1 : -1;
  }

  struct Piece {
    std::string token;
    size_t source;
    bool first;
    bool last;
  };
  std::vector<Piece> pieces;
  for (size_t i = 0; i < src.size(); ++i) {
    const std::string& tok = src[i];
    if (quote_role[i] != 0) {
      // Always draw so the stream does not depend on p.
      const bool drop = rng.Uniform() < config_.quote_drop_p;
      if (!drop) pieces.push_back({"\"", i, true, true});
      continue;
    }
    if (config_.delete_tokens.count(tok)) continue;
    std::vector<std::string> words = {tok};
    auto it = config_.dictionary.find(tok);
    if (it == config_.dictionary.end()) it = config_.dictionary.find(unicode::ToLower(tok));
    if (it != config_.dictionary.end()) words = unicode::SplitWhitespace(it->second);
    for (size_t w = 0; w < words.size(); ++w) {
      pieces.push_back({words[w], i, w == 0, w + 1 == words.size()});
    }
  }
  if (config_.reverse) std::reverse(pieces.begin(), pieces.end());

  for (const Piece& p : pieces) r.tgt_tokens.push_back(p.token);
  r.tgt_text = unicode::Join(r.tgt_tokens, " ");

  if (config_.emit_attention && request.want_attention) {
    AttentionMatrix a(pieces.size(), src.size());
    for (size_t t = 0; t < pieces.size(); ++t) {
      const Piece& p = pieces[t];
      a(t, p.source) = 1.0;
      if (quote_role[p.source] != 0) continue;
      if (p.first && p.source > 0 && quote_role[p.source - 1] == 1) {
        a(t, p.source - 1) = config_.quote_affinity;
      }
      if (p.last && p.source + 1 < src.size() && quote_role[p.source + 1] == -1) {
        a(t, p.source + 1) = config_.quote_affinity;
      }
    }
    a.NormalizeRows();
    r.attention = std::move(a);
  }
  return r;
}

std::map<std::string, std::string> LoadDictionary(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open dictionary " + path);
  std::map<std::string, std::string> dict;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      throw Error(ErrorCode::kMalformedRecord, "dictionary line without tab: " + line);
    }
    dict[line.substr(0, tab)] = line.substr(tab + 1);
  }
  return dict;
}

}  // namespace spl
