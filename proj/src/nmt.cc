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

#include "spl/nmt.h"

#include <atomic>
#include <cmath>
#include <thread>

namespace spl {

AttentionMatrix::AttentionMatrix(size_t rows, size_t cols, std::vector<double> weights)
    : rows_(rows), cols_(cols), weights_(std::move(weights)) {
  if (weights_.size() != rows_ * cols_) {
    throw Error(ErrorCode::kShapeMismatch, "attention weights size != rows * cols");
  }
}

void AttentionMatrix::NormalizeRows() {
  for (size_t r = 0; r < rows_; ++r) {
    double sum = 0.0;
    for (size_t c = 0; c < cols_; ++c) sum += (*this)(r, c);
    if (sum <= 0.0) continue;
    for (size_t c = 0; c < cols_; ++c) (*this)(r, c) /= sum;
  }
}

void CheckRowStochastic(const AttentionMatrix& a) {
  for (size_t r = 0; r < a.rows(); ++r) {
    double sum = 0.0;
    for (double w : a.Row(r)) {
      if (!std::isfinite(w) || w < 0.0 || w > 1.0) {
        throw Error(ErrorCode::kNonStochasticAttention,
                    "row " + std::to_string(r) + " has a weight outside [0, 1]");
      }
      sum += w;
    }
    if (std::abs(sum - 1.0) > kRowSumTolerance) {
      throw Error(ErrorCode::kNonStochasticAttention,
                  "row " + std::to_string(r) + " sums to " + std::to_string(sum));
    }
  }
}

void ValidateResult(const TranslationResult& result, bool want_attention) {
  if (want_attention && !result.attention) {
    throw Error(ErrorCode::kAttentionUnavailable, "backend returned no attention");
  }
  if (!result.attention) return;
  const AttentionMatrix& a = *result.attention;
  if (a.rows() != result.tgt_tokens.size() || a.cols() != result.src_tokens.size()) {
    throw Error(ErrorCode::kShapeMismatch,
                "attention is " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                    ", tokens are " + std::to_string(result.tgt_tokens.size()) + "x" +
                    std::to_string(result.src_tokens.size()));
  }
  CheckRowStochastic(a);
}

TranslationResult Translate(const TranslationBackend& backend, const TranslationRequest& request) {
  if (request.text.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "translation request text is empty");
  }
  if (request.want_attention && !backend.ProvidesAttention()) {
    throw Error(ErrorCode::kAttentionUnavailable, backend.Name() + " does not emit attention");
  }
  TranslationResult result = backend.Translate(request);
  ValidateResult(result, request.want_attention);
  return result;
}

TranslationResult TranslateWithRetry(const TranslationBackend& backend,
                                     const TranslationRequest& request,
                                     const BatchOptions& options) {
  auto backoff = options.initial_backoff;
  for (size_t attempt = 1;; ++attempt) {
    try {
      return Translate(backend, request);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kBackendUnreachable || attempt >= options.attempts) throw;
    }
    std::this_thread::sleep_for(backoff);
    backoff *= 2;
  }
}

void ParallelFor(size_t n, size_t width, const std::function<void(size_t)>& fn) {
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < n; i = next++) fn(i);
  };
  const size_t threads_wanted = std::max<size_t>(1, std::min(width, n));
  std::vector<std::thread> threads;
  for (size_t t = 1; t < threads_wanted; ++t) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();
}

std::vector<BatchOutcome> TranslateBatch(const TranslationBackend& backend,
                                         const std::vector<TranslationRequest>& requests,
                                         const BatchOptions& options) {
  std::vector<std::optional<BatchOutcome>> slots(requests.size());
  ParallelFor(requests.size(), options.width, [&](size_t i) {
    try {
      slots[i] = TranslateWithRetry(backend, requests[i], options);
    } catch (const Error& e) {
      slots[i] = e;
    } catch (const std::exception& e) {
      slots[i] = Error(ErrorCode::kBackendUnreachable, e.what());
    }
  });
  std::vector<BatchOutcome> out;
  out.reserve(requests.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

nlohmann::json RequestToWire(const TranslationRequest& request) {
  return {{"src_lang", request.src_lang},
          {"tgt_lang", request.tgt_lang},
          {"text", request.text},
          {"return_attention", request.want_attention}};
}

TranslationResult ResultFromWire(const nlohmann::json& body) {
  auto bad = [](const std::string& why) {
    return Error(ErrorCode::kMalformedRecord, "translate response: " + why);
  };
  if (!body.is_object()) throw bad("not an object");
  auto string_list = [&](const char* key) {
    if (!body.contains(key) || !body[key].is_array()) throw bad(std::string(key) + " missing");
    std::vector<std::string> out;
    for (const auto& t : body[key]) {
      if (!t.is_string()) throw bad(std::string(key) + " has a non-string entry");
      out.push_back(t.get<std::string>());
    }
    return out;
  };
  TranslationResult r;
  r.src_tokens = string_list("src_tokens");
  r.tgt_tokens = string_list("tgt_tokens");
  if (!body.contains("tgt_text") || !body["tgt_text"].is_string()) throw bad("tgt_text missing");
  r.tgt_text = body["tgt_text"].get<std::string>();
  if (body.contains("attention") && !body["attention"].is_null()) {
    const auto& rows = body["attention"];
    if (!rows.is_array()) throw bad("attention must be a list of rows or null");
    const size_t cols = r.src_tokens.size();
    std::vector<double> w;
    for (const auto& row : rows) {
      if (!row.is_array() || row.size() != cols) throw bad("attention row length != |src_tokens|");
      for (const auto& x : row) {
        if (!x.is_number()) throw bad("attention entry is not a number");
        w.push_back(x.get<double>());
      }
    }
    r.attention = AttentionMatrix(rows.size(), cols, std::move(w));
  }
  return r;
}

nlohmann::json ResultToWire(const TranslationResult& result) {
  nlohmann::json j;
  j["src_tokens"] = result.src_tokens;
  j["tgt_tokens"] = result.tgt_tokens;
  j["tgt_text"] = result.tgt_text;
  if (result.attention) {
    auto rows = nlohmann::json::array();
    for (size_t r = 0; r < result.attention->rows(); ++r) {
      auto row = result.attention->Row(r);
      rows.push_back(std::vector<double>(row.begin(), row.end()));
    }
    j["attention"] = std::move(rows);
  } else {
    j["attention"] = nullptr;
  }
  return j;
}

}  // namespace spl
