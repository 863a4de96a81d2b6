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

#ifndef SPL_NMT_H_
#define SPL_NMT_H_

#include <chrono>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "spl/error.h"

namespace spl {

// Target x source cross-attention, dense row-major.
class AttentionMatrix {
 public:
  AttentionMatrix() = default;
  AttentionMatrix(size_t rows, size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), weights_(rows * cols, fill) {}
  AttentionMatrix(size_t rows, size_t cols, std::vector<double> weights);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }

  double operator()(size_t r, size_t c) const { return weights_[r * cols_ + c]; }
  double& operator()(size_t r, size_t c) { return weights_[r * cols_ + c]; }

  std::span<const double> Row(size_t r) const {
    return std::span<const double>(weights_).subspan(r * cols_, cols_);
  }
  const std::vector<double>& weights() const { return weights_; }

  // Scales each row to sum to one; rows summing to zero are left alone.
  void NormalizeRows();

  bool operator==(const AttentionMatrix&) const = default;

 private:
  size_t rows_ = 0;
  size_t cols_ = 0;
  std::vector<double> weights_;
};

inline constexpr double kRowSumTolerance = 1e-3;

// Throws Error(kNonStochasticAttention) unless every entry is finite and in
// [0, 1] and every row sums to 1 within kRowSumTolerance.
void CheckRowStochastic(const AttentionMatrix& a);

struct TranslationRequest {
  std::string src_lang;
  std::string tgt_lang;
  std::string text;
  bool want_attention = false;
  std::map<std::string, std::string> options;
};

struct TranslationResult {
  std::vector<std::string> src_tokens;
  std::vector<std::string> tgt_tokens;
  std::string tgt_text;
  std::optional<AttentionMatrix> attention;
};

class TranslationBackend {
 public:
  virtual ~TranslationBackend() = default;

  // Must be safe to call concurrently.
  virtual TranslationResult Translate(const TranslationRequest& request) const = 0;
  virtual bool ProvidesAttention() const = 0;
  virtual std::string Name() const = 0;
};

// Calls the backend and enforces the result contract: attention present when
// requested (kAttentionUnavailable), shaped |tgt| x |src| (kShapeMismatch)
// and row-stochastic (kNonStochasticAttention). Bad results are rejected,
// never repaired.
TranslationResult Translate(const TranslationBackend& backend, const TranslationRequest& request);

void ValidateResult(const TranslationResult& result, bool want_attention);

struct BatchOptions {
  size_t width = 8;
  size_t attempts = 3;
  std::chrono::milliseconds initial_backoff{100};
};

using BatchOutcome = std::variant<TranslationResult, Error>;

// Translate() with retries on kBackendUnreachable, doubling the backoff
// after each failed attempt.
TranslationResult TranslateWithRetry(const TranslationBackend& backend,
                                     const TranslationRequest& request,
                                     const BatchOptions& options = {});

// Runs fn(0) .. fn(n - 1) on at most `width` threads. fn must not throw.
void ParallelFor(size_t n, size_t width, const std::function<void(size_t)>& fn);

// Translates requests with at most `width` in flight. Transient failures
// (kBackendUnreachable) are retried with exponential backoff; other errors
// are returned immediately. Outcomes are in request order.
std::vector<BatchOutcome> TranslateBatch(const TranslationBackend& backend,
                                         const std::vector<TranslationRequest>& requests,
                                         const BatchOptions& options = {});

// Wire protocol (POST /translate, GET /health).
nlohmann::json RequestToWire(const TranslationRequest& request);
// Throws Error(kMalformedRecord) when the body violates the response schema.
TranslationResult ResultFromWire(const nlohmann::json& body);
nlohmann::json ResultToWire(const TranslationResult& result);

}  // namespace spl

#endif  // SPL_NMT_H_
