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

#ifndef SPL_HTTP_BACKEND_H_
#define SPL_HTTP_BACKEND_H_

#include <chrono>
#include <string>

#include "spl/nmt.h"

namespace spl {

struct HealthStatus {
  bool ok = false;
  std::string model;
};

// Client for an external translation service speaking the JSON wire
// protocol. Connection failures and 5xx replies map to kBackendUnreachable;
// bodies that violate the response schema map to kMalformedRecord.
class HttpBackend : public TranslationBackend {
 public:
  // `url` is scheme://host:port, e.g. "http://127.0.0.1:8008".
  explicit HttpBackend(std::string url, bool provides_attention = true,
                       std::chrono::milliseconds timeout = std::chrono::seconds(30));

  TranslationResult Translate(const TranslationRequest& request) const override;
  bool ProvidesAttention() const override { return provides_attention_; }
  std::string Name() const override { return "http:" + url_; }

  HealthStatus Health() const;

 private:
  std::string url_;
  bool provides_attention_;
  std::chrono::milliseconds timeout_;
};

}  // namespace spl

#endif  // SPL_HTTP_BACKEND_H_
