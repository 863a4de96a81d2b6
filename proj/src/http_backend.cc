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

#include "spl/http_backend.h"

#include "httplib.h"

namespace spl {
namespace {

httplib::Client MakeClient(const std::string& url, std::chrono::milliseconds timeout) {
  httplib::Client client(url);
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);
  return client;
}

}  // namespace

HttpBackend::HttpBackend(std::string url, bool provides_attention,
                         std::chrono::milliseconds timeout)
    : url_(std::move(url)), provides_attention_(provides_attention), timeout_(timeout) {}

TranslationResult HttpBackend::Translate(const TranslationRequest& request) const {
  httplib::Client client = MakeClient(url_, timeout_);
  auto res = client.Post("/translate", RequestToWire(request).dump(), "application/json");
  if (!res) {
    throw Error(ErrorCode::kBackendUnreachable,
                url_ + ": " + httplib::to_string(res.error()));
  }
  if (res->status >= 500) {
    throw Error(ErrorCode::kBackendUnreachable,
                url_ + " replied " + std::to_string(res->status) + ": " + res->body);
  }
  if (res->status != 200) {
    throw Error(ErrorCode::kInvalidArgument,
                url_ + " rejected request with " + std::to_string(res->status) + ": " + res->body);
  }
  nlohmann::json body;
  try {
    body = nlohmann::json::parse(res->body);
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::kMalformedRecord, "translate response is not JSON: " + std::string(ex.what()));
  }
  return ResultFromWire(body);
}

HealthStatus HttpBackend::Health() const {
  httplib::Client client = MakeClient(url_, timeout_);
  auto res = client.Get("/health");
  if (!res) {
    throw Error(ErrorCode::kBackendUnreachable, url_ + ": " + httplib::to_string(res.error()));
  }
  HealthStatus status;
  if (res->status != 200) return status;
  try {
    auto body = nlohmann::json::parse(res->body);
    status.ok = body.value("ok", false);
    status.model = body.value("model", "");
  } catch (const nlohmann::json::exception&) {
    status.ok = false;
  }
  return status;
}

}  // namespace spl
