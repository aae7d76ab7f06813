// Copyright 2026 The dualverify Authors.
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

#pragma once

// HTTP/JSON wire protocol to the two verdict sources.
//
//   POST /v1/factcheck     FactCheckRequest    -> FactCheckResult
//   POST /v1/manipulation  ManipulationRequest -> ManipulationResult
//   GET  /v1/health        {"status":"ok"}
//   GET  /v1/stats         {"factcheck_requests":n,"manipulation_requests":m}
//
// 400 carries {"error": ...} and is not retried; 503 and transport failures
// are retried with exponential backoff.

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <utility>

#include "httplib.h"

#include "dualverify/error.hpp"
#include "dualverify/hash.hpp"
#include "dualverify/json_io.hpp"
#include "dualverify/types.hpp"

namespace dualverify {

inline constexpr std::string_view kFactCheckPath = "/v1/factcheck";
inline constexpr std::string_view kManipulationPath = "/v1/manipulation";
inline constexpr std::string_view kHealthPath = "/v1/health";
inline constexpr std::string_view kStatsPath = "/v1/stats";

struct FactCheckRequest {
  Post post;
  std::optional<ManipulationResult> manipulation_context;
  std::string request_id;
};

struct ManipulationRequest {
  Post post;
  std::string request_id;
};

// The hashed payload is {id, text, image (locator only), manipulation_context}
// with sorted keys; absent optionals are omitted.
inline std::string compute_request_id(
    const Post& post,
    const std::optional<ManipulationResult>& manipulation_context) {
  Json payload{{"id", post.id}, {"text", post.text}};
  if (post.image) payload["image"] = post.image->locator;
  if (manipulation_context) {
    payload["manipulation_context"] = *manipulation_context;
  }
  return sha256_hex(canonical_dump(payload));
}

inline FactCheckRequest make_factcheck_request(
    Post post, std::optional<ManipulationResult> context = std::nullopt) {
  FactCheckRequest req{std::move(post), std::move(context), {}};
  req.request_id = compute_request_id(req.post, req.manipulation_context);
  return req;
}

inline ManipulationRequest make_manipulation_request(Post post) {
  ManipulationRequest req{std::move(post), {}};
  req.request_id = compute_request_id(req.post, std::nullopt);
  return req;
}

inline void to_json(Json& j, const FactCheckRequest& v) {
  j = Json{{"post", v.post}, {"request_id", v.request_id}};
  if (v.manipulation_context) j["manipulation_context"] = *v.manipulation_context;
}
inline void from_json(const Json& j, FactCheckRequest& v) {
  v.post = detail::field<Post>(j, "post");
  v.request_id = detail::field<std::string>(j, "request_id");
  v.manipulation_context.reset();
  if (auto* c = detail::optional_field(j, "manipulation_context")) {
    v.manipulation_context = c->get<ManipulationResult>();
  }
}
inline void validate(const FactCheckRequest& req) {
  validate(req.post);
  if (req.manipulation_context) validate(*req.manipulation_context);
  if (req.request_id != compute_request_id(req.post, req.manipulation_context)) {
    throw ValidationError("request_id does not match request content");
  }
}

inline void to_json(Json& j, const ManipulationRequest& v) {
  j = Json{{"post", v.post}, {"request_id", v.request_id}};
}
inline void from_json(const Json& j, ManipulationRequest& v) {
  v.post = detail::field<Post>(j, "post");
  v.request_id = detail::field<std::string>(j, "request_id");
}
inline void validate(const ManipulationRequest& req) {
  validate(req.post);
  if (req.request_id != compute_request_id(req.post, std::nullopt)) {
    throw ValidationError("request_id does not match request content");
  }
}

struct BackendConfig {
  std::string base_url = "http://127.0.0.1:8700";
  int timeout_ms = 30000;
  int max_retries = 2;
  int backoff_base_ms = 200;
};

inline void validate(const BackendConfig& cfg) {
  if (cfg.base_url.rfind("http://", 0) != 0 &&
      cfg.base_url.rfind("https://", 0) != 0) {
    throw ValidationError("base_url must start with http:// or https://");
  }
  if (cfg.timeout_ms <= 0) throw ValidationError("timeout_ms must be > 0");
  if (cfg.max_retries < 0) throw ValidationError("max_retries must be >= 0");
  if (cfg.backoff_base_ms <= 0) {
    throw ValidationError("backoff_base_ms must be > 0");
  }
}

// Delay before retry k (k = 0 for the first retry).
inline std::chrono::milliseconds backoff_delay(const BackendConfig& cfg, int k) {
  return std::chrono::milliseconds(static_cast<std::int64_t>(cfg.backoff_base_ms)
                                   << k);
}

// Response validation shared by the client and the cache replay path. A body
// that does not decode into a value passing every invariant is a
// ProtocolError.
inline FactCheckResult decode_factcheck_response(std::string_view body) {
  try {
    return decode_text<FactCheckResult>(body);
  } catch (const ProtocolError&) {
    throw;
  } catch (const Error& e) {
    throw ProtocolError(std::string("invalid factcheck response: ") + e.what());
  }
}

inline ManipulationResult decode_manipulation_response(std::string_view body,
                                                       const Post& post) {
  try {
    auto result = decode_text<ManipulationResult>(body);
    if (result.token_labels) {
      validate_tokens_against(*result.token_labels, post.text);
    }
    return result;
  } catch (const ProtocolError&) {
    throw;
  } catch (const Error& e) {
    throw ProtocolError(std::string("invalid manipulation response: ") +
                        e.what());
  }
}

using Sleeper = std::function<void(std::chrono::milliseconds)>;

inline void real_sleep(std::chrono::milliseconds d) {
  std::this_thread::sleep_for(d);
}

// Stateless client: each call opens its own connection.
class BackendClient {
 public:
  explicit BackendClient(BackendConfig cfg, Sleeper sleeper = real_sleep)
      : cfg_(std::move(cfg)), sleeper_(std::move(sleeper)) {
    validate(cfg_);
    auto scheme_end = cfg_.base_url.find("://");
    auto path_start = cfg_.base_url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) {
      origin_ = cfg_.base_url;
    } else {
      origin_ = cfg_.base_url.substr(0, path_start);
      prefix_ = cfg_.base_url.substr(path_start);
      while (!prefix_.empty() && prefix_.back() == '/') prefix_.pop_back();
    }
  }

  const BackendConfig& config() const { return cfg_; }

  // POSTs with retries and returns the raw 200 body.
  std::string post(std::string_view path, const std::string& body) const {
    std::string url = prefix_ + std::string(path);
    std::string last_failure;
    bool last_was_timeout = false;
    for (int attempt = 0; attempt <= cfg_.max_retries; ++attempt) {
      if (attempt > 0) sleeper_(backoff_delay(cfg_, attempt - 1));
      auto client = make_client();
      auto res = client.Post(url, body, "application/json");
      if (!res) {
        auto err = res.error();
        last_was_timeout = err == httplib::Error::Read ||
                           err == httplib::Error::Write ||
                           err == httplib::Error::ConnectionTimeout;
        last_failure = httplib::to_string(err);
        continue;
      }
      if (res->status == 200) return res->body;
      if (res->status == 503) {
        last_was_timeout = false;
        last_failure = "503 service unavailable";
        continue;
      }
      throw ProtocolError(cfg_.base_url + std::string(path) + " returned " +
                          std::to_string(res->status) + ": " + res->body);
    }
    std::string msg = cfg_.base_url + std::string(path) + " failed after " +
                      std::to_string(cfg_.max_retries + 1) +
                      " attempt(s): " + last_failure;
    if (last_was_timeout) throw TimeoutError(msg);
    throw BackendUnavailable(msg);
  }

  std::string get(std::string_view path) const {
    auto client = make_client();
    auto res = client.Get(prefix_ + std::string(path));
    if (!res) {
      throw BackendUnavailable(cfg_.base_url + std::string(path) + ": " +
                               httplib::to_string(res.error()));
    }
    if (res->status != 200) {
      throw ProtocolError(cfg_.base_url + std::string(path) + " returned " +
                          std::to_string(res->status));
    }
    return res->body;
  }

  FactCheckResult check_fact(const FactCheckRequest& req) const {
    return decode_factcheck_response(
        post(kFactCheckPath, canonical_dump(Json(req))));
  }

  ManipulationResult detect_manipulation(const ManipulationRequest& req) const {
    return decode_manipulation_response(
        post(kManipulationPath, canonical_dump(Json(req))), req.post);
  }

  bool healthy() const {
    try {
      auto j = parse_json(get(kHealthPath));
      return j.value("status", "") == "ok";
    } catch (const Error&) {
      return false;
    }
  }

  Json stats() const { return parse_json(get(kStatsPath)); }

 private:
  httplib::Client make_client() const {
    httplib::Client client(origin_);
    auto timeout = std::chrono::milliseconds(cfg_.timeout_ms);
    client.set_connection_timeout(timeout);
    client.set_read_timeout(timeout);
    client.set_write_timeout(timeout);
    client.set_keep_alive(false);
    return client;
  }

  BackendConfig cfg_;
  Sleeper sleeper_;
  std::string origin_;
  std::string prefix_;
};

inline FactCheckResult check_fact(const BackendConfig& cfg,
                                  const FactCheckRequest& req) {
  return BackendClient(cfg).check_fact(req);
}

inline ManipulationResult detect_manipulation(const BackendConfig& cfg,
                                              const ManipulationRequest& req) {
  return BackendClient(cfg).detect_manipulation(req);
}

}  // namespace dualverify
