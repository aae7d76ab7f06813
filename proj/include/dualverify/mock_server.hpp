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

// Deterministic offline stand-ins for both verdict sources.
//
// fixture mode: responses are looked up by post id in a table of raw JSON
// results, served verbatim. Misses fall back to an NEI verdict or a Pristine result.
//
// seeded mode: every response is a pure function of (seed, request_id).
// Draws hash (seed, request_id, purpose) into [0,1) and compare against the
// configured error rates. Fixture entries, when also configured, win.
//
// If a post carries source_meta "gold" (three-way label) or "gold_class"
// (manipulation class), the seeded mock uses it as the ground truth that the
// error rates perturb; otherwise the truth itself is drawn from the hash.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <utility>

#include "httplib.h"

#include "dualverify/error.hpp"
#include "dualverify/hash.hpp"
#include "dualverify/json_io.hpp"
#include "dualverify/protocol.hpp"
#include "dualverify/types.hpp"

namespace dualverify {

struct ErrorRates {
  double nei_bias = 0.0;          // probability of answering NEI regardless
  double miss_rate = 0.0;         // manipulated content reported as pristine
  double false_alarm_rate = 0.0;  // pristine content reported as manipulated
};

// Test hooks for exercising client retry and timeout paths.
struct FaultInjection {
  int unavailable_first_n = 0;  // first n requests per endpoint get 503
  int latency_ms = 0;           // added before every response
};

struct FixtureEntry {
  std::optional<Json> factcheck;
  std::optional<Json> manipulation;
};

enum class MockMode { kFixture, kSeeded };

struct MockProfile {
  MockMode mode = MockMode::kFixture;
  std::optional<std::map<std::string, FixtureEntry>> fixture_table;
  std::optional<std::uint64_t> seed;
  std::optional<ErrorRates> error_rates;
  FaultInjection faults;
};

inline void validate(const MockProfile& profile) {
  if (profile.mode == MockMode::kFixture && !profile.fixture_table) {
    throw ValidationError("fixture mode requires fixture_table");
  }
  if (profile.mode == MockMode::kSeeded && !profile.seed) {
    throw ValidationError("seeded mode requires seed");
  }
  if (profile.error_rates) {
    const auto& r = *profile.error_rates;
    if (!in_unit_interval(r.nei_bias) || !in_unit_interval(r.miss_rate) ||
        !in_unit_interval(r.false_alarm_rate)) {
      throw ValidationError("error rates must lie in [0,1]");
    }
  }
  if (profile.faults.unavailable_first_n < 0 || profile.faults.latency_ms < 0) {
    throw ValidationError("fault injection values must be >= 0");
  }
}

inline void from_json(const Json& j, MockProfile& p) {
  auto mode = detail::field<std::string>(j, "mode");
  if (mode == "fixture") {
    p.mode = MockMode::kFixture;
  } else if (mode == "seeded") {
    p.mode = MockMode::kSeeded;
  } else {
    throw ParseError("unknown mock mode '" + mode + "'");
  }
  p.fixture_table.reset();
  if (auto* table = detail::optional_field(j, "fixture_table")) {
    if (!table->is_object()) throw ParseError("fixture_table must be an object");
    std::map<std::string, FixtureEntry> entries;
    for (const auto& [id, entry] : table->items()) {
      FixtureEntry e;
      if (auto* f = detail::optional_field(entry, "factcheck")) e.factcheck = *f;
      if (auto* m = detail::optional_field(entry, "manipulation")) {
        e.manipulation = *m;
      }
      entries.emplace(id, std::move(e));
    }
    p.fixture_table = std::move(entries);
  }
  p.seed.reset();
  if (auto* s = detail::optional_field(j, "seed")) {
    p.seed = detail::get_as<std::uint64_t>(*s, "seed");
  }
  p.error_rates.reset();
  if (auto* r = detail::optional_field(j, "error_rates")) {
    ErrorRates rates;
    rates.nei_bias = r->value("nei_bias", 0.0);
    rates.miss_rate = r->value("miss_rate", 0.0);
    rates.false_alarm_rate = r->value("false_alarm_rate", 0.0);
    p.error_rates = rates;
  }
  p.faults = {};
  if (auto* f = detail::optional_field(j, "faults")) {
    p.faults.unavailable_first_n = f->value("unavailable_first_n", 0);
    p.faults.latency_ms = f->value("latency_ms", 0);
  }
}

inline void to_json(Json& j, const MockProfile& p) {
  j = Json{{"mode", p.mode == MockMode::kFixture ? "fixture" : "seeded"}};
  if (p.fixture_table) {
    Json table = Json::object();
    for (const auto& [id, e] : *p.fixture_table) {
      Json entry = Json::object();
      if (e.factcheck) entry["factcheck"] = *e.factcheck;
      if (e.manipulation) entry["manipulation"] = *e.manipulation;
      table[id] = std::move(entry);
    }
    j["fixture_table"] = std::move(table);
  }
  if (p.seed) j["seed"] = *p.seed;
  if (p.error_rates) {
    j["error_rates"] = Json{{"nei_bias", p.error_rates->nei_bias},
                            {"miss_rate", p.error_rates->miss_rate},
                            {"false_alarm_rate", p.error_rates->false_alarm_rate}};
  }
  if (p.faults.unavailable_first_n != 0 || p.faults.latency_ms != 0) {
    j["faults"] = Json{{"unavailable_first_n", p.faults.unavailable_first_n},
                       {"latency_ms", p.faults.latency_ms}};
  }
}

// ---- response generation (no I/O) -----------------------------------------

class MockResponder {
 public:
  explicit MockResponder(MockProfile profile) : profile_(std::move(profile)) {
    validate(profile_);
  }

  const MockProfile& profile() const { return profile_; }

  std::string factcheck(const FactCheckRequest& req) const {
    if (auto* entry = lookup(req.post.id); entry && entry->factcheck) {
      return canonical_dump(*entry->factcheck);
    }
    if (profile_.mode == MockMode::kSeeded) {
      return encode(seeded_factcheck(req));
    }
    FactCheckResult fallback;
    fallback.verdict = ThreeWayLabel::kNei;
    fallback.reasoning = {"no fixture for post '" + req.post.id + "'"};
    return encode(fallback);
  }

  std::string manipulation(const ManipulationRequest& req) const {
    if (auto* entry = lookup(req.post.id); entry && entry->manipulation) {
      return canonical_dump(*entry->manipulation);
    }
    if (profile_.mode == MockMode::kSeeded) {
      return encode(seeded_manipulation(req));
    }
    return encode(ManipulationResult{});
  }

 private:
  const FixtureEntry* lookup(const std::string& id) const {
    if (!profile_.fixture_table) return nullptr;
    auto it = profile_.fixture_table->find(id);
    return it == profile_.fixture_table->end() ? nullptr : &it->second;
  }

  ErrorRates rates() const { return profile_.error_rates.value_or(ErrorRates{}); }

  double draw(const std::string& request_id, std::string_view purpose) const {
    return unit_interval_hash(std::to_string(*profile_.seed) + ":" + request_id +
                              ":" + std::string(purpose));
  }

  std::size_t pick(const std::string& request_id, std::string_view purpose,
                   std::size_t n) const {
    auto i = static_cast<std::size_t>(draw(request_id, purpose) *
                                      static_cast<double>(n));
    return std::min(i, n - 1);
  }

  static double round3(double v) { return std::round(v * 1000.0) / 1000.0; }

  static std::optional<std::string> meta(const Post& post, const char* key) {
    if (!post.source_meta) return std::nullopt;
    auto it = post.source_meta->find(key);
    if (it == post.source_meta->end()) return std::nullopt;
    return it->second;
  }

  FactCheckResult seeded_factcheck(const FactCheckRequest& req) const {
    const auto& rid = req.request_id;
    ThreeWayLabel verdict = kAllThreeWayLabels[pick(rid, "verdict", 3)];
    if (auto gold = meta(req.post, "gold")) {
      if (auto g = parse_three_way(*gold)) verdict = *g;
    }
    if (draw(rid, "nei") < rates().nei_bias) verdict = ThreeWayLabel::kNei;

    FactCheckResult out;
    out.verdict = verdict;
    out.confidence = round3(0.5 + 0.5 * draw(rid, "confidence"));
    auto hits = static_cast<std::int64_t>(pick(rid, "hits", 9)) + 1;
    if (verdict == ThreeWayLabel::kNei) hits = 0;
    out.tool_trace.push_back({Tool::kWebSearch, req.post.text, hits});
    if (req.post.image) {
      out.tool_trace.push_back(
          {Tool::kReverseImageSearch, req.post.image->locator, hits});
    }
    out.reasoning.push_back("searched the web for the claim text");
    if (verdict != ThreeWayLabel::kNei) {
      EvidenceItem item;
      item.source = "https://evidence.example/" + rid.substr(0, 16);
      item.snippet = "synthetic evidence for post " + req.post.id;
      item.retrieved_at = "2024-06-01T00:00:00Z";
      item.stance = verdict == ThreeWayLabel::kSupported ? Stance::kSupports
                                                         : Stance::kRefutes;
      out.evidence.push_back(std::move(item));
      out.reasoning.push_back(verdict == ThreeWayLabel::kSupported
                                  ? "retrieved evidence supports the claim"
                                  : "retrieved evidence contradicts the claim");
    } else {
      out.reasoning.push_back("no conclusive evidence found");
    }
    return out;
  }

  ManipulationResult seeded_manipulation(const ManipulationRequest& req) const {
    const auto& rid = req.request_id;
    auto random_fake = [&](std::string_view purpose) {
      return kAllManipulationClasses[1 + pick(rid, purpose, 8)];
    };
    ManipulationClass truth = draw(rid, "fake") < 0.5
                                  ? ManipulationClass::kPristine
                                  : random_fake("class");
    if (auto gold = meta(req.post, "gold_class")) {
      if (auto g = parse_manipulation_class(*gold)) truth = *g;
    }
    ManipulationClass klass = truth;
    if (is_manipulated(truth)) {
      if (draw(rid, "miss") < rates().miss_rate) klass = ManipulationClass::kPristine;
    } else if (draw(rid, "false_alarm") < rates().false_alarm_rate) {
      klass = random_fake("false_alarm_class");
    }

    auto tokens = whitespace_tokens(req.post.text);
    if (tokens.empty() && has_text_edit(klass)) {
      klass = has_image_edit(klass) ? ManipulationClass::kFS
                                    : ManipulationClass::kPristine;
    }

    ManipulationResult out;
    out.klass = klass;
    out.is_fake = is_manipulated(klass);
    if (has_image_edit(klass)) {
      double x1 = round3(0.05 + 0.45 * draw(rid, "box_x"));
      double y1 = round3(0.05 + 0.45 * draw(rid, "box_y"));
      double w = round3(0.1 + 0.35 * draw(rid, "box_w"));
      double h = round3(0.1 + 0.35 * draw(rid, "box_h"));
      out.boxes.push_back({x1, y1, x1 + w, y1 + h});
    }
    if (!tokens.empty()) {
      TokenLabelSeq seq{tokens, std::vector<int>(tokens.size(), 0)};
      if (has_text_edit(klass)) seq.labels[pick(rid, "token", tokens.size())] = 1;
      out.token_labels = std::move(seq);
    }
    return out;
  }

  MockProfile profile_;
};

struct MockStats {
  std::uint64_t factcheck_requests = 0;
  std::uint64_t manipulation_requests = 0;
};

// ---- HTTP service ----------------------------------------------------------

class MockServer {
 public:
  explicit MockServer(MockProfile profile) : responder_(std::move(profile)) {
    server_.set_socket_options([](socket_t sock) {
      int yes = 1;
      setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const void*>(&yes),
                 sizeof(yes));
    });
    install_routes();
  }

  MockServer(const MockServer&) = delete;
  MockServer& operator=(const MockServer&) = delete;

  ~MockServer() { stop(); }

  // Binds and starts serving on a background thread. port 0 picks a free
  // port. Returns the bound port.
  int start(int port = 0, const std::string& host = "127.0.0.1") {
    if (thread_.joinable()) throw BindError("mock server already running");
    int bound = port == 0 ? server_.bind_to_any_port(host)
                          : (server_.bind_to_port(host, port) ? port : -1);
    if (bound <= 0) {
      throw BindError("cannot bind " + host + ":" + std::to_string(port));
    }
    port_ = bound;
    host_ = host;
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
    return port_;
  }

  void stop() {
    if (thread_.joinable()) {
      server_.stop();
      thread_.join();
    }
  }

  int port() const { return port_; }
  std::string base_url() const {
    return "http://" + host_ + ":" + std::to_string(port_);
  }

  MockStats stats() const {
    return {factcheck_requests_.load(), manipulation_requests_.load()};
  }

  const MockResponder& responder() const { return responder_; }

 private:
  static void send_error(httplib::Response& res, int status,
                         const std::string& message) {
    res.status = status;
    res.set_content(canonical_dump(Json{{"error", message}}), "application/json");
  }

  // Returns true when the request was answered with an injected fault.
  bool inject_faults(std::atomic<int>& unavailable_served,
                     httplib::Response& res) const {
    const auto& faults = responder_.profile().faults;
    if (faults.latency_ms > 0) {
      std::this_thread::sleep_for(std::chrono::milliseconds(faults.latency_ms));
    }
    if (unavailable_served.fetch_add(1) < faults.unavailable_first_n) {
      send_error(res, 503, "injected unavailability");
      return true;
    }
    return false;
  }

  template <typename Request, typename Respond>
  void handle(const httplib::Request& http_req, httplib::Response& res,
              std::atomic<std::uint64_t>& counter,
              std::atomic<int>& unavailable_served, Respond respond) const {
    counter.fetch_add(1);
    if (inject_faults(unavailable_served, res)) return;
    Request req;
    try {
      req = decode_text<Request>(http_req.body);
    } catch (const Error& e) {
      send_error(res, 400, e.what());
      return;
    }
    res.status = 200;
    res.set_content(respond(req), "application/json");
  }

  void install_routes() {
    server_.Post(std::string(kFactCheckPath),
                 [this](const httplib::Request& req, httplib::Response& res) {
                   handle<FactCheckRequest>(
                       req, res, factcheck_requests_, factcheck_unavailable_,
                       [this](const FactCheckRequest& r) {
                         return responder_.factcheck(r);
                       });
                 });
    server_.Post(std::string(kManipulationPath),
                 [this](const httplib::Request& req, httplib::Response& res) {
                   handle<ManipulationRequest>(
                       req, res, manipulation_requests_,
                       manipulation_unavailable_,
                       [this](const ManipulationRequest& r) {
                         return responder_.manipulation(r);
                       });
                 });
    server_.Get(std::string(kHealthPath),
                [](const httplib::Request&, httplib::Response& res) {
                  res.set_content(R"({"status":"ok"})", "application/json");
                });
    server_.Get(std::string(kStatsPath),
                [this](const httplib::Request&, httplib::Response& res) {
                  auto s = stats();
                  res.set_content(
                      canonical_dump(Json{
                          {"factcheck_requests", s.factcheck_requests},
                          {"manipulation_requests", s.manipulation_requests}}),
                      "application/json");
                });
  }

  MockResponder responder_;
  httplib::Server server_;
  std::thread thread_;
  std::string host_ = "127.0.0.1";
  int port_ = 0;
  std::atomic<std::uint64_t> factcheck_requests_{0};
  std::atomic<std::uint64_t> manipulation_requests_{0};
  std::atomic<int> factcheck_unavailable_{0};
  std::atomic<int> manipulation_unavailable_{0};
};

inline std::unique_ptr<MockServer> serve_mock(MockProfile profile, int port = 0) {
  auto server = std::make_unique<MockServer>(std::move(profile));
  server->start(port);
  return server;
}

}  // namespace dualverify
