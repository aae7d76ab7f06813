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

// End-to-end runner. Backend calls go through a content-addressed response
// cache before routing and fusion. Per-post failures are recorded, never
// turned into NEI.

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "dualverify/error.hpp"
#include "dualverify/eval.hpp"
#include "dualverify/fusion.hpp"
#include "dualverify/ingest.hpp"
#include "dualverify/json_io.hpp"
#include "dualverify/protocol.hpp"
#include "dualverify/report.hpp"
#include "dualverify/types.hpp"

namespace dualverify {

inline int default_parallelism() {
  unsigned hw = std::thread::hardware_concurrency();
  return static_cast<int>(std::clamp(hw == 0 ? 1u : hw, 1u, 16u));
}

struct PipelineConfig {
  BackendConfig factcheck_backend;
  BackendConfig manipulation_backend;
  PipelineMode mode = PipelineMode::kRouting;
  FusionPolicy policy;
  std::filesystem::path cache_dir;  // empty disables caching
  int parallelism = default_parallelism();
  ReportFormat report_format = ReportFormat::kMarkdown;
};

inline void validate(const PipelineConfig& cfg) {
  validate(cfg.factcheck_backend);
  validate(cfg.manipulation_backend);
  validate(cfg.policy);
  if (cfg.parallelism < 1) throw ValidationError("parallelism must be >= 1");
}

inline Json config_snapshot(const PipelineConfig& cfg) {
  auto backend = [](const BackendConfig& b) {
    return Json{{"base_url", b.base_url},
                {"timeout_ms", b.timeout_ms},
                {"max_retries", b.max_retries},
                {"backoff_base_ms", b.backoff_base_ms}};
  };
  return Json{{"factcheck_backend", backend(cfg.factcheck_backend)},
              {"manipulation_backend", backend(cfg.manipulation_backend)},
              {"mode", cfg.mode},
              {"uncertainty_threshold", cfg.policy.uncertainty_threshold},
              {"cache_dir", cfg.cache_dir.string()},
              {"parallelism", cfg.parallelism},
              {"report_format", std::string(file_extension(cfg.report_format))}};
}

// ---- response cache --------------------------------------------------------

// Files live at <dir>/<backend>/<request_id>.json. An entry is only served
// when its schema version and key match; otherwise it is a miss. Writes go
// through a temp file and rename, serialized per key.
class ResponseCache {
 public:
  static constexpr int kSchemaVersion = 1;

  explicit ResponseCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  bool enabled() const { return !dir_.empty(); }

  std::optional<std::string> get(std::string_view backend,
                                 const std::string& request_id) const {
    if (!enabled()) return std::nullopt;
    std::ifstream in(path_for(backend, request_id), std::ios::binary);
    if (!in) return std::nullopt;
    std::stringstream ss;
    ss << in.rdbuf();
    try {
      auto j = Json::parse(ss.str());
      if (j.value("schema_version", 0) != kSchemaVersion ||
          j.value("backend", "") != backend ||
          j.value("request_id", "") != request_id || !j.contains("response")) {
        return std::nullopt;
      }
      return j["response"].get<std::string>();
    } catch (const nlohmann::json::exception&) {
      return std::nullopt;
    }
  }

  void put(std::string_view backend, const std::string& request_id,
           const std::string& response) const {
    if (!enabled()) return;
    std::lock_guard lock(stripe_for(request_id));
    auto path = path_for(backend, request_id);
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create cache directory: " + ec.message());
    Json entry{{"schema_version", kSchemaVersion},
               {"backend", std::string(backend)},
               {"request_id", request_id},
               {"response", response}};
    auto tmp = path;
    tmp += ".tmp";
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) throw IoError("cannot write cache entry " + tmp.string());
      out << canonical_dump(entry);
      if (!out.flush()) throw IoError("cannot write cache entry " + tmp.string());
    }
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw IoError("cannot commit cache entry: " + ec.message());
  }

 private:
  std::filesystem::path path_for(std::string_view backend,
                                 const std::string& request_id) const {
    return dir_ / std::string(backend) / (request_id + ".json");
  }

  std::mutex& stripe_for(const std::string& key) const {
    return stripes_[std::hash<std::string>{}(key) % stripes_.size()];
  }

  std::filesystem::path dir_;
  mutable std::array<std::mutex, 32> stripes_;
};

// ---- single post -----------------------------------------------------------

struct EndpointCounters {
  std::uint64_t cache_hits = 0;
  std::uint64_t fetches = 0;
};

class Pipeline {
 public:
  explicit Pipeline(PipelineConfig cfg, Sleeper sleeper = real_sleep)
      : cfg_(std::move(cfg)),
        factcheck_(cfg_.factcheck_backend, sleeper),
        manipulation_(cfg_.manipulation_backend, sleeper),
        cache_(cfg_.cache_dir) {
    validate(cfg_);
  }

  const PipelineConfig& config() const { return cfg_; }

  // Routing: fact check, route, detector, fuse.
  // Injection: detector first, then fact check with the detector's result
  // attached as context.
  FusedOutcome verify_one(const Post& post) const {
    validate(post);
    if (cfg_.mode == PipelineMode::kInjection) {
      auto manipulation = fetch_manipulation(make_manipulation_request(post));
      auto fact = fetch_factcheck(make_factcheck_request(post, manipulation));
      return fuse_outcome(fact, std::move(manipulation), cfg_.policy,
                          PipelineMode::kInjection);
    }
    auto fact = fetch_factcheck(make_factcheck_request(post));
    auto decision = route(fact.verdict, fact.confidence, cfg_.policy);
    std::optional<ManipulationResult> manipulation;
    if (decision.run_detector) {
      if (decision.purpose == DetectorPurpose::kExplanationOnly) {
        try {
          manipulation = fetch_manipulation(make_manipulation_request(post));
        } catch (const BackendError&) {
        }
      } else {
        manipulation = fetch_manipulation(make_manipulation_request(post));
      }
    }
    return fuse_outcome(fact, std::move(manipulation), cfg_.policy,
                        PipelineMode::kRouting);
  }

  EndpointCounters factcheck_counters() const {
    return {fc_hits_.load(), fc_fetches_.load()};
  }
  EndpointCounters manipulation_counters() const {
    return {mn_hits_.load(), mn_fetches_.load()};
  }

 private:
  static constexpr std::string_view kFactCheckBackend = "factcheck";
  static constexpr std::string_view kManipulationBackend = "manipulation";

  FactCheckResult fetch_factcheck(const FactCheckRequest& req) const {
    if (auto cached = cache_.get(kFactCheckBackend, req.request_id)) {
      try {
        auto result = decode_factcheck_response(*cached);
        fc_hits_.fetch_add(1);
        return result;
      } catch (const ProtocolError&) {
        // stale or corrupt entry; refetch
      }
    }
    fc_fetches_.fetch_add(1);
    auto body = factcheck_.post(kFactCheckPath, canonical_dump(Json(req)));
    auto result = decode_factcheck_response(body);
    cache_.put(kFactCheckBackend, req.request_id, body);
    return result;
  }

  ManipulationResult fetch_manipulation(const ManipulationRequest& req) const {
    if (auto cached = cache_.get(kManipulationBackend, req.request_id)) {
      try {
        auto result = decode_manipulation_response(*cached, req.post);
        mn_hits_.fetch_add(1);
        return result;
      } catch (const ProtocolError&) {
      }
    }
    mn_fetches_.fetch_add(1);
    auto body = manipulation_.post(kManipulationPath, canonical_dump(Json(req)));
    auto result = decode_manipulation_response(body, req.post);
    cache_.put(kManipulationBackend, req.request_id, body);
    return result;
  }

  PipelineConfig cfg_;
  BackendClient factcheck_;
  BackendClient manipulation_;
  ResponseCache cache_;
  mutable std::atomic<std::uint64_t> fc_hits_{0};
  mutable std::atomic<std::uint64_t> fc_fetches_{0};
  mutable std::atomic<std::uint64_t> mn_hits_{0};
  mutable std::atomic<std::uint64_t> mn_fetches_{0};
};

inline FusedOutcome verify_one(const Post& post, const PipelineConfig& cfg) {
  return Pipeline(cfg).verify_one(post);
}

// ---- batch -----------------------------------------------------------------

struct PostError {
  std::string post_id;
  std::string kind;
  std::string message;
};

struct BatchSummary {
  DatasetKind dataset_kind = DatasetKind::kClaims;
  std::size_t total = 0;
  std::size_t completed = 0;
  std::size_t errored = 0;
  std::vector<PostError> errors;  // sorted by post_id
  EndpointCounters factcheck;
  EndpointCounters manipulation;

  bool all_errored() const { return total > 0 && completed == 0; }
};

inline std::string error_kind(const std::exception& e) {
  if (auto* b = dynamic_cast<const BackendError*>(&e)) return b->kind();
  if (dynamic_cast<const MissingManipulation*>(&e)) return "missing_manipulation";
  if (dynamic_cast<const ValidationError*>(&e)) return "validation_error";
  return "error";
}

namespace detail {

inline void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << body;
  if (!out.flush()) throw IoError("write failed for " + path.string());
}

struct BatchItem {
  Post post;
  std::optional<ThreeWayLabel> gold;
  std::optional<ManipulationClass> gold_class;
};

inline std::vector<BatchItem> load_batch_items(const std::filesystem::path& dataset,
                                               DatasetKind kind,
                                               const ClassNameMap& names) {
  std::vector<BatchItem> items;
  if (kind == DatasetKind::kClaims) {
    for (auto& r : load_claims(dataset)) items.push_back({std::move(r.post), r.gold, {}});
  } else {
    for (auto& r : load_dgm4(dataset, names)) {
      items.push_back({std::move(r.post), {}, r.gold_class});
    }
  }
  return items;
}

}  // namespace detail

// Writes under out_dir:
//   predictions.jsonl          one {post_id, pred[, gold]} per completed post
//   binary_predictions.jsonl   manipulation datasets only
//   reports/<id>.report.<ext>  plus overlay sidecars
//   outcomes/<id>.json         {"post": ..., "outcome": ...}
//   manifest.json              config snapshot, counts, per-post status
// All files are sorted by post_id.
inline BatchSummary run_batch(const std::filesystem::path& dataset,
                              const PipelineConfig& cfg,
                              const std::filesystem::path& out_dir,
                              const Clock& clock = system_now,
                              const ClassNameMap& names = ClassNameMap::defaults(),
                              Sleeper sleeper = real_sleep) {
  BatchSummary summary;
  summary.dataset_kind = detect_dataset_kind(dataset);
  auto items = detail::load_batch_items(dataset, summary.dataset_kind, names);
  std::sort(items.begin(), items.end(),
            [](const auto& a, const auto& b) { return a.post.id < b.post.id; });
  summary.total = items.size();

  Pipeline pipeline(cfg, std::move(sleeper));
  std::vector<std::optional<FusedOutcome>> outcomes(items.size());
  std::vector<std::optional<PostError>> failures(items.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < items.size(); i = next.fetch_add(1)) {
      try {
        outcomes[i] = pipeline.verify_one(items[i].post);
      } catch (const std::exception& e) {
        failures[i] = PostError{items[i].post.id, error_kind(e), e.what()};
      }
    }
  };
  std::size_t n_workers =
      std::min<std::size_t>(static_cast<std::size_t>(cfg.parallelism),
                            std::max<std::size_t>(items.size(), 1));
  std::vector<std::thread> threads;
  for (std::size_t t = 0; t < n_workers; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();

  std::error_code ec;
  std::filesystem::create_directories(out_dir / "reports", ec);
  std::filesystem::create_directories(out_dir / "outcomes", ec);
  if (ec) throw IoError("cannot create output directory: " + ec.message());

  std::string predictions;
  std::string binary_predictions;
  Json posts = Json::array();
  Json errors = Json::array();
  auto ext = std::string(file_extension(cfg.report_format));
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto& item = items[i];
    const auto name = safe_filename(item.post.id);
    if (failures[i]) {
      ++summary.errored;
      summary.errors.push_back(*failures[i]);
      posts.push_back(Json{{"post_id", item.post.id},
                           {"status", "errored"},
                           {"error_kind", failures[i]->kind}});
      errors.push_back(Json{{"post_id", failures[i]->post_id},
                            {"kind", failures[i]->kind},
                            {"message", failures[i]->message}});
      continue;
    }
    ++summary.completed;
    const auto& outcome = *outcomes[i];
    posts.push_back(Json{{"post_id", item.post.id},
                         {"status", "completed"},
                         {"label", outcome.label}});

    Json pred{{"post_id", item.post.id}, {"pred", outcome.label}};
    if (item.gold) pred["gold"] = *item.gold;
    predictions += canonical_dump(pred) + "\n";
    if (item.gold_class) {
      BinaryPredictionRecord b{item.post.id,
                               outcome.manipulation && outcome.manipulation->is_fake,
                               is_manipulated(*item.gold_class)};
      binary_predictions += canonical_dump(Json(b)) + "\n";
    }

    detail::write_file(out_dir / "reports" / (name + ".report." + ext),
                       render(outcome, item.post, cfg.report_format, clock));
    for (const auto& overlay : render_overlays(outcome, item.post)) {
      detail::write_file(out_dir / "reports" / overlay.filename, overlay.svg);
    }
    detail::write_file(out_dir / "outcomes" / (name + ".json"),
                       Json{{"post", item.post}, {"outcome", outcome}}.dump(2) + "\n");
  }

  detail::write_file(out_dir / "predictions.jsonl", predictions);
  if (summary.dataset_kind == DatasetKind::kDgm4) {
    detail::write_file(out_dir / "binary_predictions.jsonl", binary_predictions);
  }
  Json manifest{
      {"dataset", dataset.string()},
      {"dataset_kind", summary.dataset_kind == DatasetKind::kDgm4 ? "dgm4" : "claims"},
      {"config", config_snapshot(cfg)},
      {"counts", Json{{"total", summary.total},
                      {"completed", summary.completed},
                      {"errored", summary.errored}}},
      {"posts", posts},
      {"errors", errors}};
  detail::write_file(out_dir / "manifest.json", manifest.dump(2) + "\n");

  summary.factcheck = pipeline.factcheck_counters();
  summary.manipulation = pipeline.manipulation_counters();
  return summary;
}

// ---- evaluation over files -------------------------------------------------

struct EvalResult {
  std::optional<EvalReport> three_way;
  std::optional<Accuracy> binary;
};

namespace detail {

inline std::vector<Json> read_jsonl(const std::filesystem::path& path) {
  auto in = open_input(path);
  std::vector<Json> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(parse_json(line));
    } catch (ParseError& e) {
      e.set_line(lineno);
      throw;
    }
  }
  return out;
}

inline std::string line_post_id(const Json& j) {
  if (j.contains("post_id")) return field<std::string>(j, "post_id");
  return field<std::string>(require(j, "post"), "id");
}

}  // namespace detail

// Joins predictions with gold labels by post_id. Gold comes from `gold_path`
// when given (claims / manipulation dataset, or {post_id, gold[_fake]} lines),
// otherwise from the prediction lines themselves.
inline EvalResult eval_cmd(const std::filesystem::path& pred_path,
                           const std::optional<std::filesystem::path>& gold_path,
                           bool collapse_first = false) {
  auto lines = detail::read_jsonl(pred_path);
  if (lines.empty()) throw EmptySet();
  const bool binary = lines.front().contains("pred_fake");

  std::map<std::string, Json> gold;
  if (gold_path) {
    for (auto& j : detail::read_jsonl(*gold_path)) {
      auto id = detail::line_post_id(j);
      gold[id] = std::move(j);
    }
  }
  auto gold_for = [&](const std::string& id, const Json& line) -> const Json& {
    if (!gold_path) return line;
    auto it = gold.find(id);
    if (it == gold.end()) throw MissingGold(id);
    return it->second;
  };

  EvalResult result;
  if (binary) {
    std::vector<BinaryPredictionRecord> records;
    for (const auto& j : lines) {
      BinaryPredictionRecord r;
      r.post_id = detail::field<std::string>(j, "post_id");
      r.pred_fake = detail::field<bool>(j, "pred_fake");
      const Json& g = gold_for(r.post_id, j);
      if (g.contains("gold_fake")) {
        r.gold_fake = detail::field<bool>(g, "gold_fake");
      } else if (g.contains("gold_class")) {
        r.gold_fake = is_manipulated(
            ClassNameMap::defaults().resolve(detail::field<std::string>(g, "gold_class")));
      } else {
        throw MissingGold(r.post_id);
      }
      records.push_back(std::move(r));
    }
    result.binary = score_binary(records);
    return result;
  }

  std::vector<PredictionRecord> records;
  for (const auto& j : lines) {
    PredictionRecord r;
    r.post_id = detail::field<std::string>(j, "post_id");
    r.pred = detail::require(j, "pred").get<FiveWayLabel>();
    const Json& g = gold_for(r.post_id, j);
    if (!g.contains("gold")) throw MissingGold(r.post_id);
    auto label = parse_gold_label(detail::field<std::string>(g, "gold"));
    if (!label) throw ParseError("unknown gold label for '" + r.post_id + "'");
    r.gold = *label;
    records.push_back(std::move(r));
  }
  result.three_way = evaluate(records, collapse_first);
  return result;
}

}  // namespace dualverify
