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

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "dualverify/mock_server.hpp"
#include "dualverify/pipeline.hpp"

namespace dualverify {
namespace {

namespace fs = std::filesystem;
using FL = FiveWayLabel;

const fs::path kFixtures = DUALVERIFY_FIXTURE_DIR;
const auto kFixedTime = std::chrono::system_clock::time_point{} + std::chrono::seconds(1717200000);

MockProfile fixture_profile() {
  std::ifstream in(kFixtures / "mock_profile_claims.json");
  return Json::parse(in).get<MockProfile>();
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path temp_dir(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("dualverify_pipeline_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

PipelineConfig config_for(const MockServer& server) {
  PipelineConfig cfg;
  cfg.factcheck_backend.base_url = server.base_url();
  cfg.factcheck_backend.timeout_ms = 2000;
  cfg.factcheck_backend.backoff_base_ms = 1;
  cfg.manipulation_backend = cfg.factcheck_backend;
  cfg.parallelism = 4;
  return cfg;
}

std::map<std::string, Post> fixture_posts() {
  std::map<std::string, Post> posts;
  for (auto& c : load_claims(kFixtures / "claims_fixture.jsonl")) posts[c.post.id] = c.post;
  return posts;
}

std::string dead_url() {
  MockServer server(fixture_profile());
  server.start();
  return server.base_url();
}

TEST(VerifyOne, RefutedKeepsExplanation) {
  auto server = serve_mock(fixture_profile());
  auto posts = fixture_posts();
  auto outcome = verify_one(posts.at("c05"), config_for(*server));
  EXPECT_EQ(outcome.label, FL::kRefuted);
  ASSERT_TRUE(outcome.manipulation.has_value());
  EXPECT_EQ(outcome.manipulation->klass, ManipulationClass::kFS_TS);
  EXPECT_EQ(server->stats().manipulation_requests, 1u);
}

TEST(VerifyOne, SupportedPristine) {
  auto server = serve_mock(fixture_profile());
  auto outcome = verify_one(fixture_posts().at("c01"), config_for(*server));
  EXPECT_EQ(outcome.label, FL::kSupported);
  EXPECT_EQ(outcome.manipulation->klass, ManipulationClass::kPristine);
}

TEST(VerifyOne, ThresholdTurnsLmgsIntoMbu) {
  auto server = serve_mock(fixture_profile());
  auto cfg = config_for(*server);
  EXPECT_EQ(verify_one(fixture_posts().at("c12"), cfg).label, FL::kLmgs);
  cfg.policy.uncertainty_threshold = 0.6;
  EXPECT_EQ(verify_one(fixture_posts().at("c12"), cfg).label, FL::kMbu);
}

TEST(VerifyOne, RefutedSurvivesDetectorOutage) {
  auto server = serve_mock(fixture_profile());
  auto cfg = config_for(*server);
  cfg.manipulation_backend.base_url = dead_url();
  cfg.manipulation_backend.max_retries = 0;
  auto outcome = verify_one(fixture_posts().at("c05"), cfg);
  EXPECT_EQ(outcome.label, FL::kRefuted);
  EXPECT_FALSE(outcome.manipulation.has_value());
  EXPECT_THROW(verify_one(fixture_posts().at("c01"), cfg), BackendUnavailable);
}

TEST(VerifyOne, InjectionMode) {
  auto server = serve_mock(fixture_profile());
  auto cfg = config_for(*server);
  cfg.mode = PipelineMode::kInjection;
  auto outcome = verify_one(fixture_posts().at("c02"), cfg);
  EXPECT_EQ(outcome.pipeline_mode, PipelineMode::kInjection);
  EXPECT_EQ(outcome.label, lift(outcome.fact_check.verdict));
  ASSERT_TRUE(outcome.manipulation.has_value());
  EXPECT_EQ(outcome.manipulation->klass, ManipulationClass::kTA);
  EXPECT_EQ(server->stats().manipulation_requests, 1u);
  EXPECT_EQ(server->stats().factcheck_requests, 1u);
}

TEST(Cache, ReplayMakesNoRequests) {
  auto server = serve_mock(fixture_profile());
  auto cfg = config_for(*server);
  cfg.cache_dir = temp_dir("cache");
  std::vector<FusedOutcome> first;
  for (const auto& [id, post] : fixture_posts()) first.push_back(Pipeline(cfg).verify_one(post));
  auto before = server->stats();
  EXPECT_GT(before.factcheck_requests, 0u);

  Pipeline replay(cfg);
  std::vector<FusedOutcome> second;
  for (const auto& [id, post] : fixture_posts()) second.push_back(replay.verify_one(post));
  EXPECT_EQ(second, first);
  EXPECT_EQ(server->stats().factcheck_requests, before.factcheck_requests);
  EXPECT_EQ(server->stats().manipulation_requests, before.manipulation_requests);
  EXPECT_EQ(replay.factcheck_counters().fetches, 0u);
  EXPECT_EQ(replay.factcheck_counters().cache_hits, 12u);
}

TEST(Cache, CorruptEntryIsRefetched) {
  auto server = serve_mock(fixture_profile());
  auto cfg = config_for(*server);
  cfg.cache_dir = temp_dir("corrupt");
  auto post = fixture_posts().at("c01");
  Pipeline(cfg).verify_one(post);
  for (auto& entry : fs::recursive_directory_iterator(cfg.cache_dir)) {
    if (entry.is_regular_file()) std::ofstream(entry.path()) << "{garbage";
  }
  Pipeline again(cfg);
  EXPECT_EQ(again.verify_one(post).label, FL::kSupported);
  EXPECT_EQ(again.factcheck_counters().fetches, 1u);
}

TEST(Batch, WritesReportsAndPredictions) {
  auto server = serve_mock(fixture_profile());
  auto out = temp_dir("batch");
  auto summary = run_batch(kFixtures / "claims_fixture.jsonl", config_for(*server), out,
                           fixed_clock(kFixedTime));
  EXPECT_EQ(summary.total, 12u);
  EXPECT_EQ(summary.completed, 12u);
  EXPECT_EQ(summary.errored, 0u);

  std::size_t reports = 0;
  for (auto& e : fs::directory_iterator(out / "reports")) {
    reports += e.path().filename().string().find(".report.md") != std::string::npos;
  }
  EXPECT_EQ(reports, 12u);

  std::map<std::string, std::string> labels;
  std::istringstream preds(slurp(out / "predictions.jsonl"));
  for (std::string line; std::getline(preds, line);) {
    auto j = Json::parse(line);
    labels[j["post_id"]] = j["pred"];
  }
  EXPECT_EQ(labels, (std::map<std::string, std::string>{
                        {"c01", "supported"}, {"c02", "lmgs"},    {"c03", "lmgs"},
                        {"c04", "supported"}, {"c05", "refuted"}, {"c06", "refuted"},
                        {"c07", "refuted"},   {"c08", "refuted"}, {"c09", "mbu"},
                        {"c10", "nei"},       {"c11", "mbu"},     {"c12", "lmgs"}}));
  EXPECT_TRUE(fs::exists(out / "reports" / "c08.overlay.1.svg"));

  auto manifest = Json::parse(slurp(out / "manifest.json"));
  EXPECT_EQ(manifest["counts"]["completed"], 12);
  EXPECT_EQ(manifest["posts"].size(), 12u);
}

TEST(Batch, ParallelismDoesNotChangeOutput) {
  auto server = serve_mock(fixture_profile());
  auto serial_dir = temp_dir("serial");
  auto parallel_dir = temp_dir("parallel");
  auto cfg = config_for(*server);
  cfg.parallelism = 1;
  run_batch(kFixtures / "claims_fixture.jsonl", cfg, serial_dir, fixed_clock(kFixedTime));
  cfg.parallelism = 8;
  run_batch(kFixtures / "claims_fixture.jsonl", cfg, parallel_dir, fixed_clock(kFixedTime));

  std::size_t compared = 0;
  for (auto& e : fs::recursive_directory_iterator(serial_dir)) {
    if (!e.is_regular_file()) continue;
    auto rel = fs::relative(e.path(), serial_dir);
    if (rel == "manifest.json") continue;  // records the parallelism setting
    ASSERT_TRUE(fs::exists(parallel_dir / rel)) << rel;
    EXPECT_EQ(slurp(e.path()), slurp(parallel_dir / rel)) << rel;
    ++compared;
  }
  EXPECT_GT(compared, 24u);
  auto a = Json::parse(slurp(serial_dir / "manifest.json"));
  auto b = Json::parse(slurp(parallel_dir / "manifest.json"));
  EXPECT_EQ(a["posts"], b["posts"]);
}

TEST(Batch, DetectorOutageMarksDecisivePostsErrored) {
  auto server = serve_mock(fixture_profile());
  auto cfg = config_for(*server);
  cfg.manipulation_backend.base_url = dead_url();
  cfg.manipulation_backend.max_retries = 0;
  auto out = temp_dir("outage");
  auto summary = run_batch(kFixtures / "claims_fixture.jsonl", cfg, out,
                           fixed_clock(kFixedTime), ClassNameMap::defaults(),
                           [](std::chrono::milliseconds) {});
  EXPECT_EQ(summary.completed, 4u);  // the refuted posts
  EXPECT_EQ(summary.errored, 8u);
  EXPECT_FALSE(summary.all_errored());
  auto manifest = Json::parse(slurp(out / "manifest.json"));
  for (const auto& p : manifest["posts"]) {
    if (p["status"] == "errored") {
      EXPECT_EQ(p["error_kind"], "backend_unavailable");
    } else {
      EXPECT_EQ(p["label"], "refuted");
    }
  }
  EXPECT_NE(slurp(out / "reports" / "c06.report.md").find("unavailable"), std::string::npos);
}

TEST(Batch, Dgm4WritesBinaryPredictions) {
  MockProfile seeded;
  seeded.mode = MockMode::kSeeded;
  seeded.seed = 5;
  auto server = serve_mock(seeded);
  auto out = temp_dir("dgm4");
  auto summary = run_batch(kFixtures / "dgm4_fixture.jsonl", config_for(*server), out,
                           fixed_clock(kFixedTime));
  EXPECT_EQ(summary.dataset_kind, DatasetKind::kDgm4);
  EXPECT_EQ(summary.completed, 12u);
  auto result = eval_cmd(out / "binary_predictions.jsonl", std::nullopt);
  ASSERT_TRUE(result.binary.has_value());
  EXPECT_EQ(result.binary->n, 12u);
  auto against_dataset = eval_cmd(out / "binary_predictions.jsonl",
                                  kFixtures / "dgm4_fixture.jsonl");
  EXPECT_EQ(against_dataset.binary, result.binary);
}

TEST(EvalCmd, EmbeddedAndExternalGold) {
  auto server = serve_mock(fixture_profile());
  auto out = temp_dir("eval");
  run_batch(kFixtures / "claims_fixture.jsonl", config_for(*server), out,
            fixed_clock(kFixedTime));
  auto embedded = eval_cmd(out / "predictions.jsonl", std::nullopt);
  auto external = eval_cmd(out / "predictions.jsonl", kFixtures / "claims_fixture.jsonl");
  ASSERT_TRUE(embedded.three_way.has_value());
  EXPECT_EQ(embedded.three_way->n, 12u);
  for (auto rule : kAllRules) {
    EXPECT_EQ(embedded.three_way->accuracy(rule), external.three_way->accuracy(rule));
  }
}

TEST(EvalCmd, MissingGoldAndEmptySet) {
  auto dir = temp_dir("evalerr");
  std::ofstream(dir / "pred.jsonl") << R"({"post_id":"zz","pred":"nei"})" << "\n";
  std::ofstream(dir / "gold.jsonl") << R"({"post_id":"other","gold":"nei"})" << "\n";
  std::ofstream(dir / "empty.jsonl");
  EXPECT_THROW(eval_cmd(dir / "pred.jsonl", dir / "gold.jsonl"), MissingGold);
  EXPECT_THROW(eval_cmd(dir / "pred.jsonl", std::nullopt), MissingGold);
  EXPECT_THROW(eval_cmd(dir / "empty.jsonl", std::nullopt), EmptySet);
}

}  // namespace
}  // namespace dualverify
