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

// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
// failure.

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "dualverify/dualverify.hpp"
#include "generators.hpp"
#include "record_sets.hpp"

namespace dv = dualverify;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = DUALVERIFY_FIXTURE_DIR;

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

struct Criterion {
  std::string name;
  double time_limit_s;  // 0 means no limit
  std::function<Outcome()> check;
};

bool within(double got, double want) {
  return std::abs(std::round(got * 100.0) / 100.0 - want) <= 0.005;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path fresh_dir(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("dualverify_acceptance_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

// ---- criteria --------------------------------------------------------------

Outcome fusion_totality() {
  using TL = dv::ThreeWayLabel;
  using FL = dv::FiveWayLabel;
  Outcome o;
  int cells = 0;
  for (auto v : dv::kAllThreeWayLabels) {
    for (auto k : dv::kAllManipulationClasses) {
      ++cells;
      bool edited = dv::is_manipulated(k);
      FL want = v == TL::kRefuted     ? FL::kRefuted
                : v == TL::kSupported ? (edited ? FL::kLmgs : FL::kSupported)
                                      : (edited ? FL::kMbu : FL::kNei);
      auto got = dv::fuse(v, k);
      auto cell = std::string(dv::to_string(v)) + "/" + std::string(dv::to_string(k));
      o.require(got == want, "cell " + cell + " mismatch");
      if (v == TL::kRefuted) o.require(got == FL::kRefuted, "refutation dominance " + cell);
      if (edited) o.require(got != FL::kSupported, "supported when manipulated " + cell);
    }
  }
  o.require(cells == 27, "expected 27 cells");
  return o;
}

Outcome table_arithmetic() {
  Outcome o;
  auto fused = dv::evaluate(dv::testing::fused_system_records());
  o.require(fused.n == 300, "fused set size");
  o.require(fused.strict.correct == 84 && within(fused.strict.percent(), 28.00),
            "strict 84/300 -> 28.00");
  o.require(fused.manip_aware.correct == 139 && within(fused.manip_aware.percent(), 46.33),
            "manip 139/300 -> 46.33");
  o.require(fused.interv_aware.correct == 141 && within(fused.interv_aware.percent(), 47.00),
            "interv 141/300 -> 47.00");

  auto checker = dv::evaluate(dv::testing::fact_checker_records());
  o.require(checker.manip_aware.correct == 103 && within(checker.manip_aware.percent(), 34.33),
            "manip 103/300 -> 34.33");
  o.require(checker.interv_aware.correct == 96 && within(checker.interv_aware.percent(), 32.00),
            "interv 96/300 -> 32.00");

  // the same numbers through the file-based eval path
  auto dir = fresh_dir("table");
  std::ofstream out(dir / "pred.jsonl");
  for (const auto& r : dv::testing::fused_system_records()) {
    out << dv::canonical_dump(dv::Json(r)) << "\n";
  }
  out.close();
  auto via_file = dv::eval_cmd(dir / "pred.jsonl", std::nullopt);
  o.require(via_file.three_way && via_file.three_way->strict.percent_string() == "28.00" &&
                via_file.three_way->manip_aware.percent_string() == "46.33" &&
                via_file.three_way->interv_aware.percent_string() == "47.00",
            "file-based eval disagrees");
  return o;
}

Outcome metric_properties() {
  Outcome o;
  dv::testing::Gen gen(1234);
  int sets = 0;
  for (; sets < 1000; ++sets) {
    std::vector<dv::PredictionRecord> records;
    int n = gen.integer(1, 80);
    for (int i = 0; i < n; ++i) records.push_back(gen.prediction("r" + std::to_string(i)));
    auto rep = dv::evaluate(records);
    o.require(rep.manip_aware.value() >= rep.strict.value(), "manip < strict");
    for (auto rule : dv::kAllRules) {
      const auto& acc = rep.accuracy(rule);
      double scaled = acc.value() * static_cast<double>(acc.n);
      o.require(std::abs(scaled - std::round(scaled)) < 1e-9, "accuracy*n not integral");
      o.require(dv::score_from_confusion(rule, rep.confusion) == acc,
                "confusion does not re-derive accuracy");
    }
  }
  o.require(sets >= 1000, "fewer than 1000 sets");

  std::vector<dv::PredictionRecord> witness = {
      {"w1", dv::FiveWayLabel::kNei, dv::ThreeWayLabel::kNei},
      {"w2", dv::FiveWayLabel::kSupported, dv::ThreeWayLabel::kSupported}};
  auto rep = dv::evaluate(witness);
  o.require(rep.interv_aware.value() < rep.manip_aware.value(), "witness failed");
  return o;
}

Outcome binary_accuracy() {
  Outcome o;
  std::vector<dv::BinaryPredictionRecord> r;
  for (int i = 0; i < 10000; ++i) {
    bool gold = i % 2 == 0;
    r.push_back({"b" + std::to_string(i), i < 9319 ? gold : !gold, gold});
  }
  auto acc = dv::score_binary(r);
  o.require(acc.correct == 9319 && within(acc.percent(), 93.19), "9319/10000 -> 93.19");
  for (auto& x : r) x.pred_fake = x.gold_fake;
  o.require(dv::score_binary(r).value() == 1.0, "all-correct not exactly 1");
  for (auto& x : r) x.pred_fake = !x.gold_fake;
  o.require(dv::score_binary(r).value() == 0.0, "all-wrong not exactly 0");
  return o;
}

std::map<std::string, std::string> output_files(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (auto& e : fs::recursive_directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    auto rel = fs::relative(e.path(), dir).string();
    if (rel == "manifest.json") continue;  // records the config, including parallelism
    files[rel] = slurp(e.path());
  }
  return files;
}

Outcome end_to_end_determinism() {
  Outcome o;
  std::ifstream in(kFixtures / "mock_profile_claims.json");
  auto server = dv::serve_mock(dv::Json::parse(in).get<dv::MockProfile>());
  dv::PipelineConfig cfg;
  cfg.factcheck_backend.base_url = server->base_url();
  cfg.factcheck_backend.timeout_ms = 5000;
  cfg.manipulation_backend = cfg.factcheck_backend;
  auto clock = dv::fixed_clock(std::chrono::system_clock::time_point{} +
                               std::chrono::seconds(1717200000));
  auto dataset = kFixtures / "claims_fixture.jsonl";

  std::vector<std::map<std::string, std::string>> runs;
  for (int parallelism : {1, 8, 1, 8}) {
    cfg.parallelism = parallelism;
    auto dir = fresh_dir("run" + std::to_string(runs.size()));
    auto summary = dv::run_batch(dataset, cfg, dir, clock);
    o.require(summary.completed == 12, "batch did not complete all 12 posts");
    runs.push_back(output_files(dir));
  }
  const auto& first = runs.front();
  o.require(first.count("predictions.jsonl") == 1, "no predictions file");
  std::size_t reports = 0;
  for (const auto& [name, body] : first) reports += name.find(".report.") != std::string::npos;
  o.require(reports == 12, "expected 12 reports");
  for (const auto& run : runs) o.require(run == first, "outputs differ between runs");

  cfg.cache_dir = fresh_dir("cache");
  cfg.parallelism = 8;
  dv::run_batch(dataset, cfg, fresh_dir("warm"), clock);
  auto before = dv::BackendClient(cfg.factcheck_backend).stats();
  auto replay_dir = fresh_dir("replay");
  dv::run_batch(dataset, cfg, replay_dir, clock);
  auto after = dv::BackendClient(cfg.factcheck_backend).stats();
  o.require(after == before, "replay issued backend requests");
  o.require(output_files(replay_dir) == first, "replay output differs");
  return o;
}

Outcome report_round_trips() {
  Outcome o;
  dv::testing::Gen gen(77);
  auto clock = dv::fixed_clock(std::chrono::system_clock::time_point{});
  for (int i = 0; i < 200; ++i) {
    auto [outcome, post] = gen.outcome("o" + std::to_string(i));
    auto text = dv::render(outcome, post, dv::ReportFormat::kJson, clock);
    auto parsed = dv::parse_report_json(text);
    o.require(parsed.final_label == outcome.label, "final_label lost");
    o.require(parsed.verdict_section.evidence.size() == outcome.fact_check.evidence.size(),
              "evidence count lost");
    if (outcome.manipulation && outcome.manipulation->token_labels) {
      const auto& seq = *outcome.manipulation->token_labels;
      std::string joined;
      for (std::size_t k = 0; k < seq.tokens.size(); ++k) {
        joined += (k ? " " : "") + seq.tokens[k];
      }
      for (auto markup : {dv::Markup::kMarkdown, dv::Markup::kHtml}) {
        o.require(dv::strip_markers(dv::highlight_tokens(seq, markup), markup) == joined,
                  "marker strip did not recover text");
      }
    }
    if (outcome.manipulation && post.image) {
      auto layout = dv::project_boxes(outcome.manipulation->boxes, post.image->width,
                                    post.image->height);
      for (const auto& b : layout.pixel_boxes) {
        o.require(0 <= b.x1 && b.x1 < b.x2 && b.x2 <= layout.width && 0 <= b.y1 &&
                      b.y1 < b.y2 && b.y2 <= layout.height,
                  "pixel box outside image");
      }
    }
  }
  return o;
}

Outcome ingestion_round_trip() {
  Outcome o;
  auto dir = fresh_dir("ingest");
  auto dgm4 = dv::load_dgm4(kFixtures / "dgm4_fixture.jsonl");
  dv::export_canonical(dgm4, dir / "dgm4.jsonl");
  o.require(dv::load_dgm4(dir / "dgm4.jsonl") == dgm4, "dgm4 export/load not identity");
  auto claims = dv::load_claims(kFixtures / "claims_fixture.jsonl");
  dv::export_canonical(claims, dir / "claims.jsonl");
  o.require(dv::load_claims(dir / "claims.jsonl") == claims, "claims export/load not identity");

  std::set<dv::ManipulationClass> classes;
  for (const auto& r : dgm4) classes.insert(r.gold_class);
  o.require(classes.size() == 9, "not all 9 classes loaded");

  auto check_invalid = [&](const fs::path& file, bool is_dgm4) {
    std::ifstream in(file);
    std::size_t lineno = 0;
    for (std::string line; std::getline(in, line);) {
      ++lineno;
      // `lineno - 1` blank lines precede the bad line
      std::istringstream single(std::string(lineno - 1, '\n') + line + "\n");
      try {
        if (is_dgm4) {
          dv::load_dgm4(single);
        } else {
          dv::load_claims(single);
        }
        o.require(false, file.filename().string() + " line " + std::to_string(lineno) +
                             " accepted");
      } catch (const dv::Error& e) {
        o.require(e.line() == lineno, file.filename().string() + " line " +
                                          std::to_string(lineno) + " reported wrong line");
      }
    }
    o.require(lineno > 0, "empty invalid fixture");
  };
  check_invalid(kFixtures / "dgm4_invalid.jsonl", true);
  check_invalid(kFixtures / "claims_invalid.jsonl", false);
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"fusion totality and correctness over 27 cells", 1.0, fusion_totality},
      {"table arithmetic 28.00/46.33/47.00 and 30.00/34.33/32.00", 1.0, table_arithmetic},
      {"metric properties on 1000 random record sets", 0.0, metric_properties},
      {"binary accuracy 9319/10000 -> 93.19", 0.0, binary_accuracy},
      {"end-to-end determinism and cache replay", 10.0, end_to_end_determinism},
      {"report round-trips", 0.0, report_round_trips},
      {"ingestion round-trip and line-numbered rejection", 0.0, ingestion_round_trip},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.ok && c.time_limit_s > 0 && secs >= c.time_limit_s) {
      o = {false, "exceeded time limit"};
    }
    failures += !o.ok;
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.3fs", secs);
    std::cout << (o.ok ? "[PASS] " : "[FAIL] ") << c.name << " (" << timing << ")";
    if (!o.ok) std::cout << ": " << o.detail;
    std::cout << "\n";
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failures)) << "/" << criteria.size()
            << " criteria passed\n";
  return failures == 0 ? 0 : 1;
}
