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

// Command-line front end: verify, batch, eval, report, mock-serve.
//
// Exit codes: 0 success, 1 usage, 2 dataset or parse error, 3 backend
// failure (all posts errored).

#include <atomic>
#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "dualverify/dualverify.hpp"

namespace dv = dualverify;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitBackend = 3;

struct GlobalOptions {
  std::string factcheck_url = "http://127.0.0.1:8700";
  std::string manipulation_url;  // defaults to factcheck_url
  int timeout_ms = 30000;
  int max_retries = 2;
  int backoff_ms = 200;
  std::string mode = "routing";
  double threshold = 0.0;
  std::string cache_dir;
  int parallelism = dv::default_parallelism();
  std::string format = "md";
  std::optional<std::int64_t> fixed_time;
};

dv::PipelineConfig make_config(const GlobalOptions& g) {
  dv::PipelineConfig cfg;
  cfg.factcheck_backend = {g.factcheck_url, g.timeout_ms, g.max_retries, g.backoff_ms};
  cfg.manipulation_backend = cfg.factcheck_backend;
  if (!g.manipulation_url.empty()) cfg.manipulation_backend.base_url = g.manipulation_url;
  cfg.mode = *dv::parse_pipeline_mode(g.mode);
  cfg.policy.uncertainty_threshold = g.threshold;
  cfg.cache_dir = g.cache_dir;
  cfg.parallelism = g.parallelism;
  cfg.report_format = dv::parse_report_format(g.format);
  dv::validate(cfg);
  return cfg;
}

dv::Clock make_clock(const GlobalOptions& g) {
  if (!g.fixed_time) return dv::system_now;
  return dv::fixed_clock(std::chrono::system_clock::time_point{} +
                         std::chrono::seconds(*g.fixed_time));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw dv::IoError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::atomic<bool> g_stop{false};

extern "C" void on_signal(int) { g_stop = true; }

int run_mock_serve(const std::string& profile_path, int port, const std::string& host) {
  auto profile = dv::decode_text<dv::MockProfile>(read_file(profile_path));
  dv::MockServer server(std::move(profile));
  server.start(port, host);
  std::cout << "listening on " << server.base_url() << std::endl;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  while (!g_stop) std::this_thread::sleep_for(std::chrono::milliseconds(100));
  server.stop();
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dual-source verification: fact-checking fused with manipulation detection."};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "INI/TOML file with key = value settings mirroring the flags");

  GlobalOptions g;
  app.add_option("--factcheck-url", g.factcheck_url, "Fact-check backend base URL")
      ->capture_default_str();
  app.add_option("--manipulation-url", g.manipulation_url,
                 "Manipulation backend base URL (default: --factcheck-url)");
  app.add_option("--timeout-ms", g.timeout_ms, "Per-request timeout")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--max-retries", g.max_retries, "Retries on 503 or transport errors")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  app.add_option("--backoff-ms", g.backoff_ms, "Base backoff delay, doubled per retry")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--mode", g.mode, "Pipeline mode")
      ->check(CLI::IsMember({"routing", "injection"}))
      ->capture_default_str();
  app.add_option("--threshold", g.threshold,
                 "Treat Supported below this confidence as NEI (0 disables)")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  app.add_option("--cache-dir", g.cache_dir, "Response cache directory (empty disables)");
  app.add_option("--parallelism", g.parallelism, "Concurrent posts in batch mode")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--format", g.format, "Report format")
      ->check(CLI::IsMember({"md", "markdown", "html", "json"}))
      ->capture_default_str();
  app.add_option("--fixed-time", g.fixed_time,
                 "Stamp reports with this Unix time instead of the wall clock");

  auto* verify = app.add_subcommand("verify", "Verify a single post and print its report");
  std::string post_id = "cli";
  std::string text;
  std::string image;
  int image_width = 0;
  int image_height = 0;
  verify->add_option("--id", post_id, "Post id")->capture_default_str();
  verify->add_option("--text", text, "Post text")->required();
  auto* image_opt = verify->add_option("--image", image, "Image locator");
  verify->add_option("--image-width", image_width, "Image width in pixels")
      ->needs(image_opt)
      ->check(CLI::PositiveNumber);
  verify->add_option("--image-height", image_height, "Image height in pixels")
      ->needs(image_opt)
      ->check(CLI::PositiveNumber);

  auto* batch = app.add_subcommand("batch", "Run the pipeline over a dataset");
  std::string dataset;
  std::string out_dir;
  std::string class_map;
  batch->add_option("--dataset", dataset, "Claims or manipulation JSONL dataset")
      ->required()
      ->check(CLI::ExistingFile);
  batch->add_option("--out", out_dir, "Output directory")->required();
  batch->add_option("--class-map", class_map, "JSON map of external class names")
      ->check(CLI::ExistingFile);

  auto* eval = app.add_subcommand("eval", "Score a predictions file");
  std::string pred_path;
  std::string gold_path;
  std::string rule = "all";
  bool collapse_first = false;
  bool as_json = false;
  std::string system_name = "system";
  eval->add_option("--pred", pred_path, "Predictions JSONL")->required()->check(CLI::ExistingFile);
  eval->add_option("--gold", gold_path, "Gold labels (dataset or {post_id, gold} JSONL)")
      ->check(CLI::ExistingFile);
  eval->add_option("--rule", rule, "Evaluation rule")
      ->check(CLI::IsMember({"strict", "manip", "interv", "all"}))
      ->capture_default_str();
  eval->add_flag("--collapse-first", collapse_first,
                 "Collapse five-way predictions to three-way before scoring");
  eval->add_flag("--json", as_json, "Print the full report as JSON");
  eval->add_option("--name", system_name, "System name in the table")->capture_default_str();

  auto* report = app.add_subcommand("report", "Render a stored outcome");
  std::string outcome_path;
  report->add_option("--outcome", outcome_path, "Outcome JSON written by batch")
      ->required()
      ->check(CLI::ExistingFile);

  auto* mock = app.add_subcommand("mock-serve", "Serve the mock backends");
  std::string profile_path;
  int port = 8700;
  std::string host = "127.0.0.1";
  mock->add_option("--profile", profile_path, "Mock profile JSON")
      ->required()
      ->check(CLI::ExistingFile);
  mock->add_option("--port", port, "Port (0 picks a free one)")->capture_default_str();
  mock->add_option("--host", host, "Bind address")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*verify) {
      dv::Post post{post_id, text, std::nullopt, std::nullopt};
      if (!image.empty()) {
        if (image_width == 0 || image_height == 0) {
          std::cerr << "--image needs --image-width and --image-height\n";
          return kExitUsage;
        }
        post.image = dv::ImageRef{image, image_width, image_height};
      }
      auto cfg = make_config(g);
      auto outcome = dv::Pipeline(cfg).verify_one(post);
      std::cout << dv::render(outcome, post, cfg.report_format, make_clock(g));
      return kExitOk;
    }
    if (*batch) {
      auto cfg = make_config(g);
      auto names = class_map.empty() ? dv::ClassNameMap::defaults()
                                     : dv::ClassNameMap::from_file(class_map);
      auto summary = dv::run_batch(dataset, cfg, out_dir, make_clock(g), names);
      std::cout << "posts: " << summary.total << "  completed: " << summary.completed
                << "  errored: " << summary.errored << "\n";
      for (const auto& e : summary.errors) {
        std::cerr << e.post_id << ": " << e.kind << ": " << e.message << "\n";
      }
      return summary.all_errored() ? kExitBackend : kExitOk;
    }
    if (*eval) {
      std::optional<std::filesystem::path> gold;
      if (!gold_path.empty()) gold = gold_path;
      auto result = dv::eval_cmd(pred_path, gold, collapse_first);
      if (result.binary) {
        if (as_json) {
          std::cout << dv::Json{{"correct", result.binary->correct},
                                {"n", result.binary->n},
                                {"accuracy", result.binary->value()},
                                {"percent", result.binary->percent_string()}}
                           .dump(2)
                    << "\n";
        } else {
          std::cout << dv::format_binary_table(system_name, *result.binary);
        }
        return kExitOk;
      }
      std::vector<dv::Rule> rules(dv::kAllRules.begin(), dv::kAllRules.end());
      if (rule != "all") rules = {*dv::parse_rule(rule)};
      if (as_json) {
        std::cout << dv::Json(*result.three_way).dump(2) << "\n";
      } else {
        std::cout << dv::format_table(system_name, *result.three_way, rules);
      }
      return kExitOk;
    }
    if (*report) {
      auto j = dv::parse_json(read_file(outcome_path));
      auto post = dv::decode<dv::Post>(dv::detail::require(j, "post"));
      auto outcome = dv::decode<dv::FusedOutcome>(dv::detail::require(j, "outcome"));
      std::cout << dv::render(outcome, post, g.format, make_clock(g));
      return kExitOk;
    }
    if (*mock) return run_mock_serve(profile_path, port, host);
  } catch (const dv::BackendError& e) {
    std::cerr << "backend failure: " << e.what() << "\n";
    return kExitBackend;
  } catch (const dv::BindError& e) {
    std::cerr << e.what() << "\n";
    return kExitBackend;
  } catch (const dv::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
