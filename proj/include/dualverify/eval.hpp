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

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "dualverify/error.hpp"
#include "dualverify/json_io.hpp"
#include "dualverify/labels.hpp"

namespace dualverify {

struct PredictionRecord {
  std::string post_id;
  FiveWayLabel pred = FiveWayLabel::kNei;
  ThreeWayLabel gold = ThreeWayLabel::kNei;

  friend bool operator==(const PredictionRecord&, const PredictionRecord&) = default;
};

struct BinaryPredictionRecord {
  std::string post_id;
  bool pred_fake = false;
  bool gold_fake = false;

  friend bool operator==(const BinaryPredictionRecord&,
                         const BinaryPredictionRecord&) = default;
};

enum class Rule { kStrict, kManipulationAware, kInterventionAware };

inline constexpr std::array kAllRules = {Rule::kStrict, Rule::kManipulationAware,
                                         Rule::kInterventionAware};

constexpr std::string_view to_string(Rule rule) {
  switch (rule) {
    case Rule::kStrict: return "strict";
    case Rule::kManipulationAware: return "manip";
    case Rule::kInterventionAware: return "interv";
  }
  return "";
}

inline std::optional<Rule> parse_rule(std::string_view s) {
  for (auto r : kAllRules) {
    if (to_string(r) == s) return r;
  }
  return std::nullopt;
}

// Exact counts; the double is derived on demand.
struct Accuracy {
  std::size_t correct = 0;
  std::size_t n = 0;

  double value() const {
    return n == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(n);
  }
  double percent() const { return 100.0 * value(); }

  std::string percent_string() const {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", percent());
    return buf;
  }

  friend bool operator==(const Accuracy&, const Accuracy&) = default;
};

constexpr bool flags_content(FiveWayLabel pred) {
  return pred == FiveWayLabel::kRefuted || pred == FiveWayLabel::kLmgs ||
         pred == FiveWayLabel::kMbu;
}

// strict:  the five-way prediction must equal the gold label; LMGS and MBU
//          are never strict-correct.
// manip:   Refuted/LMGS/MBU all count for gold Refuted; otherwise exact.
// interv:  Refuted/LMGS/MBU count for gold Refuted or NEI; gold NEI predicted
//          as NEI is wrong; gold Supported needs Supported.
constexpr bool is_correct(Rule rule, FiveWayLabel pred, ThreeWayLabel gold) {
  switch (rule) {
    case Rule::kStrict: return pred == lift(gold);
    case Rule::kManipulationAware:
      if (gold == ThreeWayLabel::kRefuted) return flags_content(pred);
      return pred == lift(gold);
    case Rule::kInterventionAware:
      if (gold == ThreeWayLabel::kSupported) return pred == FiveWayLabel::kSupported;
      return flags_content(pred);
  }
  return false;
}

inline FiveWayLabel effective_prediction(FiveWayLabel pred, bool collapse_first) {
  return collapse_first ? lift(collapse(pred)) : pred;
}

inline Accuracy score(Rule rule, std::span<const PredictionRecord> records,
                      bool collapse_first = false) {
  if (records.empty()) throw EmptySet();
  Accuracy acc{0, records.size()};
  for (const auto& r : records) {
    if (is_correct(rule, effective_prediction(r.pred, collapse_first), r.gold)) {
      ++acc.correct;
    }
  }
  return acc;
}

inline Accuracy score_strict(std::span<const PredictionRecord> records) {
  return score(Rule::kStrict, records);
}
inline Accuracy score_manipulation_aware(std::span<const PredictionRecord> records) {
  return score(Rule::kManipulationAware, records);
}
inline Accuracy score_intervention_aware(std::span<const PredictionRecord> records) {
  return score(Rule::kInterventionAware, records);
}

inline Accuracy score_binary(std::span<const BinaryPredictionRecord> records) {
  if (records.empty()) throw EmptySet();
  Accuracy acc{0, records.size()};
  for (const auto& r : records) {
    if (r.pred_fake == r.gold_fake) ++acc.correct;
  }
  return acc;
}

// Rows: predicted FiveWayLabel. Columns: gold ThreeWayLabel.
using ConfusionMatrix = std::array<std::array<std::size_t, 3>, 5>;

inline ConfusionMatrix confusion_matrix(std::span<const PredictionRecord> records,
                                        bool collapse_first = false) {
  if (records.empty()) throw EmptySet();
  ConfusionMatrix m{};
  for (const auto& r : records) {
    ++m[index_of(effective_prediction(r.pred, collapse_first))][index_of(r.gold)];
  }
  return m;
}

inline std::size_t total(const ConfusionMatrix& m) {
  std::size_t n = 0;
  for (const auto& row : m) {
    for (auto c : row) n += c;
  }
  return n;
}

inline Accuracy score_from_confusion(Rule rule, const ConfusionMatrix& m) {
  Accuracy acc{0, total(m)};
  if (acc.n == 0) throw EmptySet();
  for (auto pred : kAllFiveWayLabels) {
    for (auto gold : kAllThreeWayLabels) {
      if (is_correct(rule, pred, gold)) acc.correct += m[index_of(pred)][index_of(gold)];
    }
  }
  return acc;
}

struct CountCheck {
  Rule rule = Rule::kStrict;
  double acc_times_n = 0.0;
  long long nearest = 0;
  double gap = 0.0;
};

struct EvalReport {
  std::size_t n = 0;
  bool collapse_first = false;
  Accuracy strict;
  Accuracy manip_aware;
  Accuracy interv_aware;
  ConfusionMatrix confusion{};
  std::vector<CountCheck> count_check;

  const Accuracy& accuracy(Rule rule) const {
    switch (rule) {
      case Rule::kStrict: return strict;
      case Rule::kManipulationAware: return manip_aware;
      case Rule::kInterventionAware: return interv_aware;
    }
    return strict;
  }
};

inline void require_unique_ids(std::span<const PredictionRecord> records) {
  std::unordered_set<std::string_view> seen;
  for (const auto& r : records) {
    if (!seen.insert(r.post_id).second) {
      throw ValidationError("duplicate post_id '" + r.post_id + "'");
    }
  }
}

inline EvalReport evaluate(std::span<const PredictionRecord> records,
                           bool collapse_first = false) {
  if (records.empty()) throw EmptySet();
  require_unique_ids(records);
  EvalReport report;
  report.n = records.size();
  report.collapse_first = collapse_first;
  report.strict = score(Rule::kStrict, records, collapse_first);
  report.manip_aware = score(Rule::kManipulationAware, records, collapse_first);
  report.interv_aware = score(Rule::kInterventionAware, records, collapse_first);
  report.confusion = confusion_matrix(records, collapse_first);
  for (auto rule : kAllRules) {
    double scaled = report.accuracy(rule).value() * static_cast<double>(report.n);
    auto nearest = std::llround(scaled);
    report.count_check.push_back(
        {rule, scaled, nearest, std::fabs(scaled - static_cast<double>(nearest))});
  }
  return report;
}

// ---- serialization ---------------------------------------------------------

inline void to_json(Json& j, const PredictionRecord& r) {
  j = Json{{"post_id", r.post_id}, {"pred", r.pred}, {"gold", r.gold}};
}
inline void from_json(const Json& j, PredictionRecord& r) {
  r.post_id = detail::field<std::string>(j, "post_id");
  r.pred = detail::require(j, "pred").get<FiveWayLabel>();
  r.gold = detail::require(j, "gold").get<ThreeWayLabel>();
}

inline void validate(const PredictionRecord& r) {
  if (r.post_id.empty()) throw ValidationError("empty post_id");
}
inline void validate(const BinaryPredictionRecord& r) {
  if (r.post_id.empty()) throw ValidationError("empty post_id");
}

inline void to_json(Json& j, const BinaryPredictionRecord& r) {
  j = Json{{"post_id", r.post_id}, {"pred_fake", r.pred_fake}, {"gold_fake", r.gold_fake}};
}
inline void from_json(const Json& j, BinaryPredictionRecord& r) {
  r.post_id = detail::field<std::string>(j, "post_id");
  r.pred_fake = detail::field<bool>(j, "pred_fake");
  r.gold_fake = detail::field<bool>(j, "gold_fake");
}

inline Json accuracy_json(const Accuracy& a) {
  return Json{{"correct", a.correct},
              {"n", a.n},
              {"accuracy", a.value()},
              {"percent", a.percent_string()}};
}

inline void to_json(Json& j, const EvalReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.confusion) rows.push_back(row);
  Json labels_pred = Json::array();
  for (auto p : kAllFiveWayLabels) labels_pred.push_back(p);
  Json labels_gold = Json::array();
  for (auto g : kAllThreeWayLabels) labels_gold.push_back(g);
  Json checks = Json::array();
  for (const auto& c : r.count_check) {
    checks.push_back(Json{{"rule", std::string(to_string(c.rule))},
                          {"acc_times_n", c.acc_times_n},
                          {"nearest", c.nearest},
                          {"gap", c.gap}});
  }
  j = Json{{"n", r.n},
           {"collapse_first", r.collapse_first},
           {"strict_acc", accuracy_json(r.strict)},
           {"manip_aware_acc", accuracy_json(r.manip_aware)},
           {"interv_aware_acc", accuracy_json(r.interv_aware)},
           {"confusion", Json{{"pred", labels_pred}, {"gold", labels_gold}, {"counts", rows}}},
           {"count_check", checks}};
}

// Aligned text table in the layout of a results table: one row per system,
// one column per rule, percentages with two decimals.
inline std::string format_table(const std::string& system_name,
                                const EvalReport& r,
                                std::span<const Rule> rules = kAllRules) {
  auto header_of = [](Rule rule) -> const char* {
    switch (rule) {
      case Rule::kStrict: return "Strict";
      case Rule::kManipulationAware: return "Manip.-Aware";
      case Rule::kInterventionAware: return "Interv.-Aware";
    }
    return "";
  };
  std::size_t name_width = std::max<std::size_t>(system_name.size(), 5);
  std::string out;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%-*s", static_cast<int>(name_width), "Model");
  out += buf;
  for (auto rule : rules) {
    std::snprintf(buf, sizeof buf, "  %14s", header_of(rule));
    out += buf;
  }
  out += "\n";
  std::snprintf(buf, sizeof buf, "%-*s", static_cast<int>(name_width),
                system_name.c_str());
  out += buf;
  for (auto rule : rules) {
    std::snprintf(buf, sizeof buf, "  %14s", r.accuracy(rule).percent_string().c_str());
    out += buf;
  }
  out += "\n";
  return out;
}

inline std::string format_binary_table(const std::string& system_name,
                                       const Accuracy& acc) {
  std::size_t name_width = std::max<std::size_t>(system_name.size(), 5);
  char buf[128];
  std::string out;
  std::snprintf(buf, sizeof buf, "%-*s  %8s\n", static_cast<int>(name_width),
                "Model", "ACC");
  out += buf;
  std::snprintf(buf, sizeof buf, "%-*s  %8s\n", static_cast<int>(name_width),
                system_name.c_str(), acc.percent_string().c_str());
  out += buf;
  return out;
}

}  // namespace dualverify
