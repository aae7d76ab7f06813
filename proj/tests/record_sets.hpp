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

// Prediction sets built cell by cell from (gold, pred) counts, plus a scoring
// oracle written as explicit acceptance sets, independent of eval.hpp.

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dualverify/eval.hpp"

namespace dualverify::testing {

struct Cell {
  ThreeWayLabel gold;
  FiveWayLabel pred;
  int count;
};

inline std::vector<PredictionRecord> build_records(const std::vector<Cell>& cells,
                                                   const std::string& prefix = "r") {
  std::vector<PredictionRecord> out;
  int id = 0;
  for (const auto& c : cells) {
    for (int i = 0; i < c.count; ++i) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%s%04d", prefix.c_str(), id++);
      out.push_back({buf, c.pred, c.gold});
    }
  }
  return out;
}

// Rule acceptance sets, listed by gold label.
inline bool oracle_correct(Rule rule, FiveWayLabel pred, ThreeWayLabel gold) {
  using F = FiveWayLabel;
  using T = ThreeWayLabel;
  static const std::set<std::pair<T, F>> strict = {
      {T::kSupported, F::kSupported}, {T::kRefuted, F::kRefuted}, {T::kNei, F::kNei}};
  static const std::set<std::pair<T, F>> manip = {
      {T::kSupported, F::kSupported}, {T::kRefuted, F::kRefuted},
      {T::kRefuted, F::kLmgs},        {T::kRefuted, F::kMbu},
      {T::kNei, F::kNei}};
  static const std::set<std::pair<T, F>> interv = {
      {T::kSupported, F::kSupported}, {T::kRefuted, F::kRefuted},
      {T::kRefuted, F::kLmgs},        {T::kRefuted, F::kMbu},
      {T::kNei, F::kRefuted},         {T::kNei, F::kLmgs},
      {T::kNei, F::kMbu}};
  const auto& set = rule == Rule::kStrict              ? strict
                    : rule == Rule::kManipulationAware ? manip
                                                       : interv;
  return set.count({gold, pred}) > 0;
}

inline std::size_t oracle_count(Rule rule, const std::vector<PredictionRecord>& records) {
  std::size_t n = 0;
  for (const auto& r : records) n += oracle_correct(rule, r.pred, r.gold);
  return n;
}

// 300 records: 84 strict-correct, 139 manipulation-aware, 141
// intervention-aware.
inline std::vector<PredictionRecord> fused_system_records() {
  using F = FiveWayLabel;
  using T = ThreeWayLabel;
  return build_records({{T::kRefuted, F::kRefuted, 20},
                        {T::kRefuted, F::kLmgs, 30},
                        {T::kRefuted, F::kMbu, 25},
                        {T::kSupported, F::kSupported, 30},
                        {T::kNei, F::kNei, 34},
                        {T::kNei, F::kMbu, 20},
                        {T::kNei, F::kRefuted, 10},
                        {T::kNei, F::kLmgs, 6},
                        {T::kSupported, F::kNei, 40},
                        {T::kSupported, F::kLmgs, 25},
                        {T::kRefuted, F::kSupported, 30},
                        {T::kNei, F::kSupported, 30}},
                       "ds");
}

// 300 records: 90 strict, 103 manipulation-aware, 96 intervention-aware.
inline std::vector<PredictionRecord> fact_checker_records() {
  using F = FiveWayLabel;
  using T = ThreeWayLabel;
  return build_records({{T::kRefuted, F::kRefuted, 30},
                        {T::kRefuted, F::kLmgs, 7},
                        {T::kRefuted, F::kMbu, 6},
                        {T::kSupported, F::kSupported, 20},
                        {T::kNei, F::kNei, 40},
                        {T::kNei, F::kRefuted, 33},
                        {T::kSupported, F::kNei, 60},
                        {T::kRefuted, F::kNei, 54},
                        {T::kNei, F::kSupported, 50}},
                       "df");
}

}  // namespace dualverify::testing
