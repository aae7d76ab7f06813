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

#include <cstdio>
#include <optional>
#include <string>
#include <utility>

#include "dualverify/error.hpp"
#include "dualverify/labels.hpp"
#include "dualverify/types.hpp"

namespace dualverify {

enum class DetectorPurpose {
  kExplanationOnly,  // verdict already final; detector output only explains
  kDecisive,         // detector output decides between the extended labels
};

constexpr std::string_view to_string(DetectorPurpose p) {
  return p == DetectorPurpose::kExplanationOnly ? "explanation_only" : "decisive";
}

struct RoutingDecision {
  bool run_detector = true;
  DetectorPurpose purpose = DetectorPurpose::kDecisive;
  std::optional<FiveWayLabel> provisional;
  // Verdict the fusion table is applied to. Differs from the fact-check
  // verdict only when a low-confidence Supported is demoted to NEI.
  ThreeWayLabel effective_verdict = ThreeWayLabel::kNei;

  friend bool operator==(const RoutingDecision&, const RoutingDecision&) = default;
};

struct FusionPolicy {
  // Supported verdicts with confidence below this are treated as NEI.
  // 0 disables threshold routing.
  double uncertainty_threshold = 0.0;
};

inline void validate(const FusionPolicy& policy) {
  if (!in_unit_interval(policy.uncertainty_threshold)) {
    throw ValidationError("uncertainty_threshold must lie in [0,1]");
  }
}

// The fact checker runs first. A refutation is final and the detector only
// runs to explain it; otherwise the detector's output is decisive.
inline RoutingDecision route(ThreeWayLabel verdict,
                             std::optional<double> confidence,
                             const FusionPolicy& policy) {
  validate(policy);
  if (verdict == ThreeWayLabel::kRefuted) {
    return {true, DetectorPurpose::kExplanationOnly, FiveWayLabel::kRefuted,
            ThreeWayLabel::kRefuted};
  }
  ThreeWayLabel effective = verdict;
  if (verdict == ThreeWayLabel::kSupported && policy.uncertainty_threshold > 0.0 &&
      confidence && *confidence < policy.uncertainty_threshold) {
    effective = ThreeWayLabel::kNei;
  }
  return {true, DetectorPurpose::kDecisive, std::nullopt, effective};
}

// Rule table. Total over every (verdict, class) cell:
//   refuted, any         -> Refuted
//   supported, pristine  -> Supported
//   supported, edited    -> LMGS
//   nei, pristine        -> NEI
//   nei, edited          -> MBU
constexpr FiveWayLabel fuse(ThreeWayLabel verdict, ManipulationClass klass) {
  const bool edited = is_manipulated(klass);
  switch (verdict) {
    case ThreeWayLabel::kRefuted: return FiveWayLabel::kRefuted;
    case ThreeWayLabel::kSupported:
      return edited ? FiveWayLabel::kLmgs : FiveWayLabel::kSupported;
    case ThreeWayLabel::kNei:
      return edited ? FiveWayLabel::kMbu : FiveWayLabel::kNei;
  }
  return FiveWayLabel::kNei;
}

// "Manipulated" is decided by the class; a result whose is_fake flag
// disagrees is rejected.
inline FiveWayLabel fuse(ThreeWayLabel verdict,
                         const ManipulationResult& manipulation) {
  if (manipulation.is_fake != is_manipulated(manipulation.klass)) {
    throw ValidationError("is_fake disagrees with class '" +
                          std::string(to_string(manipulation.klass)) + "'");
  }
  return fuse(verdict, manipulation.klass);
}

// Lifts the fact checker's answer when it ran with a manipulation context.
// Such a backend may answer in the extended label space directly.
inline FiveWayLabel lift_injected(const FactCheckResult& fact) {
  return fact.extended_verdict ? *fact.extended_verdict : lift(fact.verdict);
}

inline std::string fired_rule(ThreeWayLabel verdict, ManipulationClass klass) {
  std::string rule = "rule: ";
  rule += to_string(verdict);
  if (verdict != ThreeWayLabel::kRefuted) {
    rule += is_manipulated(klass) ? "+manipulated" : "+pristine";
  }
  return rule;
}

inline FusedOutcome fuse_outcome(const FactCheckResult& fact,
                                 std::optional<ManipulationResult> manipulation,
                                 const FusionPolicy& policy, PipelineMode mode) {
  FusedOutcome out;
  out.fact_check = fact;
  out.pipeline_mode = mode;

  if (mode == PipelineMode::kInjection) {
    out.label = lift_injected(fact);
    out.rationale = "injection: fact-check verdict '" +
                    std::string(to_string(out.label)) +
                    "' issued with manipulation context";
    if (!manipulation) out.rationale += " (context unavailable)";
    out.manipulation = std::move(manipulation);
    validate(out);
    return out;
  }

  auto decision = route(fact.verdict, fact.confidence, policy);
  if (decision.purpose == DetectorPurpose::kExplanationOnly) {
    out.label = *decision.provisional;
    out.rationale = "rule: refuted";
    if (!manipulation) {
      out.rationale += " (manipulation explanation unavailable)";
    } else {
      fuse(fact.verdict, *manipulation);  // consistency check only
    }
    out.manipulation = std::move(manipulation);
    validate(out);
    return out;
  }

  if (!manipulation) {
    throw MissingManipulation(
        "verdict '" + std::string(to_string(fact.verdict)) +
        "' needs a manipulation result to be fused");
  }
  out.label = fuse(decision.effective_verdict, *manipulation);
  out.rationale = fired_rule(decision.effective_verdict, manipulation->klass);
  if (decision.effective_verdict != fact.verdict) {
    char buf[96];
    std::snprintf(buf, sizeof buf,
                  " (supported below confidence threshold %.2f)",
                  policy.uncertainty_threshold);
    out.rationale += buf;
  }
  out.manipulation = std::move(manipulation);
  validate(out);
  return out;
}

}  // namespace dualverify
