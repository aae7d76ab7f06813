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

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace dualverify {

// Global factuality verdict produced by the external-evidence fact checker.
enum class ThreeWayLabel { kSupported, kRefuted, kNei };

// Local manipulation classes: pristine, the four single edits (face swap,
// face attribute, text swap, text attribute) and their cross-modal pairs.
enum class ManipulationClass {
  kPristine,
  kFS,
  kFA,
  kTS,
  kTA,
  kFS_TS,
  kFS_TA,
  kFA_TS,
  kFA_TA,
};

// Final verdict after fusion. kLmgs: locally manipulated but globally
// supported. kMbu: manipulated but unverifiable.
enum class FiveWayLabel { kSupported, kRefuted, kNei, kLmgs, kMbu };

inline constexpr std::array kAllThreeWayLabels = {
    ThreeWayLabel::kSupported, ThreeWayLabel::kRefuted, ThreeWayLabel::kNei};

inline constexpr std::array kAllManipulationClasses = {
    ManipulationClass::kPristine, ManipulationClass::kFS,
    ManipulationClass::kFA,       ManipulationClass::kTS,
    ManipulationClass::kTA,       ManipulationClass::kFS_TS,
    ManipulationClass::kFS_TA,    ManipulationClass::kFA_TS,
    ManipulationClass::kFA_TA};

inline constexpr std::array kAllFiveWayLabels = {
    FiveWayLabel::kSupported, FiveWayLabel::kRefuted, FiveWayLabel::kNei,
    FiveWayLabel::kLmgs, FiveWayLabel::kMbu};

constexpr std::size_t index_of(ThreeWayLabel label) {
  return static_cast<std::size_t>(label);
}
constexpr std::size_t index_of(FiveWayLabel label) {
  return static_cast<std::size_t>(label);
}
constexpr std::size_t index_of(ManipulationClass klass) {
  return static_cast<std::size_t>(klass);
}

constexpr std::string_view to_string(ThreeWayLabel label) {
  switch (label) {
    case ThreeWayLabel::kSupported: return "supported";
    case ThreeWayLabel::kRefuted: return "refuted";
    case ThreeWayLabel::kNei: return "nei";
  }
  return "";
}

constexpr std::string_view to_string(FiveWayLabel label) {
  switch (label) {
    case FiveWayLabel::kSupported: return "supported";
    case FiveWayLabel::kRefuted: return "refuted";
    case FiveWayLabel::kNei: return "nei";
    case FiveWayLabel::kLmgs: return "lmgs";
    case FiveWayLabel::kMbu: return "mbu";
  }
  return "";
}

constexpr std::string_view to_string(ManipulationClass klass) {
  switch (klass) {
    case ManipulationClass::kPristine: return "pristine";
    case ManipulationClass::kFS: return "fs";
    case ManipulationClass::kFA: return "fa";
    case ManipulationClass::kTS: return "ts";
    case ManipulationClass::kTA: return "ta";
    case ManipulationClass::kFS_TS: return "fs_ts";
    case ManipulationClass::kFS_TA: return "fs_ta";
    case ManipulationClass::kFA_TS: return "fa_ts";
    case ManipulationClass::kFA_TA: return "fa_ta";
  }
  return "";
}

// Human-facing names used in rendered reports.
constexpr std::string_view display_name(FiveWayLabel label) {
  switch (label) {
    case FiveWayLabel::kSupported: return "Supported";
    case FiveWayLabel::kRefuted: return "Refuted";
    case FiveWayLabel::kNei: return "NEI";
    case FiveWayLabel::kLmgs: return "LMGS";
    case FiveWayLabel::kMbu: return "MBU";
  }
  return "";
}

constexpr std::string_view display_name(ManipulationClass klass) {
  switch (klass) {
    case ManipulationClass::kPristine: return "Pristine";
    case ManipulationClass::kFS: return "FS";
    case ManipulationClass::kFA: return "FA";
    case ManipulationClass::kTS: return "TS";
    case ManipulationClass::kTA: return "TA";
    case ManipulationClass::kFS_TS: return "FS+TS";
    case ManipulationClass::kFS_TA: return "FS+TA";
    case ManipulationClass::kFA_TS: return "FA+TS";
    case ManipulationClass::kFA_TA: return "FA+TA";
  }
  return "";
}

// Exact-match parsers for the canonical serialized names.
inline std::optional<ThreeWayLabel> parse_three_way(std::string_view s) {
  for (auto label : kAllThreeWayLabels) {
    if (to_string(label) == s) return label;
  }
  return std::nullopt;
}

inline std::optional<FiveWayLabel> parse_five_way(std::string_view s) {
  for (auto label : kAllFiveWayLabels) {
    if (to_string(label) == s) return label;
  }
  return std::nullopt;
}

inline std::optional<ManipulationClass> parse_manipulation_class(
    std::string_view s) {
  for (auto klass : kAllManipulationClasses) {
    if (to_string(klass) == s) return klass;
  }
  return std::nullopt;
}

// Maps the extended labels back to the three-way evaluation space.
constexpr ThreeWayLabel collapse(FiveWayLabel label) {
  switch (label) {
    case FiveWayLabel::kSupported: return ThreeWayLabel::kSupported;
    case FiveWayLabel::kNei: return ThreeWayLabel::kNei;
    case FiveWayLabel::kRefuted:
    case FiveWayLabel::kLmgs:
    case FiveWayLabel::kMbu: return ThreeWayLabel::kRefuted;
  }
  return ThreeWayLabel::kRefuted;
}

constexpr FiveWayLabel lift(ThreeWayLabel label) {
  switch (label) {
    case ThreeWayLabel::kSupported: return FiveWayLabel::kSupported;
    case ThreeWayLabel::kRefuted: return FiveWayLabel::kRefuted;
    case ThreeWayLabel::kNei: return FiveWayLabel::kNei;
  }
  return FiveWayLabel::kNei;
}

constexpr bool is_manipulated(ManipulationClass klass) {
  return klass != ManipulationClass::kPristine;
}

// Classes that carry an image edit (and therefore at least one box).
constexpr bool has_image_edit(ManipulationClass klass) {
  switch (klass) {
    case ManipulationClass::kFS:
    case ManipulationClass::kFA:
    case ManipulationClass::kFS_TS:
    case ManipulationClass::kFS_TA:
    case ManipulationClass::kFA_TS:
    case ManipulationClass::kFA_TA: return true;
    default: return false;
  }
}

// Classes that carry a text edit (and therefore at least one flagged token).
constexpr bool has_text_edit(ManipulationClass klass) {
  switch (klass) {
    case ManipulationClass::kTS:
    case ManipulationClass::kTA:
    case ManipulationClass::kFS_TS:
    case ManipulationClass::kFS_TA:
    case ManipulationClass::kFA_TS:
    case ManipulationClass::kFA_TA: return true;
    default: return false;
  }
}

}  // namespace dualverify
