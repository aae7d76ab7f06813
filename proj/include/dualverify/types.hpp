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

#include <cctype>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dualverify/error.hpp"
#include "dualverify/labels.hpp"

namespace dualverify {

struct ImageRef {
  std::string locator;  // path or URL; pixels are never read
  int width = 0;
  int height = 0;

  friend bool operator==(const ImageRef&, const ImageRef&) = default;
};

// One image-text item under verification.
struct Post {
  std::string id;
  std::string text;
  std::optional<ImageRef> image;
  std::optional<std::map<std::string, std::string>> source_meta;

  friend bool operator==(const Post&, const Post&) = default;
};

// Normalized to [0,1] on both axes; pixel boxes only exist at render time.
struct BoundingBox {
  double x1 = 0.0;
  double y1 = 0.0;
  double x2 = 0.0;
  double y2 = 0.0;

  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

struct TokenLabelSeq {
  std::vector<std::string> tokens;
  std::vector<int> labels;  // each 0 or 1

  bool any_flagged() const {
    for (int l : labels) {
      if (l != 0) return true;
    }
    return false;
  }

  friend bool operator==(const TokenLabelSeq&, const TokenLabelSeq&) = default;
};

enum class Stance { kSupports, kRefutes, kNeutral };

enum class Tool { kWebSearch, kImageSearch, kReverseImageSearch, kGeolocation };

struct EvidenceItem {
  std::string source;
  std::string snippet;
  std::string retrieved_at;  // ISO-8601 timestamp
  std::optional<Stance> stance;

  friend bool operator==(const EvidenceItem&, const EvidenceItem&) = default;
};

struct ToolInvocation {
  Tool tool = Tool::kWebSearch;
  std::string query;
  std::int64_t result_count = 0;

  friend bool operator==(const ToolInvocation&, const ToolInvocation&) = default;
};

struct FactCheckResult {
  ThreeWayLabel verdict = ThreeWayLabel::kNei;
  std::optional<double> confidence;
  std::vector<EvidenceItem> evidence;
  std::vector<std::string> reasoning;
  std::vector<ToolInvocation> tool_trace;
  // Set only by backends that received a manipulation context and chose to
  // answer in the extended label space. Must collapse to `verdict`.
  std::optional<FiveWayLabel> extended_verdict;

  friend bool operator==(const FactCheckResult&, const FactCheckResult&) = default;
};

struct ManipulationResult {
  bool is_fake = false;
  ManipulationClass klass = ManipulationClass::kPristine;
  std::optional<std::map<ManipulationClass, double>> class_scores;
  std::optional<TokenLabelSeq> token_labels;
  std::vector<BoundingBox> boxes;

  friend bool operator==(const ManipulationResult&, const ManipulationResult&) = default;
};

enum class PipelineMode { kRouting, kInjection };

struct FusedOutcome {
  FiveWayLabel label = FiveWayLabel::kNei;
  FactCheckResult fact_check;
  std::optional<ManipulationResult> manipulation;
  std::string rationale;
  PipelineMode pipeline_mode = PipelineMode::kRouting;

  friend bool operator==(const FusedOutcome&, const FusedOutcome&) = default;
};

constexpr std::string_view to_string(Stance stance) {
  switch (stance) {
    case Stance::kSupports: return "supports";
    case Stance::kRefutes: return "refutes";
    case Stance::kNeutral: return "neutral";
  }
  return "";
}

constexpr std::string_view to_string(Tool tool) {
  switch (tool) {
    case Tool::kWebSearch: return "web_search";
    case Tool::kImageSearch: return "image_search";
    case Tool::kReverseImageSearch: return "reverse_image_search";
    case Tool::kGeolocation: return "geolocation";
  }
  return "";
}

constexpr std::string_view to_string(PipelineMode mode) {
  return mode == PipelineMode::kRouting ? "routing" : "injection";
}

inline std::optional<Stance> parse_stance(std::string_view s) {
  for (auto v : {Stance::kSupports, Stance::kRefutes, Stance::kNeutral}) {
    if (to_string(v) == s) return v;
  }
  return std::nullopt;
}

inline std::optional<Tool> parse_tool(std::string_view s) {
  for (auto v : {Tool::kWebSearch, Tool::kImageSearch, Tool::kReverseImageSearch,
                 Tool::kGeolocation}) {
    if (to_string(v) == s) return v;
  }
  return std::nullopt;
}

inline std::optional<PipelineMode> parse_pipeline_mode(std::string_view s) {
  if (s == "routing") return PipelineMode::kRouting;
  if (s == "injection") return PipelineMode::kInjection;
  return std::nullopt;
}

// Whitespace segmentation shared by every token-level annotation.
inline std::vector<std::string> whitespace_tokens(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() &&
           std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
    }
    std::size_t start = i;
    while (i < text.size() &&
           !std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
    }
    if (i > start) out.emplace_back(text.substr(start, i - start));
  }
  return out;
}

inline bool in_unit_interval(double v) {
  return std::isfinite(v) && v >= 0.0 && v <= 1.0;
}

// ---- invariant checks ------------------------------------------------------

inline void validate(const ImageRef& image) {
  if (image.width < 1 || image.height < 1) {
    throw ValidationError("image dimensions must be >= 1, got " +
                          std::to_string(image.width) + "x" +
                          std::to_string(image.height));
  }
}

inline void validate(const Post& post) {
  if (post.id.empty()) throw ValidationError("post id is empty");
  if (post.text.empty()) {
    throw ValidationError("post '" + post.id + "' has empty text");
  }
  if (post.image) validate(*post.image);
}

inline void validate(const BoundingBox& box) {
  bool ok = std::isfinite(box.x1) && std::isfinite(box.y1) &&
            std::isfinite(box.x2) && std::isfinite(box.y2) && box.x1 >= 0.0 &&
            box.y1 >= 0.0 && box.x1 < box.x2 && box.y1 < box.y2 &&
            box.x2 <= 1.0 && box.y2 <= 1.0;
  if (!ok) {
    throw InvalidBox("bounding box (" + std::to_string(box.x1) + "," +
                     std::to_string(box.y1) + "," + std::to_string(box.x2) +
                     "," + std::to_string(box.y2) +
                     ") violates 0 <= x1 < x2 <= 1, 0 <= y1 < y2 <= 1");
  }
}

inline void validate(const TokenLabelSeq& seq) {
  if (seq.tokens.size() != seq.labels.size()) {
    throw TokenMismatch("token/label length mismatch: " +
                        std::to_string(seq.tokens.size()) + " tokens, " +
                        std::to_string(seq.labels.size()) + " labels");
  }
  for (int l : seq.labels) {
    if (l != 0 && l != 1) throw TokenMismatch("token label must be 0 or 1");
  }
}

// Tokens must be the whitespace segmentation of the post text.
inline void validate_tokens_against(const TokenLabelSeq& seq,
                                    std::string_view text) {
  validate(seq);
  if (seq.tokens != whitespace_tokens(text)) {
    throw TokenMismatch("tokens do not match whitespace segmentation of text");
  }
}

inline void validate(const EvidenceItem& item) {
  if (item.source.empty()) throw ValidationError("evidence source is empty");
}

inline void validate(const FactCheckResult& result) {
  if (result.confidence && !in_unit_interval(*result.confidence)) {
    throw ValidationError("confidence outside [0,1]");
  }
  for (const auto& item : result.evidence) validate(item);
  for (const auto& call : result.tool_trace) {
    if (call.result_count < 0) throw ValidationError("negative result_count");
  }
  if (result.evidence.empty() && result.verdict != ThreeWayLabel::kNei &&
      !result.tool_trace.empty()) {
    throw ValidationError(
        "tools were invoked but a non-NEI verdict carries no evidence");
  }
  if (result.extended_verdict &&
      collapse(*result.extended_verdict) != result.verdict) {
    throw ValidationError("extended verdict '" +
                          std::string(to_string(*result.extended_verdict)) +
                          "' does not collapse to verdict '" +
                          std::string(to_string(result.verdict)) + "'");
  }
}

inline void validate(const ManipulationResult& result) {
  if (result.is_fake != is_manipulated(result.klass)) {
    throw ValidationError("is_fake disagrees with class '" +
                          std::string(to_string(result.klass)) + "'");
  }
  for (const auto& box : result.boxes) validate(box);
  if (result.token_labels) validate(*result.token_labels);
  if (result.class_scores) {
    for (const auto& [klass, score] : *result.class_scores) {
      if (!in_unit_interval(score)) {
        throw ValidationError("class score outside [0,1]");
      }
    }
  }
  if (result.klass == ManipulationClass::kPristine) {
    if (!result.boxes.empty()) {
      throw InvalidBox("pristine result carries bounding boxes");
    }
    if (result.token_labels && result.token_labels->any_flagged()) {
      throw TokenMismatch("pristine result flags manipulated tokens");
    }
  }
  if (has_image_edit(result.klass) && result.boxes.empty()) {
    throw InvalidBox("class '" + std::string(to_string(result.klass)) +
                     "' requires at least one bounding box");
  }
  if (has_text_edit(result.klass) &&
      !(result.token_labels && result.token_labels->any_flagged())) {
    throw TokenMismatch("class '" + std::string(to_string(result.klass)) +
                        "' requires at least one flagged token");
  }
}

inline void validate(const FusedOutcome& outcome) {
  validate(outcome.fact_check);
  if (outcome.manipulation) validate(*outcome.manipulation);
  if (outcome.label == FiveWayLabel::kLmgs ||
      outcome.label == FiveWayLabel::kMbu) {
    if (!outcome.manipulation || !outcome.manipulation->is_fake) {
      throw ValidationError("label '" +
                            std::string(to_string(outcome.label)) +
                            "' requires a fake manipulation result");
    }
  }
}

}  // namespace dualverify
