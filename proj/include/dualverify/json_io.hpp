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

// Canonical JSON form of every domain type. Field names follow the domain
// structs exactly; enumerations are lowercase snake_case strings; absent
// optionals are omitted. Object keys are sorted, and dump() is the canonical
// byte form.

#include <string>
#include <string_view>
#include <utility>

#include "json.hpp"

#include "dualverify/error.hpp"
#include "dualverify/labels.hpp"
#include "dualverify/types.hpp"

namespace dualverify {

using Json = nlohmann::json;

namespace detail {

inline const Json& require(const Json& j, const char* key) {
  if (!j.is_object()) throw ParseError("expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) {
    throw ParseError(std::string("missing field '") + key + "'");
  }
  return *it;
}

inline const Json* optional_field(const Json& j, const char* key) {
  if (!j.is_object()) throw ParseError("expected a JSON object");
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return nullptr;
  return &*it;
}

template <typename T>
T get_as(const Json& j, const char* key) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("field '") + key + "': " + e.what());
  }
}

template <typename T>
T field(const Json& j, const char* key) {
  return get_as<T>(require(j, key), key);
}

template <typename T, typename Parser>
T parse_enum(const Json& j, Parser parser, const char* what) {
  if (!j.is_string()) {
    throw ParseError(std::string(what) + " must be a string");
  }
  auto value = parser(j.get_ref<const std::string&>());
  if (!value) {
    throw ParseError(std::string("unknown ") + what + " '" +
                     j.get<std::string>() + "'");
  }
  return *value;
}

}  // namespace detail

// ---- enums -----------------------------------------------------------------

inline void to_json(Json& j, ThreeWayLabel v) { j = std::string(to_string(v)); }
inline void from_json(const Json& j, ThreeWayLabel& v) {
  v = detail::parse_enum<ThreeWayLabel>(j, parse_three_way, "three-way label");
}

inline void to_json(Json& j, FiveWayLabel v) { j = std::string(to_string(v)); }
inline void from_json(const Json& j, FiveWayLabel& v) {
  v = detail::parse_enum<FiveWayLabel>(j, parse_five_way, "five-way label");
}

inline void to_json(Json& j, ManipulationClass v) {
  j = std::string(to_string(v));
}
inline void from_json(const Json& j, ManipulationClass& v) {
  v = detail::parse_enum<ManipulationClass>(j, parse_manipulation_class,
                                            "manipulation class");
}

inline void to_json(Json& j, Stance v) { j = std::string(to_string(v)); }
inline void from_json(const Json& j, Stance& v) {
  v = detail::parse_enum<Stance>(j, parse_stance, "stance");
}

inline void to_json(Json& j, Tool v) { j = std::string(to_string(v)); }
inline void from_json(const Json& j, Tool& v) {
  v = detail::parse_enum<Tool>(j, parse_tool, "tool");
}

inline void to_json(Json& j, PipelineMode v) { j = std::string(to_string(v)); }
inline void from_json(const Json& j, PipelineMode& v) {
  v = detail::parse_enum<PipelineMode>(j, parse_pipeline_mode, "pipeline mode");
}

// ---- records ---------------------------------------------------------------

inline void to_json(Json& j, const ImageRef& v) {
  j = Json{{"locator", v.locator}, {"width", v.width}, {"height", v.height}};
}
inline void from_json(const Json& j, ImageRef& v) {
  v.locator = detail::field<std::string>(j, "locator");
  v.width = detail::field<int>(j, "width");
  v.height = detail::field<int>(j, "height");
}

inline void to_json(Json& j, const Post& v) {
  j = Json{{"id", v.id}, {"text", v.text}};
  if (v.image) j["image"] = *v.image;
  if (v.source_meta) j["source_meta"] = *v.source_meta;
}
inline void from_json(const Json& j, Post& v) {
  v.id = detail::field<std::string>(j, "id");
  v.text = detail::field<std::string>(j, "text");
  v.image.reset();
  v.source_meta.reset();
  if (auto* image = detail::optional_field(j, "image")) {
    v.image = detail::get_as<ImageRef>(*image, "image");
  }
  if (auto* meta = detail::optional_field(j, "source_meta")) {
    v.source_meta = detail::get_as<std::map<std::string, std::string>>(
        *meta, "source_meta");
  }
}

inline void to_json(Json& j, const BoundingBox& v) {
  j = Json{{"x1", v.x1}, {"y1", v.y1}, {"x2", v.x2}, {"y2", v.y2}};
}
inline void from_json(const Json& j, BoundingBox& v) {
  v.x1 = detail::field<double>(j, "x1");
  v.y1 = detail::field<double>(j, "y1");
  v.x2 = detail::field<double>(j, "x2");
  v.y2 = detail::field<double>(j, "y2");
}

inline void to_json(Json& j, const TokenLabelSeq& v) {
  j = Json{{"tokens", v.tokens}, {"labels", v.labels}};
}
inline void from_json(const Json& j, TokenLabelSeq& v) {
  v.tokens = detail::field<std::vector<std::string>>(j, "tokens");
  v.labels = detail::field<std::vector<int>>(j, "labels");
}

inline void to_json(Json& j, const EvidenceItem& v) {
  j = Json{{"source", v.source},
           {"snippet", v.snippet},
           {"retrieved_at", v.retrieved_at}};
  if (v.stance) j["stance"] = *v.stance;
}
inline void from_json(const Json& j, EvidenceItem& v) {
  v.source = detail::field<std::string>(j, "source");
  v.snippet = detail::field<std::string>(j, "snippet");
  v.retrieved_at = detail::field<std::string>(j, "retrieved_at");
  v.stance.reset();
  if (auto* s = detail::optional_field(j, "stance")) v.stance = s->get<Stance>();
}

inline void to_json(Json& j, const ToolInvocation& v) {
  j = Json{{"tool", v.tool}, {"query", v.query}, {"result_count", v.result_count}};
}
inline void from_json(const Json& j, ToolInvocation& v) {
  v.tool = detail::require(j, "tool").get<Tool>();
  v.query = detail::field<std::string>(j, "query");
  v.result_count = detail::field<std::int64_t>(j, "result_count");
}

inline void to_json(Json& j, const FactCheckResult& v) {
  j = Json{{"verdict", v.verdict},
           {"evidence", v.evidence},
           {"reasoning", v.reasoning},
           {"tool_trace", v.tool_trace}};
  if (v.confidence) j["confidence"] = *v.confidence;
  if (v.extended_verdict) j["extended_verdict"] = *v.extended_verdict;
}
inline void from_json(const Json& j, FactCheckResult& v) {
  v.verdict = detail::require(j, "verdict").get<ThreeWayLabel>();
  v.confidence.reset();
  v.extended_verdict.reset();
  if (auto* c = detail::optional_field(j, "confidence")) {
    v.confidence = detail::get_as<double>(*c, "confidence");
  }
  if (auto* e = detail::optional_field(j, "extended_verdict")) {
    v.extended_verdict = e->get<FiveWayLabel>();
  }
  v.evidence = detail::field<std::vector<EvidenceItem>>(j, "evidence");
  v.reasoning = detail::field<std::vector<std::string>>(j, "reasoning");
  v.tool_trace = detail::field<std::vector<ToolInvocation>>(j, "tool_trace");
}

inline void to_json(Json& j, const ManipulationResult& v) {
  j = Json{{"is_fake", v.is_fake}, {"klass", v.klass}, {"boxes", v.boxes}};
  if (v.class_scores) {
    Json scores = Json::object();
    for (const auto& [klass, score] : *v.class_scores) {
      scores[std::string(to_string(klass))] = score;
    }
    j["class_scores"] = std::move(scores);
  }
  if (v.token_labels) j["token_labels"] = *v.token_labels;
}
inline void from_json(const Json& j, ManipulationResult& v) {
  v.is_fake = detail::field<bool>(j, "is_fake");
  v.klass = detail::require(j, "klass").get<ManipulationClass>();
  v.boxes = detail::field<std::vector<BoundingBox>>(j, "boxes");
  v.class_scores.reset();
  v.token_labels.reset();
  if (auto* s = detail::optional_field(j, "class_scores")) {
    if (!s->is_object()) throw ParseError("class_scores must be an object");
    std::map<ManipulationClass, double> scores;
    for (const auto& [key, value] : s->items()) {
      auto klass = parse_manipulation_class(key);
      if (!klass) throw ParseError("unknown class in class_scores '" + key + "'");
      scores[*klass] = detail::get_as<double>(value, "class_scores");
    }
    v.class_scores = std::move(scores);
  }
  if (auto* t = detail::optional_field(j, "token_labels")) {
    v.token_labels = detail::get_as<TokenLabelSeq>(*t, "token_labels");
  }
}

inline void to_json(Json& j, const FusedOutcome& v) {
  j = Json{{"label", v.label},
           {"fact_check", v.fact_check},
           {"rationale", v.rationale},
           {"pipeline_mode", v.pipeline_mode}};
  if (v.manipulation) j["manipulation"] = *v.manipulation;
}
inline void from_json(const Json& j, FusedOutcome& v) {
  v.label = detail::require(j, "label").get<FiveWayLabel>();
  v.fact_check = detail::field<FactCheckResult>(j, "fact_check");
  v.manipulation.reset();
  if (auto* m = detail::optional_field(j, "manipulation")) {
    v.manipulation = m->get<ManipulationResult>();
  }
  v.rationale = detail::field<std::string>(j, "rationale");
  v.pipeline_mode = detail::require(j, "pipeline_mode").get<PipelineMode>();
}

// ---- entry points ----------------------------------------------------------

inline std::string canonical_dump(const Json& j) {
  return j.dump(-1, ' ', false, Json::error_handler_t::replace);
}

template <typename T>
std::string encode(const T& value) {
  return canonical_dump(Json(value));
}

// Parses and validates; nothing partially valid escapes.
template <typename T>
T decode(const Json& j) {
  T value;
  try {
    value = j.get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(e.what());
  }
  validate(value);
  return value;
}

inline Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

template <typename T>
T decode_text(std::string_view text) {
  return decode<T>(parse_json(text));
}

}  // namespace dualverify
