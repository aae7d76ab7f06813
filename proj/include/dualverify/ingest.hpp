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

// JSONL loaders for manipulation-annotated posts and fact-checking claims.
// Every record is validated at the boundary; errors carry the 1-based line.
//
// Manipulation line:
//   {"post": Post, "gold_class": "<external class string>",
//    "gold_boxes": [BoundingBox...]            (normalized), or
//    "gold_boxes_px": [[x1,y1,x2,y2], ...]     (pixels, needs post.image),
//    "gold_token_flags": {"tokens": [...]?, "labels": [...]}}
// Claim line:
//   {"post": Post, "gold": "supported" | "refuted" | "nei" | ...}

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "dualverify/error.hpp"
#include "dualverify/json_io.hpp"
#include "dualverify/labels.hpp"
#include "dualverify/types.hpp"

namespace dualverify {

struct Dgm4Record {
  Post post;
  ManipulationClass gold_class = ManipulationClass::kPristine;
  std::vector<BoundingBox> gold_boxes;
  std::optional<TokenLabelSeq> gold_token_flags;

  friend bool operator==(const Dgm4Record&, const Dgm4Record&) = default;
};

struct ClaimRecord {
  Post post;
  ThreeWayLabel gold = ThreeWayLabel::kNei;

  friend bool operator==(const ClaimRecord&, const ClaimRecord&) = default;
};

// External class string -> ManipulationClass. The canonical snake_case names
// are always present; the defaults add descriptive spellings.
class ClassNameMap {
 public:
  ClassNameMap() {
    for (auto klass : kAllManipulationClasses) {
      entries_.emplace(std::string(to_string(klass)), klass);
    }
  }

  static ClassNameMap defaults() {
    ClassNameMap m;
    using MC = ManipulationClass;
    m.add("orig", MC::kPristine);
    m.add("face_swap", MC::kFS);
    m.add("face_attribute", MC::kFA);
    m.add("text_swap", MC::kTS);
    m.add("text_attribute", MC::kTA);
    m.add("face_swap&text_swap", MC::kFS_TS);
    m.add("face_swap&text_attribute", MC::kFS_TA);
    m.add("face_attribute&text_swap", MC::kFA_TS);
    m.add("face_attribute&text_attribute", MC::kFA_TA);
    for (auto klass : kAllManipulationClasses) {
      m.add(std::string(display_name(klass)), klass);
    }
    return m;
  }

  // File format: a JSON object {"external string": "canonical name", ...},
  // merged over the defaults.
  static ClassNameMap from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open class map " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    auto j = parse_json(ss.str());
    if (!j.is_object()) throw ParseError("class map must be a JSON object");
    auto m = defaults();
    for (const auto& [key, value] : j.items()) {
      m.add(key, value.get<ManipulationClass>());
    }
    return m;
  }

  void add(std::string external, ManipulationClass klass) {
    entries_[std::move(external)] = klass;
  }

  ManipulationClass resolve(const std::string& external) const {
    auto it = entries_.find(external);
    if (it == entries_.end()) throw UnknownClass(external);
    return it->second;
  }

  const std::map<std::string, ManipulationClass>& entries() const {
    return entries_;
  }

 private:
  std::map<std::string, ManipulationClass> entries_;
};

inline void validate(const Dgm4Record& r) {
  validate(r.post);
  ManipulationResult as_result{is_manipulated(r.gold_class), r.gold_class,
                               std::nullopt, r.gold_token_flags, r.gold_boxes};
  validate(as_result);
  if (r.gold_token_flags) validate_tokens_against(*r.gold_token_flags, r.post.text);
}

inline void validate(const ClaimRecord& r) { validate(r.post); }

inline std::optional<ThreeWayLabel> parse_gold_label(std::string_view s) {
  std::string norm;
  for (char c : s) {
    if (c == '_' || c == ' ') c = '-';
    norm += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  while (!norm.empty() && norm.back() == '-') norm.pop_back();
  while (!norm.empty() && norm.front() == '-') norm.erase(norm.begin());
  if (norm == "supported") return ThreeWayLabel::kSupported;
  if (norm == "refuted") return ThreeWayLabel::kRefuted;
  if (norm == "nei" || norm == "not-enough-information") return ThreeWayLabel::kNei;
  return std::nullopt;
}

// ---- canonical serialization -----------------------------------------------

inline void to_json(Json& j, const Dgm4Record& r) {
  j = Json{{"post", r.post}, {"gold_class", r.gold_class}, {"gold_boxes", r.gold_boxes}};
  if (r.gold_token_flags) j["gold_token_flags"] = *r.gold_token_flags;
}

inline void to_json(Json& j, const ClaimRecord& r) {
  j = Json{{"post", r.post}, {"gold", r.gold}};
}

namespace detail {

inline Dgm4Record dgm4_from_line(const Json& j, const ClassNameMap& names) {
  Dgm4Record r;
  r.post = field<Post>(j, "post");
  validate(r.post);
  r.gold_class = names.resolve(field<std::string>(j, "gold_class"));

  const Json* boxes = optional_field(j, "gold_boxes");
  const Json* boxes_px = optional_field(j, "gold_boxes_px");
  if (boxes && boxes_px) {
    throw ParseError("gold_boxes and gold_boxes_px are mutually exclusive");
  }
  if (boxes) r.gold_boxes = get_as<std::vector<BoundingBox>>(*boxes, "gold_boxes");
  if (boxes_px) {
    if (!r.post.image) {
      throw InvalidBox("pixel boxes need image dimensions on the post");
    }
    double w = r.post.image->width;
    double h = r.post.image->height;
    for (const auto& px : get_as<std::vector<std::vector<double>>>(*boxes_px,
                                                                  "gold_boxes_px")) {
      if (px.size() != 4) throw InvalidBox("pixel box must have 4 coordinates");
      r.gold_boxes.push_back({px[0] / w, px[1] / h, px[2] / w, px[3] / h});
    }
  }
  for (const auto& b : r.gold_boxes) validate(b);

  if (auto* flags = optional_field(j, "gold_token_flags")) {
    TokenLabelSeq seq;
    seq.labels = field<std::vector<int>>(*flags, "labels");
    if (auto* tokens = optional_field(*flags, "tokens")) {
      seq.tokens = get_as<std::vector<std::string>>(*tokens, "tokens");
    } else {
      seq.tokens = whitespace_tokens(r.post.text);
    }
    r.gold_token_flags = std::move(seq);
  }
  validate(r);
  return r;
}

inline ClaimRecord claim_from_line(const Json& j) {
  ClaimRecord r;
  r.post = field<Post>(j, "post");
  auto gold = field<std::string>(j, "gold");
  auto label = parse_gold_label(gold);
  if (!label) throw ParseError("unknown gold label '" + gold + "'");
  r.gold = *label;
  validate(r);
  return r;
}

// Runs `parse` on every non-blank line. Domain-specific errors keep their
// type; anything else becomes a ParseError. All carry the line number.
template <typename Record, typename Parse>
std::vector<Record> load_lines(std::istream& in, Parse parse) {
  std::vector<Record> out;
  std::unordered_set<std::string> ids;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (std::all_of(line.begin(), line.end(),
                    [](unsigned char c) { return std::isspace(c); })) {
      continue;
    }
    try {
      Record r = parse(parse_json(line));
      if (!ids.insert(r.post.id).second) {
        throw ParseError("duplicate post id '" + r.post.id + "'");
      }
      out.push_back(std::move(r));
    } catch (InvalidBox& e) {
      e.set_line(lineno);
      throw;
    } catch (TokenMismatch& e) {
      e.set_line(lineno);
      throw;
    } catch (UnknownClass& e) {
      e.set_line(lineno);
      throw;
    } catch (ParseError& e) {
      e.set_line(lineno);
      throw;
    } catch (const Error& e) {
      ParseError wrapped(e.message());
      wrapped.set_line(lineno);
      throw wrapped;
    }
  }
  return out;
}

inline std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return in;
}

}  // namespace detail

inline std::vector<Dgm4Record> load_dgm4(std::istream& in,
                                         const ClassNameMap& names =
                                             ClassNameMap::defaults()) {
  return detail::load_lines<Dgm4Record>(
      in, [&](const Json& j) { return detail::dgm4_from_line(j, names); });
}

inline std::vector<Dgm4Record> load_dgm4(const std::filesystem::path& path,
                                         const ClassNameMap& names =
                                             ClassNameMap::defaults()) {
  auto in = detail::open_input(path);
  return load_dgm4(in, names);
}

inline std::vector<ClaimRecord> load_claims(std::istream& in) {
  return detail::load_lines<ClaimRecord>(in, detail::claim_from_line);
}

inline std::vector<ClaimRecord> load_claims(const std::filesystem::path& path) {
  auto in = detail::open_input(path);
  return load_claims(in);
}

template <typename Record>
std::string to_canonical_jsonl(std::span<const Record> records) {
  std::string out;
  for (const auto& r : records) {
    validate(r);
    out += canonical_dump(Json(r));
    out += '\n';
  }
  return out;
}

template <typename Record>
void export_canonical(std::span<const Record> records,
                      const std::filesystem::path& path) {
  auto body = to_canonical_jsonl(records);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << body;
  if (!out.flush()) throw IoError("write failed for " + path.string());
}

template <typename Record>
void export_canonical(const std::vector<Record>& records,
                      const std::filesystem::path& path) {
  export_canonical(std::span<const Record>(records), path);
}

enum class DatasetKind { kClaims, kDgm4 };

// Sniffs the first non-blank line: "gold_class" marks manipulation data.
inline DatasetKind detect_dataset_kind(const std::filesystem::path& path) {
  auto in = detail::open_input(path);
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    Json j;
    try {
      j = parse_json(line);
    } catch (ParseError& e) {
      e.set_line(1);
      throw;
    }
    return j.contains("gold_class") ? DatasetKind::kDgm4 : DatasetKind::kClaims;
  }
  return DatasetKind::kClaims;
}

}  // namespace dualverify
