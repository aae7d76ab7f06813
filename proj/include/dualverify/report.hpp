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

// Unified explanation report. The fact-check section comes first and the
// manipulation section, with highlighted tokens and box overlays, follows it.

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dualverify/error.hpp"
#include "dualverify/json_io.hpp"
#include "dualverify/labels.hpp"
#include "dualverify/types.hpp"

namespace dualverify {

enum class Markup { kMarkdown, kHtml };

enum class ReportFormat { kMarkdown, kHtml, kJson };

inline ReportFormat parse_report_format(std::string_view s) {
  if (s == "md" || s == "markdown") return ReportFormat::kMarkdown;
  if (s == "html") return ReportFormat::kHtml;
  if (s == "json") return ReportFormat::kJson;
  throw UnsupportedFormat("unsupported report format '" + std::string(s) + "'");
}

constexpr std::string_view file_extension(ReportFormat f) {
  switch (f) {
    case ReportFormat::kMarkdown: return "md";
    case ReportFormat::kHtml: return "html";
    case ReportFormat::kJson: return "json";
  }
  return "";
}

using Clock = std::function<std::chrono::system_clock::time_point()>;

inline std::chrono::system_clock::time_point system_now() {
  return std::chrono::system_clock::now();
}

inline Clock fixed_clock(std::chrono::system_clock::time_point t) {
  return [t] { return t; };
}

inline std::string iso8601_utc(std::chrono::system_clock::time_point t) {
  std::time_t secs = std::chrono::system_clock::to_time_t(t);
  std::tm tm{};
  gmtime_r(&secs, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// ---- escaping --------------------------------------------------------------

inline std::string xml_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&#39;"; break;
      default: out += c;
    }
  }
  return out;
}

inline std::string xml_unescape(std::string_view s) {
  static constexpr std::pair<std::string_view, char> kEntities[] = {
      {"&amp;", '&'}, {"&lt;", '<'}, {"&gt;", '>'}, {"&quot;", '"'}, {"&#39;", '\''}};
  std::string out;
  for (std::size_t i = 0; i < s.size();) {
    bool matched = false;
    if (s[i] == '&') {
      for (auto [entity, ch] : kEntities) {
        if (s.substr(i, entity.size()) == entity) {
          out += ch;
          i += entity.size();
          matched = true;
          break;
        }
      }
    }
    if (!matched) out += s[i++];
  }
  return out;
}
// Backslash-escapes '*' and the backslash itself.
// Backslash-escapes '*' and '\\'.
inline std::string markdown_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '\\' || c == '*') out += '\\';
    out += c;
  }
  return out;
}

inline std::string markdown_unescape(std::string_view s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '\\' && i + 1 < s.size()) ++i;
    out += s[i];
  }
  return out;
}

// ---- token highlighting ----------------------------------------------------

inline std::string highlight_tokens(const TokenLabelSeq& seq,
                                    Markup markup = Markup::kMarkdown) {
  if (seq.tokens.size() != seq.labels.size()) {
    throw LengthMismatch("token/label length mismatch: " +
                         std::to_string(seq.tokens.size()) + " vs " +
                         std::to_string(seq.labels.size()));
  }
  std::string out;
  for (std::size_t i = 0; i < seq.tokens.size(); ++i) {
    if (i > 0) out += ' ';
    bool flagged = seq.labels[i] != 0;
    if (markup == Markup::kMarkdown) {
      auto tok = markdown_escape(seq.tokens[i]);
      out += flagged ? "**" + tok + "**" : tok;
    } else {
      auto tok = xml_escape(seq.tokens[i]);
      out += flagged ? "<mark>" + tok + "</mark>" : tok;
    }
  }
  return out;
}

// Inverse of highlight_tokens: removes markers and escapes, returning the
// single-space-joined token sequence.
inline std::string strip_markers(std::string_view annotated,
                                 Markup markup = Markup::kMarkdown) {
  std::string out;
  std::size_t start = 0;
  bool first = true;
  while (start <= annotated.size()) {
    auto end = annotated.find(' ', start);
    if (end == std::string_view::npos) end = annotated.size();
    auto tok = annotated.substr(start, end - start);
    if (!first) out += ' ';
    first = false;
    if (markup == Markup::kMarkdown) {
      if (tok.size() >= 4 && tok.substr(0, 2) == "**" &&
          tok.substr(tok.size() - 2) == "**") {
        tok = tok.substr(2, tok.size() - 4);
      }
      out += markdown_unescape(tok);
    } else {
      constexpr std::string_view kOpen = "<mark>", kClose = "</mark>";
      if (tok.size() >= kOpen.size() + kClose.size() &&
          tok.substr(0, kOpen.size()) == kOpen &&
          tok.substr(tok.size() - kClose.size()) == kClose) {
        tok = tok.substr(kOpen.size(), tok.size() - kOpen.size() - kClose.size());
      }
      out += xml_unescape(tok);
    }
    start = end + 1;
  }
  return out;
}

// ---- box projection and overlays -------------------------------------------

struct PixelBox {
  int x1 = 0;
  int y1 = 0;
  int x2 = 0;
  int y2 = 0;

  friend bool operator==(const PixelBox&, const PixelBox&) = default;
};

struct OverlayLayout {
  std::string image_ref;
  int width = 0;
  int height = 0;
  std::vector<PixelBox> pixel_boxes;
  int stroke_width = 3;
  std::vector<std::string> labels;  // one per box
};

namespace detail {

// Rounds half away from zero, then keeps the edge pair at least one pixel
// apart.
inline std::pair<int, int> project_edge_pair(double lo, double hi, int extent) {
  int a = static_cast<int>(std::lround(lo * extent));
  int b = static_cast<int>(std::lround(hi * extent));
  a = std::clamp(a, 0, extent);
  b = std::clamp(b, 0, extent);
  if (b <= a) {
    if (a < extent) {
      b = a + 1;
    } else {
      a = extent - 1;
      b = extent;
    }
  }
  return {a, b};
}

}  // namespace detail

inline PixelBox project_box(const BoundingBox& box, int width, int height) {
  validate(box);
  auto [x1, x2] = detail::project_edge_pair(box.x1, box.x2, width);
  auto [y1, y2] = detail::project_edge_pair(box.y1, box.y2, height);
  return {x1, y1, x2, y2};
}

inline OverlayLayout project_boxes(const std::vector<BoundingBox>& boxes, int width,
                                 int height, std::string image_ref = {},
                                 std::string label = {}) {
  if (width < 1 || height < 1) {
    throw InvalidBox("image dimensions must be >= 1");
  }
  OverlayLayout layout;
  layout.image_ref = std::move(image_ref);
  layout.width = width;
  layout.height = height;
  for (const auto& box : boxes) {
    layout.pixel_boxes.push_back(project_box(box, width, height));
    layout.labels.push_back(label);
  }
  return layout;
}

inline std::string to_svg(const OverlayLayout& layout) {
  std::string w = std::to_string(layout.width);
  std::string h = std::to_string(layout.height);
  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" "
         "xmlns:xlink=\"http://www.w3.org/1999/xlink\" width=\"" +
         w + "\" height=\"" + h + "\" viewBox=\"0 0 " + w + " " + h + "\">\n";
  if (!layout.image_ref.empty()) {
    auto ref = xml_escape(layout.image_ref);
    out += "  <image href=\"" + ref + "\" xlink:href=\"" + ref +
           "\" x=\"0\" y=\"0\" width=\"" + w + "\" height=\"" + h + "\"/>\n";
  }
  for (std::size_t i = 0; i < layout.pixel_boxes.size(); ++i) {
    const auto& b = layout.pixel_boxes[i];
    out += "  <rect x=\"" + std::to_string(b.x1) + "\" y=\"" + std::to_string(b.y1) +
           "\" width=\"" + std::to_string(b.x2 - b.x1) + "\" height=\"" +
           std::to_string(b.y2 - b.y1) +
           "\" fill=\"none\" stroke=\"#e53935\" stroke-width=\"" +
           std::to_string(layout.stroke_width) + "\"/>\n";
    if (i < layout.labels.size() && !layout.labels[i].empty()) {
      out += "  <text x=\"" + std::to_string(b.x1 + 2) + "\" y=\"" +
             std::to_string(std::max(b.y1 - 4, 12)) +
             "\" fill=\"#e53935\" font-family=\"sans-serif\" font-size=\"12\">" +
             xml_escape(layout.labels[i]) + "</text>\n";
    }
  }
  out += "</svg>\n";
  return out;
}

struct OverlayFile {
  std::string filename;
  std::string svg;
};

// Post ids are opaque; anything outside [A-Za-z0-9._-] becomes '_' in file
// names.
inline std::string safe_filename(std::string_view id) {
  std::string out;
  for (char c : id) {
    bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '_' ||
              c == '-';
    out += ok ? c : '_';
  }
  if (out.empty() || out == "." || out == "..") out = "_" + out;
  return out;
}

inline std::string overlay_filename(const std::string& post_id, std::size_t k) {
  return safe_filename(post_id) + ".overlay." + std::to_string(k) + ".svg";
}

// One sidecar per box: <post_id>.overlay.<k>.svg. Posts without an image get
// none.
inline std::vector<OverlayFile> render_overlays(const FusedOutcome& outcome,
                                                const Post& post) {
  std::vector<OverlayFile> files;
  if (!outcome.manipulation || !post.image) return files;
  const auto& m = *outcome.manipulation;
  for (std::size_t k = 0; k < m.boxes.size(); ++k) {
    auto layout = project_boxes({m.boxes[k]}, post.image->width, post.image->height,
                              post.image->locator,
                              std::string(display_name(m.klass)));
    files.push_back({overlay_filename(post.id, k), to_svg(layout)});
  }
  return files;
}

// ---- unified report --------------------------------------------------------

struct VerdictSection {
  ThreeWayLabel verdict = ThreeWayLabel::kNei;
  std::optional<FiveWayLabel> extended_verdict;
  std::optional<double> confidence;
  std::vector<EvidenceItem> evidence;
  std::vector<std::string> reasoning;

  friend bool operator==(const VerdictSection&, const VerdictSection&) = default;
};

struct ManipulationSection {
  ManipulationClass klass = ManipulationClass::kPristine;
  bool is_fake = false;
  std::string annotated_text;  // Markdown markers
  std::vector<BoundingBox> boxes;
  std::vector<std::string> overlays;

  friend bool operator==(const ManipulationSection&, const ManipulationSection&) = default;
};

struct UnifiedReport {
  std::string post_id;
  FiveWayLabel final_label = FiveWayLabel::kNei;
  VerdictSection verdict_section;
  std::optional<ManipulationSection> manipulation_section;
  std::optional<std::string> manipulation_notice;
  std::string rationale;
  PipelineMode pipeline_mode = PipelineMode::kRouting;
  std::string generated_at;

  friend bool operator==(const UnifiedReport&, const UnifiedReport&) = default;
};

inline constexpr std::string_view kManipulationUnavailable =
    "Manipulation analysis unavailable: the detector returned no result for "
    "this post.";

constexpr std::string_view describe(FiveWayLabel label) {
  switch (label) {
    case FiveWayLabel::kSupported:
      return "externally supported, no local manipulation detected";
    case FiveWayLabel::kRefuted: return "refuted by external evidence";
    case FiveWayLabel::kNei:
      return "not enough information, no local manipulation detected";
    case FiveWayLabel::kLmgs:
      return "locally manipulated but globally supported";
    case FiveWayLabel::kMbu: return "manipulated but unverifiable";
  }
  return "";
}

inline UnifiedReport build_report(const FusedOutcome& outcome, const Post& post,
                                  const Clock& clock = system_now) {
  validate(outcome);
  validate(post);
  UnifiedReport r;
  r.post_id = post.id;
  r.final_label = outcome.label;
  const auto& fact = outcome.fact_check;
  r.verdict_section = {fact.verdict, fact.extended_verdict, fact.confidence,
                       fact.evidence, fact.reasoning};
  if (outcome.manipulation) {
    const auto& m = *outcome.manipulation;
    ManipulationSection s;
    s.klass = m.klass;
    s.is_fake = m.is_fake;
    s.annotated_text = m.token_labels ? highlight_tokens(*m.token_labels)
                                      : markdown_escape(post.text);
    s.boxes = m.boxes;
    for (const auto& f : render_overlays(outcome, post)) {
      s.overlays.push_back(f.filename);
    }
    r.manipulation_section = std::move(s);
  } else {
    r.manipulation_notice = std::string(kManipulationUnavailable);
  }
  r.rationale = outcome.rationale;
  r.pipeline_mode = outcome.pipeline_mode;
  r.generated_at = iso8601_utc(clock());
  return r;
}

inline void to_json(Json& j, const UnifiedReport& r) {
  Json verdict{{"verdict", r.verdict_section.verdict},
               {"evidence", r.verdict_section.evidence},
               {"reasoning", r.verdict_section.reasoning}};
  if (r.verdict_section.confidence) verdict["confidence"] = *r.verdict_section.confidence;
  if (r.verdict_section.extended_verdict) {
    verdict["extended_verdict"] = *r.verdict_section.extended_verdict;
  }
  j = Json{{"post_id", r.post_id},
           {"final_label", r.final_label},
           {"verdict_section", std::move(verdict)},
           {"rationale", r.rationale},
           {"pipeline_mode", r.pipeline_mode},
           {"generated_at", r.generated_at}};
  if (r.manipulation_section) {
    const auto& s = *r.manipulation_section;
    j["manipulation_section"] = Json{{"klass", s.klass},
                                     {"is_fake", s.is_fake},
                                     {"annotated_text", s.annotated_text},
                                     {"boxes", s.boxes},
                                     {"overlays", s.overlays}};
  }
  if (r.manipulation_notice) j["manipulation_notice"] = *r.manipulation_notice;
}

inline void from_json(const Json& j, UnifiedReport& r) {
  r.post_id = detail::field<std::string>(j, "post_id");
  r.final_label = detail::require(j, "final_label").get<FiveWayLabel>();
  const auto& v = detail::require(j, "verdict_section");
  r.verdict_section.verdict = detail::require(v, "verdict").get<ThreeWayLabel>();
  r.verdict_section.evidence = detail::field<std::vector<EvidenceItem>>(v, "evidence");
  r.verdict_section.reasoning = detail::field<std::vector<std::string>>(v, "reasoning");
  r.verdict_section.confidence.reset();
  if (auto* c = detail::optional_field(v, "confidence")) {
    r.verdict_section.confidence = detail::get_as<double>(*c, "confidence");
  }
  r.verdict_section.extended_verdict.reset();
  if (auto* e = detail::optional_field(v, "extended_verdict")) {
    r.verdict_section.extended_verdict = e->get<FiveWayLabel>();
  }
  r.manipulation_section.reset();
  if (auto* m = detail::optional_field(j, "manipulation_section")) {
    ManipulationSection s;
    s.klass = detail::require(*m, "klass").get<ManipulationClass>();
    s.is_fake = detail::field<bool>(*m, "is_fake");
    s.annotated_text = detail::field<std::string>(*m, "annotated_text");
    s.boxes = detail::field<std::vector<BoundingBox>>(*m, "boxes");
    s.overlays = detail::field<std::vector<std::string>>(*m, "overlays");
    r.manipulation_section = std::move(s);
  }
  r.manipulation_notice.reset();
  if (auto* n = detail::optional_field(j, "manipulation_notice")) {
    r.manipulation_notice = detail::get_as<std::string>(*n, "manipulation_notice");
  }
  r.rationale = detail::field<std::string>(j, "rationale");
  r.pipeline_mode = detail::require(j, "pipeline_mode").get<PipelineMode>();
  r.generated_at = detail::field<std::string>(j, "generated_at");
}

inline void validate(const UnifiedReport& r) {
  if (r.post_id.empty()) throw ValidationError("report has empty post_id");
  if (r.manipulation_section.has_value() == r.manipulation_notice.has_value()) {
    throw ValidationError(
        "report needs exactly one of manipulation_section and "
        "manipulation_notice");
  }
}

inline UnifiedReport parse_report_json(std::string_view text) {
  return decode_text<UnifiedReport>(text);
}

namespace detail {

inline std::string format_confidence(double c) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%.2f", c);
  return buf;
}

inline std::string format_box(const BoundingBox& b) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "(%.3f, %.3f)-(%.3f, %.3f)", b.x1, b.y1, b.x2, b.y2);
  return buf;
}

inline std::string verdict_line(const VerdictSection& v) {
  std::string s(to_string(v.verdict));
  if (v.extended_verdict) s += " (extended: " + std::string(to_string(*v.extended_verdict)) + ")";
  if (v.confidence) s += ", confidence " + format_confidence(*v.confidence);
  return s;
}

inline std::string render_markdown(const UnifiedReport& r) {
  std::string out;
  out += "# Verification report: " + markdown_escape(r.post_id) + "\n\n";
  out += "**Final label:** " + std::string(display_name(r.final_label)) + " (" +
         std::string(describe(r.final_label)) + ")\n\n";
  out += "Pipeline mode: " + std::string(to_string(r.pipeline_mode)) +
         ". Generated at " + r.generated_at + ".\n\n";

  out += "## Fact-check\n\n";
  out += "Verdict: " + verdict_line(r.verdict_section) + "\n\n";
  out += "### Evidence\n\n";
  if (r.verdict_section.evidence.empty()) {
    out += "_No evidence retrieved._\n\n";
  } else {
    std::size_t i = 1;
    for (const auto& e : r.verdict_section.evidence) {
      out += std::to_string(i++) + ". <" + e.source + ">";
      if (e.stance) out += " [" + std::string(to_string(*e.stance)) + "]";
      out += " retrieved " + e.retrieved_at + "\n";
      if (!e.snippet.empty()) out += "   > " + markdown_escape(e.snippet) + "\n";
    }
    out += "\n";
  }
  out += "### Reasoning\n\n";
  if (r.verdict_section.reasoning.empty()) {
    out += "_No reasoning steps recorded._\n\n";
  } else {
    std::size_t i = 1;
    for (const auto& step : r.verdict_section.reasoning) {
      out += std::to_string(i++) + ". " + markdown_escape(step) + "\n";
    }
    out += "\n";
  }

  out += "## Manipulation analysis\n\n";
  if (r.manipulation_section) {
    const auto& s = *r.manipulation_section;
    out += "- Class: " + std::string(display_name(s.klass)) + "\n";
    out += std::string("- Real/fake: ") + (s.is_fake ? "fake" : "real") + "\n";
    out += "- Caption: " + s.annotated_text + "\n";
    if (s.boxes.empty()) {
      out += "- Manipulated regions: none\n";
    } else {
      out += "- Manipulated regions:\n";
      for (std::size_t k = 0; k < s.boxes.size(); ++k) {
        out += "  - box " + format_box(s.boxes[k]);
        if (k < s.overlays.size()) out += ", overlay `" + s.overlays[k] + "`";
        out += "\n";
      }
    }
    out += "\n";
  } else {
    out += "_" + *r.manipulation_notice + "_\n\n";
  }

  out += "## Fusion rationale\n\n" + markdown_escape(r.rationale) + "\n";
  return out;
}

inline std::string render_html(const UnifiedReport& r) {
  std::string out;
  out += "<!DOCTYPE html>\n<html>\n<head>\n<meta charset=\"utf-8\">\n<title>"
         "Verification report: " + xml_escape(r.post_id) + "</title>\n</head>\n<body>\n";
  out += "<h1>Verification report: " + xml_escape(r.post_id) + "</h1>\n";
  out += "<p><strong>Final label:</strong> <span class=\"label\">" +
         std::string(display_name(r.final_label)) + "</span> (" +
         std::string(describe(r.final_label)) + ")</p>\n";
  out += "<p>Pipeline mode: " + std::string(to_string(r.pipeline_mode)) +
         ". Generated at " + xml_escape(r.generated_at) + ".</p>\n";

  out += "<h2>Fact-check</h2>\n";
  out += "<p>Verdict: " + xml_escape(verdict_line(r.verdict_section)) + "</p>\n";
  out += "<h3>Evidence</h3>\n";
  if (r.verdict_section.evidence.empty()) {
    out += "<p><em>No evidence retrieved.</em></p>\n";
  } else {
    out += "<ol>\n";
    for (const auto& e : r.verdict_section.evidence) {
      out += "<li><a href=\"" + xml_escape(e.source) + "\">" + xml_escape(e.source) +
             "</a>";
      if (e.stance) out += " [" + std::string(to_string(*e.stance)) + "]";
      out += " retrieved " + xml_escape(e.retrieved_at);
      if (!e.snippet.empty()) {
        out += "<blockquote>" + xml_escape(e.snippet) + "</blockquote>";
      }
      out += "</li>\n";
    }
    out += "</ol>\n";
  }
  out += "<h3>Reasoning</h3>\n";
  if (r.verdict_section.reasoning.empty()) {
    out += "<p><em>No reasoning steps recorded.</em></p>\n";
  } else {
    out += "<ol>\n";
    for (const auto& step : r.verdict_section.reasoning) {
      out += "<li>" + xml_escape(step) + "</li>\n";
    }
    out += "</ol>\n";
  }

  out += "<h2>Manipulation analysis</h2>\n";
  if (r.manipulation_section) {
    const auto& s = *r.manipulation_section;
    out += "<ul>\n<li>Class: " + std::string(display_name(s.klass)) + "</li>\n";
    out += std::string("<li>Real/fake: ") + (s.is_fake ? "fake" : "real") + "</li>\n";
    // Markdown markers are converted to <mark> here; the stored annotated
    // text stays in its Markdown form.
    TokenLabelSeq seq;
    for (const auto& tok : whitespace_tokens(s.annotated_text)) {
      bool flagged = tok.size() >= 4 && tok.rfind("**", 0) == 0 &&
                     tok.compare(tok.size() - 2, 2, "**") == 0;
      seq.tokens.push_back(
          markdown_unescape(flagged ? tok.substr(2, tok.size() - 4) : tok));
      seq.labels.push_back(flagged ? 1 : 0);
    }
    out += "<li>Caption: " + highlight_tokens(seq, Markup::kHtml) + "</li>\n";
    if (s.boxes.empty()) {
      out += "<li>Manipulated regions: none</li>\n";
    } else {
      out += "<li>Manipulated regions:<ul>\n";
      for (std::size_t k = 0; k < s.boxes.size(); ++k) {
        out += "<li>box " + format_box(s.boxes[k]);
        if (k < s.overlays.size()) {
          out += "<figure><img src=\"" + xml_escape(s.overlays[k]) + "\" alt=\"" +
                 xml_escape(s.overlays[k]) + "\"></figure>";
        }
        out += "</li>\n";
      }
      out += "</ul></li>\n";
    }
    out += "</ul>\n";
  } else {
    out += "<p><em>" + xml_escape(*r.manipulation_notice) + "</em></p>\n";
  }

  out += "<h2>Fusion rationale</h2>\n<p>" + xml_escape(r.rationale) + "</p>\n";
  out += "</body>\n</html>\n";
  return out;
}

}  // namespace detail

inline std::string render(const UnifiedReport& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::kMarkdown: return detail::render_markdown(report);
    case ReportFormat::kHtml: return detail::render_html(report);
    case ReportFormat::kJson: return Json(report).dump(2) + "\n";
  }
  throw UnsupportedFormat("unsupported report format");
}

inline std::string render(const FusedOutcome& outcome, const Post& post,
                          ReportFormat format, const Clock& clock = system_now) {
  return render(build_report(outcome, post, clock), format);
}

inline std::string render(const FusedOutcome& outcome, const Post& post,
                          std::string_view format, const Clock& clock = system_now) {
  return render(outcome, post, parse_report_format(format), clock);
}

}  // namespace dualverify
