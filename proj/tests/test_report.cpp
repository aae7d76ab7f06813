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

#include <gtest/gtest.h>

#include "dualverify/report.hpp"
#include "generators.hpp"

namespace dualverify {
namespace {

using MC = ManipulationClass;

const auto kFixedTime = std::chrono::system_clock::time_point{} + std::chrono::seconds(1717200000);

TEST(Highlight, FlaggedTokenIsBold) {
  TokenLabelSeq seq{{"PM", "resigns", "today"}, {0, 1, 0}};
  EXPECT_EQ(highlight_tokens(seq), "PM **resigns** today");
  EXPECT_EQ(highlight_tokens(seq, Markup::kHtml), "PM <mark>resigns</mark> today");
}

TEST(Highlight, LengthMismatch) {
  EXPECT_THROW(highlight_tokens(TokenLabelSeq{{"a", "b"}, {1}}), LengthMismatch);
}

TEST(Highlight, EscapesMarkupInTokens) {
  TokenLabelSeq seq{{"*x*", "<b>"}, {1, 0}};
  EXPECT_EQ(highlight_tokens(seq), "**\\*x\\*** <b>");
  EXPECT_EQ(highlight_tokens(seq, Markup::kHtml), "<mark>*x*</mark> &lt;b&gt;");
}

TEST(Highlight, StripRoundTripProperty) {
  testing::Gen gen(11);
  for (int i = 0; i < 500; ++i) {
    auto tokens = whitespace_tokens(gen.sentence());
    TokenLabelSeq seq{tokens, {}};
    for (std::size_t k = 0; k < tokens.size(); ++k) seq.labels.push_back(gen.coin());
    std::string joined;
    for (std::size_t k = 0; k < tokens.size(); ++k) joined += (k ? " " : "") + tokens[k];
    for (auto markup : {Markup::kMarkdown, Markup::kHtml}) {
      EXPECT_EQ(strip_markers(highlight_tokens(seq, markup), markup), joined);
    }
  }
}

TEST(ProjectBox, NamedCases) {
  EXPECT_EQ(project_box({0.25, 0.25, 0.75, 0.75}, 100, 100), (PixelBox{25, 25, 75, 75}));
  EXPECT_EQ(project_box({0, 0, 1, 1}, 640, 480), (PixelBox{0, 0, 640, 480}));
  EXPECT_EQ(project_box({1.0 / 3, 0.1, 2.0 / 3, 0.9}, 300, 200),
            (PixelBox{100, 20, 200, 180}));
}

TEST(ProjectBox, InvalidDimensions) {
  EXPECT_THROW(project_boxes({{0, 0, 1, 1}}, 0, 10), InvalidBox);
  EXPECT_THROW(project_boxes({{0, 0, 1, 1}}, 10, -1), InvalidBox);
}

TEST(ProjectBox, StaysInsideImageProperty) {
  testing::Gen gen(3);
  for (int i = 0; i < 2000; ++i) {
    int w = gen.integer(1, 4000), h = gen.integer(1, 4000);
    auto b = gen.box();
    auto p = project_box(b, w, h);
    EXPECT_LE(0, p.x1);
    EXPECT_LT(p.x1, p.x2);
    EXPECT_LE(p.x2, w);
    EXPECT_LE(0, p.y1);
    EXPECT_LT(p.y1, p.y2);
    EXPECT_LE(p.y2, h);
    EXPECT_LE(std::abs(p.x1 - b.x1 * w), 1.0);
    EXPECT_LE(std::abs(p.y2 - b.y2 * h), 1.0);
  }
}

TEST(Svg, ContainsImageAndRects) {
  auto layout = project_boxes({{0.25, 0.25, 0.75, 0.75}}, 100, 100, "img/a&b.jpg", "FS");
  auto svg = to_svg(layout);
  EXPECT_NE(svg.find("href=\"img/a&amp;b.jpg\""), std::string::npos);
  EXPECT_NE(svg.find("<rect x=\"25\" y=\"25\" width=\"50\" height=\"50\""),
            std::string::npos);
  EXPECT_NE(svg.find(">FS<"), std::string::npos);
}

FusedOutcome lmgs_outcome() {
  FactCheckResult fact;
  fact.verdict = ThreeWayLabel::kSupported;
  fact.confidence = 0.81;
  fact.evidence.push_back({"https://news.example/a", "PM attends summit",
                           "2024-06-01T00:00:00Z", Stance::kSupports});
  fact.reasoning = {"Summit attendance confirmed."};
  fact.tool_trace = {{Tool::kWebSearch, "PM summit", 4}};
  ManipulationResult m;
  m.klass = MC::kFS;
  m.is_fake = true;
  m.boxes = {{0.1, 0.2, 0.4, 0.6}};
  return fuse_outcome(fact, m, {}, PipelineMode::kRouting);
}

Post lmgs_post() { return {"post/1", "PM resigns today", ImageRef{"img/1.jpg", 640, 480}, {}}; }

TEST(Report, LmgsWithOneBoxReferencesOneOverlay) {
  auto outcome = lmgs_outcome();
  ASSERT_EQ(outcome.label, FiveWayLabel::kLmgs);
  auto report = build_report(outcome, lmgs_post(), fixed_clock(kFixedTime));
  ASSERT_TRUE(report.manipulation_section.has_value());
  EXPECT_EQ(report.manipulation_section->overlays,
            (std::vector<std::string>{"post_1.overlay.0.svg"}));
  auto overlays = render_overlays(outcome, lmgs_post());
  ASSERT_EQ(overlays.size(), 1u);
  EXPECT_EQ(overlays[0].filename, "post_1.overlay.0.svg");

  auto md = render(report, ReportFormat::kMarkdown);
  EXPECT_NE(md.find("LMGS"), std::string::npos);
  EXPECT_NE(md.find("post_1.overlay.0.svg"), std::string::npos);
  EXPECT_NE(md.find("rule: supported+manipulated"), std::string::npos);
  auto html = render(report, ReportFormat::kHtml);
  EXPECT_NE(html.find("post_1.overlay.0.svg"), std::string::npos);
  EXPECT_EQ(report.generated_at, "2024-06-01T00:00:00Z");
}

TEST(Report, SectionsAppearInOrder) {
  auto md = render(lmgs_outcome(), lmgs_post(), ReportFormat::kMarkdown,
                   fixed_clock(kFixedTime));
  auto verdict = md.find("Fact-check");
  auto manip = md.find("Manipulation analysis");
  auto rationale = md.find("Fusion rationale");
  ASSERT_NE(verdict, std::string::npos);
  ASSERT_NE(manip, std::string::npos);
  ASSERT_NE(rationale, std::string::npos);
  EXPECT_LT(verdict, manip);
  EXPECT_LT(manip, rationale);
}

TEST(Report, UnavailableNotice) {
  FactCheckResult fact;
  fact.verdict = ThreeWayLabel::kRefuted;
  auto outcome = fuse_outcome(fact, std::nullopt, {}, PipelineMode::kRouting);
  Post post{"p", "some text", std::nullopt, {}};
  auto report = build_report(outcome, post, fixed_clock(kFixedTime));
  EXPECT_FALSE(report.manipulation_section.has_value());
  EXPECT_EQ(report.manipulation_notice, std::string(kManipulationUnavailable));
  for (auto f : {ReportFormat::kMarkdown, ReportFormat::kHtml, ReportFormat::kJson}) {
    EXPECT_NE(render(report, f).find("unavailable"), std::string::npos);
  }
}

TEST(Report, FixedClockIsDeterministic) {
  auto a = render(lmgs_outcome(), lmgs_post(), "html", fixed_clock(kFixedTime));
  auto b = render(lmgs_outcome(), lmgs_post(), "html", fixed_clock(kFixedTime));
  EXPECT_EQ(a, b);
}

TEST(Report, UnsupportedFormat) {
  EXPECT_THROW(render(lmgs_outcome(), lmgs_post(), "pdf"), UnsupportedFormat);
  EXPECT_EQ(parse_report_format("md"), ReportFormat::kMarkdown);
  EXPECT_EQ(parse_report_format("json"), ReportFormat::kJson);
}

TEST(Report, JsonRoundTripProperty) {
  testing::Gen gen(99);
  for (int i = 0; i < 200; ++i) {
    auto [outcome, post] = gen.outcome("r" + std::to_string(i));
    auto report = build_report(outcome, post, fixed_clock(kFixedTime));
    auto text = render(report, ReportFormat::kJson);
    auto parsed = parse_report_json(text);
    EXPECT_EQ(parsed, report);
    EXPECT_EQ(parsed.final_label, outcome.label);
    if (outcome.manipulation && outcome.manipulation->token_labels) {
      // annotated text strips back to the token sequence
      const auto& tokens = outcome.manipulation->token_labels->tokens;
      std::string joined;
      for (std::size_t k = 0; k < tokens.size(); ++k) joined += (k ? " " : "") + tokens[k];
      EXPECT_EQ(strip_markers(parsed.manipulation_section->annotated_text), joined);
    }
  }
}

TEST(Report, SafeFilename) {
  EXPECT_EQ(safe_filename("a/b c.d-e_f"), "a_b_c.d-e_f");
}

}  // namespace
}  // namespace dualverify
