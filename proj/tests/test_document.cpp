#include <gtest/gtest.h>

#include "docscore/docscore.hpp"
#include "fixtures.hpp"

using namespace docscore;
using fixtures::doc_of;

namespace {

bool has_span(ParsedDocument const& d, StyleClass c, std::string const& text) {
	for (auto const& s : d.styling_spans) {
		if (s.style == c && s.text == text) { return true; }
	}
	return false;
}

} // namespace

TEST(Styling, MarkdownDelimiterRuns) {
	auto const d = doc_of("Plain *it* and **bold** and ***both*** and ~~gone~~ snake_case_word");
	EXPECT_TRUE(has_span(d, StyleClass::italic, "it"));
	EXPECT_TRUE(has_span(d, StyleClass::bold, "bold"));
	EXPECT_TRUE(has_span(d, StyleClass::bold, "both"));
	EXPECT_TRUE(has_span(d, StyleClass::italic, "both"));
	EXPECT_TRUE(has_span(d, StyleClass::strikeout, "gone"));
	for (auto const& s : d.styling_spans) { EXPECT_NE(s.text, "case"); } // intraword '_' is literal
}

TEST(Styling, HtmlTags) {
	auto const d = doc_of("H<sub>2</sub>O x<sup>1</sup> <u>under</u> <mark>hi</mark> <del>old</del> <strong>S</strong>");
	EXPECT_TRUE(has_span(d, StyleClass::sub, "2"));
	EXPECT_TRUE(has_span(d, StyleClass::sup, "1"));
	EXPECT_TRUE(has_span(d, StyleClass::underline, "under"));
	EXPECT_TRUE(has_span(d, StyleClass::highlight, "hi"));
	EXPECT_TRUE(has_span(d, StyleClass::strikeout, "old"));
	EXPECT_TRUE(has_span(d, StyleClass::bold, "S"));
}

TEST(Styling, CodeIsLiteral) {
	auto const d = doc_of("```\n**not bold**\n```\nand `*not it*`");
	EXPECT_TRUE(d.styling_spans.empty());
}

TEST(Headings, MarkdownAndHtmlLevels) {
	auto const d = doc_of("# Title\n\ntext\n\n<h3>Deep</h3>\n\n<div>## Sub</div>\n\n**Bold line**");
	ASSERT_EQ(d.headings.size(), 3u);
	EXPECT_EQ(d.headings[0].level, 1);
	EXPECT_EQ(d.headings[0].text, "Title");
	EXPECT_EQ(d.headings[1].level, 3);
	EXPECT_EQ(d.headings[2].text, "Sub");
	EXPECT_EQ(d.headings[2].level, 2);
}

TEST(CodeAndMath, FencesAndDelimiters) {
	auto const d = doc_of("```Python\nprint(1)\n```\n\nInline $x^2$ and $$\\frac{a}{b}$$ and \\(y\\) costs $5 and $6.");
	ASSERT_EQ(d.code_blocks.size(), 1u);
	EXPECT_EQ(d.code_blocks[0].language, "python");
	EXPECT_EQ(d.code_blocks[0].body, "print(1)");
	std::vector<std::string> expect{"x^2", "\\frac{a}{b}", "y"};
	for (auto const& e : expect) { EXPECT_NE(std::find(d.latex_spans.begin(), d.latex_spans.end(), e), d.latex_spans.end()) << e; }
	EXPECT_EQ(d.latex_spans.size(), 3u); // currency amounts are not math
}

TEST(Blocks, StructuredRecordsScaleAndCollapse) {
	RawPrediction p;
	p.page_id = "p";
	p.kind = PayloadKind::structured;
	p.records.push_back({std::array<double, 4>{100, 200, 300, 400}, "Section-header", "Intro", 0.5});
	p.records.push_back({std::nullopt, "WidgetFrame", "x", std::nullopt});
	auto const d = build_document(p);
	ASSERT_EQ(d.blocks.size(), 2u);
	EXPECT_DOUBLE_EQ(d.blocks[0].box->x1, 0.1);
	EXPECT_DOUBLE_EQ(d.blocks[0].box->y2, 0.4);
	EXPECT_EQ(d.blocks[0].label, Label::text);
	EXPECT_EQ(d.blocks[1].label, Label::unmapped);
	EXPECT_FALSE(d.blocks[1].box.has_value());
	EXPECT_EQ(d.normalized_text, "Intro x");
}

TEST(Blocks, YFirstAndClamping) {
	RawPrediction p;
	p.page_id = "p";
	p.kind = PayloadKind::structured;
	p.records.push_back({std::array<double, 4>{100, 200, 300, 1200}, "Text", "a", std::nullopt});
	DocumentOptions o;
	o.y_first = true;
	auto const d = build_document(p, o);
	ASSERT_TRUE(d.blocks[0].box);
	EXPECT_DOUBLE_EQ(d.blocks[0].box->x1, 0.2);
	EXPECT_DOUBLE_EQ(d.blocks[0].box->x2, 1.0);
	EXPECT_DOUBLE_EQ(d.blocks[0].box->y2, 0.3);
	EXPECT_FALSE(d.warnings.empty());
}

TEST(Blocks, MarkupDivsWithBoxes) {
	auto const d = doc_of(R"(<div data-bbox="[0, 0, 500, 100]" data-label="Page-Header">ACME</div>
<div data-bbox="[0, 200, 1000, 400]" data-label="Text">Body text</div>)");
	ASSERT_EQ(d.blocks.size(), 2u);
	EXPECT_EQ(d.blocks[0].label, Label::page_header);
	EXPECT_DOUBLE_EQ(d.blocks[1].box->y2, 0.4);
	EXPECT_EQ(d.blocks[1].tokens, (std::vector<std::string>{"body", "text"}));
}

TEST(Grid, ColspanAndRowspanExpansion) {
	auto const tables = extract_tables("<table><tr><th colspan=2>A</th></tr><tr><td rowspan=2>B</td><td>C</td></tr><tr><td>D</td></tr></table>");
	ASSERT_EQ(tables.size(), 1u);
	auto const& g = tables[0];
	EXPECT_EQ(g.n_rows, 3);
	EXPECT_EQ(g.n_cols, 2);
	EXPECT_EQ(g.at(0, 1).text, "A");
	EXPECT_EQ(g.at(2, 0).text, "B");
	EXPECT_EQ(g.at(2, 0).origin, (std::pair{1, 0}));
	EXPECT_EQ(g.header_rows(), 1);
}

TEST(Grid, OverlapFirstWriterWinsWithWarning) {
	std::vector<std::string> warnings;
	auto const g = extract_tables("<table><tr><td>A</td><td rowspan=2>B</td></tr><tr><td colspan=2>C</td></tr></table>", &warnings);
	ASSERT_EQ(g.size(), 1u);
	EXPECT_EQ(g[0].at(1, 0).text, "C");
	EXPECT_EQ(g[0].at(1, 1).text, "B");
	EXPECT_FALSE(warnings.empty());
}

TEST(Grid, PipeTableAndContext) {
	auto const t = extract_tables("## Sales\n\nFigure 1: regional sales\n\n| Region | 2023 |\n|---|---|\n| North | 10 |\n");
	ASSERT_EQ(t.size(), 1u);
	EXPECT_EQ(t[0].n_rows, 2);
	EXPECT_EQ(t[0].header_rows(), 1);
	EXPECT_EQ(t[0].at(1, 1).text, "10");
	EXPECT_NE(t[0].context.find("Sales"), std::string::npos);
	EXPECT_NE(t[0].context.find("Figure 1"), std::string::npos);
}

TEST(Grid, NestedTablesAreNotDoubleCounted) {
	auto const t = extract_tables("<table><tr><td>x<table><tr><td>in</td></tr></table></td></tr></table>");
	EXPECT_EQ(t.size(), 1u);
}
