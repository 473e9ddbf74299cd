#include <gtest/gtest.h>

#include "docscore/docscore.hpp"
#include "fixtures.hpp"

using namespace docscore;
using fixtures::doc_of;
using fixtures::text_rule;

TEST(StyleRules, PositiveAndNegative) {
	auto const d = doc_of("Normal **Important note** and ~~old price~~ H<sub>2</sub>O");
	EXPECT_EQ(eval_style_rule(text_rule(RuleType::is_bold, "important"), d).score, 0.0); // case-sensitive containment
	EXPECT_EQ(eval_style_rule(text_rule(RuleType::is_bold, "Important"), d).score, 1.0);
	EXPECT_EQ(eval_style_rule(text_rule(RuleType::is_not_bold, "Normal"), d).score, 1.0);
	EXPECT_EQ(eval_style_rule(text_rule(RuleType::is_strikeout, "old price"), d).score, 1.0);
	EXPECT_EQ(eval_style_rule(text_rule(RuleType::is_sub, "2"), d).score, 1.0);
	EXPECT_EQ(eval_style_rule(text_rule(RuleType::is_not_sub, "O"), d).score, 1.0);
	EXPECT_THROW(eval_style_rule(text_rule(RuleType::present, "x"), d), std::invalid_argument);
}

TEST(Styling, FBetaAndOneSidedFallback) {
	EXPECT_DOUBLE_EQ(styling_f_beta(1.0, 1.0, 0.5), 1.0);
	EXPECT_DOUBLE_EQ(styling_f_beta(0.0, 0.0, 0.5), 0.0);
	EXPECT_NEAR(styling_f_beta(0.5, 1.0, 0.5), 1.25 * 0.5 / (0.25 * 0.5 + 1.0), 1e-15);
	StylingTally t;
	t.add({StyleClass::bold, true}, 1.0);
	t.add({StyleClass::bold, true}, 0.0);
	EXPECT_DOUBLE_EQ(*styling_score(t), 0.5);
	t.add({StyleClass::italic, false}, 0.0); // recorded per class, not scored
	EXPECT_DOUBLE_EQ(*styling_score(t), 0.5);
	EXPECT_EQ(t.per_class.at(StyleClass::italic).second, 1u);
	t.add({StyleClass::bold, false}, 1.0);
	EXPECT_NEAR(*styling_score(t), styling_f_beta(0.5, 1.0, 0.5), 1e-15);
	EXPECT_FALSE(styling_score(StylingTally{}));
}

TEST(Titles, IsTitleAndHierarchy) {
	auto const d = doc_of("# Annual Report\n\n## Revenue\n\n### Regional detail\n\n## Costs");
	EXPECT_EQ(eval_title_rule(text_rule(RuleType::is_title, "Annual report"), d).score, 1.0);
	EXPECT_EQ(eval_title_rule(text_rule(RuleType::is_title, "Summary"), d).score, 0.0);
	RulePayload p;
	p.edges = {{"Annual Report", "Revenue"}, {"Regional detail", "Revenue"}, {"Annual Report", "Missing"}};
	auto const r = eval_title_rule(fixtures::rule(RuleType::title_hierarchy_percent, p), d);
	EXPECT_DOUBLE_EQ(r.score, 0.5);
}

TEST(Blocks, LatexAndCode) {
	auto const d = doc_of("Energy $E = mc^2$ here.\n\n```python\nx = 1\ny = 2\n```");
	EXPECT_EQ(eval_block_rule(text_rule(RuleType::is_latex, "E=mc^2"), d).score, 1.0);
	EXPECT_EQ(eval_block_rule(text_rule(RuleType::is_latex, "F=ma"), d).score, 0.0);
	RulePayload code;
	code.text = "x = 1";
	code.language = "Python";
	EXPECT_EQ(eval_block_rule(fixtures::rule(RuleType::is_code_block, code), d).score, 1.0);
	code.language = "rust";
	EXPECT_EQ(eval_block_rule(fixtures::rule(RuleType::is_code_block, code), d).score, 0.0);
}

TEST(Sfs, WeightsAndAbsentCategories) {
	EXPECT_NEAR(semantic_formatting_score(1.0, 0.658, std::nullopt, std::nullopt), 0.829, 1e-3);
	EXPECT_DOUBLE_EQ(semantic_formatting_score(std::nullopt, std::nullopt, 1.0, 0.0), 0.5);
	EXPECT_DOUBLE_EQ(semantic_formatting_score(1.0, std::nullopt, 0.0, std::nullopt), 1.0 / 1.2);
	EXPECT_THROW(semantic_formatting_score(std::nullopt, std::nullopt, std::nullopt, std::nullopt), std::invalid_argument);
}

TEST(Sfs, PageScore) {
	GroundTruthPage page;
	page.page_id = "f";
	page.dimension = Dimension::text;
	page.rules = {text_rule(RuleType::is_bold, "Key"), text_rule(RuleType::is_title, "Heading"), text_rule(RuleType::present, "Key")};
	auto const s = score_semantic_formatting(page, doc_of("# Heading\n\n**Key** point"));
	ASSERT_TRUE(s.sfs);
	EXPECT_DOUBLE_EQ(*s.sfs, 1.0);
	EXPECT_DOUBLE_EQ(*s.style, 1.0);
	EXPECT_FALSE(s.latex);
	page.rules = {text_rule(RuleType::present, "Key")};
	EXPECT_FALSE(score_semantic_formatting(page, doc_of("Key")).sfs);
}
