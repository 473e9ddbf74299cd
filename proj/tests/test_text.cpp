#include <gtest/gtest.h>

#include <random>

#include "docscore/docscore.hpp"

using namespace docscore;

TEST(Normalize, StripsMarkersAndCollapsesNbsp) { EXPECT_EQ(normalize_text("**Total:**   $12,450"), "Total: $12,450"); }

TEST(Normalize, KeepsInnerTextOfHtmlAndLinks) {
	EXPECT_EQ(normalize_text("<b>Bold</b> and [link](http://x.y) and `code`"), "Bold and link and code");
	EXPECT_EQ(normalize_text("# Heading\n\n- item one\n- item two"), "Heading item one item two");
}

TEST(Normalize, AppliesCompatibilityForms) {
	EXPECT_EQ(normalize_text("ﬁnance"), "finance"); // ligature
	EXPECT_EQ(normalize_text("１２"), "12");		// full-width digits
}

TEST(Normalize, IsIdempotentOnRandomMarkup) {
	std::mt19937 rng(3);
	std::string const alphabet = "ab *_~#|-<>/[]()`$\\\n 1.";
	for (int n = 0; n < 500; ++n) {
		std::string s;
		int const len = std::uniform_int_distribution<int>(0, 30)(rng);
		for (int i = 0; i < len; ++i) { s += alphabet[std::uniform_int_distribution<std::size_t>(0, alphabet.size() - 1)(rng)]; }
		auto const once = normalize_text(s);
		EXPECT_EQ(normalize_text(once), once) << "input: " << s;
	}
}

TEST(Normalize, HeadingInsideDivIsStripped) { EXPECT_EQ(normalize_text("<div data-label=\"Text\">## Sub</div>"), "Sub"); }

TEST(Tokens, LowercasedComparisonTokens) {
	auto const t = comparison_tokens("The **Quick** brown");
	ASSERT_EQ(t.size(), 3u);
	EXPECT_EQ(t[1], "quick");
	EXPECT_TRUE(comparison_tokens("  ").empty());
}

TEST(EditDistance, KnownValues) {
	EXPECT_EQ(levenshtein(U"kitten", U"sitting"), 3u);
	EXPECT_EQ(levenshtein(U"", U"abc"), 3u);
	EXPECT_DOUBLE_EQ(edit_ratio("", ""), 1.0);
	EXPECT_NEAR(edit_ratio("kitten", "sitting"), 1.0 - 3.0 / 7.0, 1e-12);
}

TEST(WindowRatio, FindsBestSubstring) {
	EXPECT_DOUBLE_EQ(window_ratio("brown fox", "the quick brown fox jumps"), 1.0);
	EXPECT_NEAR(window_ratio("brown fax", "the quick brown fox jumps"), 1.0 - 1.0 / 9.0, 1e-12);
	EXPECT_LT(window_ratio("zzzz", "abc"), 0.5);
}

TEST(WindowRatio, NeverBelowWholeTextRatioForEqualLengths) {
	std::mt19937 rng(11);
	for (int n = 0; n < 200; ++n) {
		std::string a, b;
		for (int i = 0; i < 6; ++i) {
			a += static_cast<char>('a' + rng() % 3);
			b += static_cast<char>('a' + rng() % 3);
		}
		EXPECT_GE(window_ratio(a, b) + 1e-12, edit_ratio(a, b));
	}
}

TEST(Lcs, KnownValues) {
	EXPECT_EQ(lcs_length(U"ABCBDAB", U"BDCABA"), 4u);
	EXPECT_EQ(lcs_length(U"", U"x"), 0u);
}

TEST(Sentences, SplitsOnTerminatorBeforeCapital) {
	auto const s = split_sentences("First one. Second one! 3 items? last bit");
	ASSERT_EQ(s.size(), 3u);
	EXPECT_EQ(s[0], "First one.");
	EXPECT_EQ(s[2], "3 items? last bit");
}

TEST(Sentences, AbbreviationsDoNotSplit) {
	auto const s = split_sentences("See e.g. Fig. 3 for details. Then stop.");
	ASSERT_EQ(s.size(), 2u);
}

TEST(Unicode, Utf8RoundTripAndValidation) {
	std::string const s = "aé中\U0001F600";
	EXPECT_EQ(unicode::to_utf8(unicode::to_u32(s)), s);
	EXPECT_TRUE(unicode::is_valid_utf8(s));
	EXPECT_FALSE(unicode::is_valid_utf8("\xC3"));
	EXPECT_FALSE(unicode::is_valid_utf8("\xFF"));
	EXPECT_EQ(unicode::lower("ÉCOLE"), "école");
}

TEST(Geometry, IoaAsymmetryAndIdentity) {
	Box const a{0, 0, 1, 1}, left{0, 0, 0.5, 1};
	EXPECT_DOUBLE_EQ(ioa(a, a), 1.0);
	EXPECT_DOUBLE_EQ(ioa(a, left), 0.5);
	EXPECT_DOUBLE_EQ(ioa(left, a), 1.0);
	EXPECT_DOUBLE_EQ(ioa(a, Box{2, 2, 3, 3}), 0.0);
	EXPECT_DOUBLE_EQ(ioa(Box{0, 0, 0, 1}, a), 0.0);
}

TEST(Geometry, IoaAreaIdentityOnRandomBoxes) {
	std::mt19937 rng(5);
	std::uniform_real_distribution<double> u(0.0, 1.0);
	for (int n = 0; n < 1000; ++n) {
		auto box = [&] {
			double x1 = u(rng), x2 = u(rng), y1 = u(rng), y2 = u(rng);
			return Box{std::min(x1, x2), std::min(y1, y2), std::max(x1, x2), std::max(y1, y2)};
		};
		Box const a = box(), b = box();
		EXPECT_NEAR(ioa(a, b) * a.area(), ioa(b, a) * b.area(), 1e-12);
	}
}

TEST(Geometry, UnionAreaOfOverlappingBoxes) {
	std::vector<Box> boxes{{0, 0, 0.5, 0.5}, {0.25, 0.25, 0.75, 0.75}};
	EXPECT_NEAR(union_area(boxes), 0.25 + 0.25 - 0.0625, 1e-12);
}
