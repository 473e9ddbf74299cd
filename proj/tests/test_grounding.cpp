#include <gtest/gtest.h>

#include <random>

#include "docscore/docscore.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace docscore;
using fixtures::block;
using fixtures::element;

namespace {

ElementVerdict only_verdict(std::vector<LayoutElement> const& e, std::vector<Block> const& p) {
	auto const s = score_grounding(e, p);
	return s.verdicts.at(0);
}

} // namespace

TEST(Localization, GtSideThresholdIsClosed) {
	Box const gt{0.0, 0.0, 0.4, 0.4};
	EXPECT_DOUBLE_EQ(ioa(gt, {0.0, 0.0, 0.4, 0.2}), 0.5);
	EXPECT_TRUE(match_localization(gt, {block(Box{0.0, 0.0, 0.4, 0.2}, Label::text)}));
	EXPECT_FALSE(match_localization(gt, {block(Box{0.0, 0.0, 0.4, 0.1999}, Label::text)}));
}

TEST(Localization, PredSideThresholdIsClosed) {
	Box const gt{0.0, 0.0, 0.2, 0.2};
	EXPECT_NEAR(ioa({0.0, 0.0, 0.4, 0.5}, gt), 0.2, 1e-15);
	EXPECT_TRUE(match_localization(gt, {block(Box{0.0, 0.0, 0.4, 0.5}, Label::text)}));
	EXPECT_FALSE(match_localization(gt, {block(Box{0.0, 0.0, 0.4, 0.51}, Label::text)}));
}

TEST(Localization, BestPredictionByGtCoverage) {
	Box const gt{0.0, 0.0, 0.4, 0.4};
	auto const m = match_localization(gt, {block(Box{0.0, 0.0, 0.4, 0.25}, Label::text), block(Box{0.0, 0.0, 0.4, 0.35}, Label::text)});
	EXPECT_EQ(m, 1u);
}

TEST(Attribution, CandidateThresholdIsClosed) {
	std::vector<LayoutElement> const e{element({0.0, 0.0, 1.0, 0.1}, Label::text, "a1 b1 c1 d1 e1 f1 g1 h1 i1 j1")};
	auto const p1 = block(Box{0.0, 0.0, 0.6, 0.1}, Label::text, "a1 b1 c1 d1 e1 f1");
	auto const at = only_verdict(e, {p1, block(Box{0.7, 0.0, 1.0, 0.1}, Label::text, "g1 h1 i1 j1")});
	EXPECT_TRUE(at.L);
	ASSERT_TRUE(at.A);
	EXPECT_TRUE(*at.A);
	EXPECT_EQ(at.attribution_span.size(), 2u);
	auto const below = only_verdict(e, {p1, block(Box{0.7001, 0.0, 1.0, 0.1}, Label::text, "g1 h1 i1 j1")});
	EXPECT_FALSE(*below.A);
	EXPECT_FALSE(below.pass);
}

TEST(Attribution, F1ThresholdIsClosed) {
	std::vector<LayoutElement> const e{element({0.0, 0.0, 1.0, 0.1}, Label::text, "a b c d")};
	auto const at = only_verdict(e, {block(Box{0.0, 0.0, 1.0, 0.1}, Label::text, "a b c d e f")});
	EXPECT_NEAR(at.attribution_score, 0.8, 1e-12);
	EXPECT_TRUE(at.pass);
	auto const below = only_verdict(e, {block(Box{0.0, 0.0, 1.0, 0.1}, Label::text, "a b c d e f g")});
	EXPECT_FALSE(below.pass);
}

TEST(Attribution, ExplicitElementsAreRecallOnly) {
	ElementFlags f;
	f.explicit_content = true;
	std::vector<LayoutElement> const e{element({0.0, 0.0, 1.0, 0.5}, Label::picture, "10 20 30 40 50", std::nullopt, f)};
	auto const ok = only_verdict(e, {block(Box{0.0, 0.0, 1.0, 0.5}, Label::picture, "chart of 10 20 30 40 and many other words")});
	EXPECT_NEAR(ok.attribution_score, 0.8, 1e-12);
	EXPECT_TRUE(ok.pass);
	EXPECT_FALSE(only_verdict(e, {block(Box{0.0, 0.0, 1.0, 0.5}, Label::picture, "10 20 30")}).pass);
}

TEST(Epr, NoAttributionReducesToLocalizationAndClass) {
	ElementFlags caption;
	caption.caption = true;
	std::vector<LayoutElement> const e{element({0.0, 0.0, 0.5, 0.5}, Label::picture), element({0.0, 0.6, 0.5, 0.7}, Label::text, "Figure 1 caption", std::nullopt, caption)};
	for (auto label : {Label::picture, Label::table, Label::unmapped}) {
		std::vector<Block> const p{block(Box{0.0, 0.0, 0.5, 0.5}, label, "totally unrelated words"), block(Box{0.0, 0.6, 0.5, 0.7}, Label::text, "zzz")};
		auto const s = score_grounding(e, p);
		for (auto const& v : s.verdicts) {
			EXPECT_FALSE(v.E);
			EXPECT_EQ(v.pass, v.L && v.C);
		}
		EXPECT_EQ(s.verdicts[0].pass, label == Label::picture);
		EXPECT_TRUE(s.verdicts[1].pass);
	}
}

TEST(Epr, IgnoredElementsAreSkippedAndEmptyPagesRejected) {
	ElementFlags ig;
	ig.ignore = true;
	std::vector<LayoutElement> const e{element({0, 0, 0.5, 0.5}, Label::text, "x", std::nullopt, ig)};
	EXPECT_THROW(score_grounding(e, {}), DataError);
}

TEST(Epr, FortyFourElementFixture) {
	auto const c = fixtures::grid_layout(44, 38);
	auto const s = score_grounding(c.elements, c.preds);
	EXPECT_EQ(s.n, 44u);
	EXPECT_EQ(s.passed, 38u);
	EXPECT_NEAR(100.0 * s.epr, 86.4, 0.05);
}

TEST(Epr, BoundedByLocalizationAndClassificationRates) {
	std::mt19937 rng(5);
	std::uniform_real_distribution<double> u(0.0, 1.0);
	std::vector<Label> const labels{Label::text, Label::table, Label::picture, Label::page_header, Label::page_footer};
	auto rand_box = [&] {
		double const x = u(rng) * 0.8, y = u(rng) * 0.8;
		return Box{x, y, x + 0.02 + u(rng) * 0.18, y + 0.02 + u(rng) * 0.18};
	};
	std::vector<std::string> const words{"alpha", "beta", "gamma", "delta", "eps"};
	auto rand_text = [&] {
		std::string s;
		for (int k = 0, n = 1 + static_cast<int>(rng() % 4); k < n; ++k) { s += words[rng() % words.size()] + " "; }
		return s;
	};
	for (int page = 0; page < 1000; ++page) {
		std::vector<LayoutElement> e;
		std::vector<Block> p;
		for (int i = 0, n = 1 + static_cast<int>(rng() % 8); i < n; ++i) {
			auto const b = rand_box();
			e.push_back(element(b, labels[rng() % labels.size()], rng() % 3 ? std::optional(rand_text()) : std::nullopt, i));
			if (rng() % 4) {
				Box j = b;
				j.x1 += (u(rng) - 0.5) * 0.05;
				j.y2 += (u(rng) - 0.5) * 0.05;
				if (!j.valid()) { j = b; }
				p.push_back(block(j, rng() % 5 ? e.back().label : labels[rng() % labels.size()], rng() % 2 ? e.back().content.value_or("") : rand_text()));
			}
		}
		for (int k = 0, n = static_cast<int>(rng() % 3); k < n; ++k) { p.push_back(block(rand_box(), labels[rng() % labels.size()], rand_text())); }
		auto const s = score_grounding(e, p);
		ASSERT_LE(s.epr, std::min(s.localization_rate, s.classification_rate) + 1e-15);
	}
}

TEST(Furniture, SplitHeaderMatchesThroughBand) {
	std::vector<LayoutElement> const e{element({0.1, 0.02, 0.9, 0.05}, Label::page_header, "Annual Report 2023"),
									   element({0.1, 0.1, 0.9, 0.8}, Label::text, "body words here")};
	std::vector<Block> const p{block(Box{0.1, 0.02, 0.5, 0.05}, Label::page_header, "Annual Report"), block(Box{0.7, 0.02, 0.9, 0.05}, Label::page_header, "2023"),
							   block(Box{0.1, 0.1, 0.9, 0.8}, Label::text, "body words here")};
	auto const s = score_grounding(e, p);
	ASSERT_EQ(s.bands.size(), 1u);
	EXPECT_EQ(s.bands[0].member_predictions.size(), 2u);
	EXPECT_TRUE(s.verdicts[0].furniture);
	EXPECT_TRUE(s.verdicts[0].pass);
	EXPECT_DOUBLE_EQ(s.epr, 1.0);
}

TEST(Furniture, MergedFooterCoversSeveralElements) {
	std::vector<LayoutElement> const e{element({0.05, 0.95, 0.3, 0.98}, Label::page_footer, "Confidential"),
									   element({0.85, 0.95, 0.95, 0.98}, Label::page_footer, "12")};
	std::vector<Block> const p{block(Box{0.05, 0.95, 0.95, 0.98}, Label::page_footer, "Confidential 12")};
	auto const s = score_grounding(e, p);
	EXPECT_TRUE(s.verdicts[0].L);
	EXPECT_TRUE(s.verdicts[1].L);
	EXPECT_TRUE(s.verdicts[0].pass);
	EXPECT_TRUE(s.verdicts[1].pass);
}

TEST(Furniture, WrongLabelFailsClassification) {
	std::vector<LayoutElement> const e{element({0.1, 0.02, 0.9, 0.05}, Label::page_header)};
	auto const v = only_verdict(e, {block(Box{0.1, 0.02, 0.9, 0.05}, Label::text)});
	EXPECT_TRUE(v.L);
	EXPECT_FALSE(v.C);
}

TEST(Attribution, MergedPredictionHasFullPrecisionAndRecall) {
	auto const c = fixtures::merged_layout();
	auto const s = score_grounding(c.elements, c.preds);
	EXPECT_EQ(s.attribution.lap(), 1.0);
	EXPECT_EQ(s.attribution.lar(), 1.0);
	EXPECT_EQ(s.attribution.af1(), 1.0);
	for (auto const& v : s.verdicts) { EXPECT_TRUE(*v.A); } // merge-aware filtering
}

TEST(Attribution, FabricatedTokensHalvePrecision) {
	auto const c = fixtures::hallucinated_layout();
	auto const t = attribution_totals(c.elements, c.preds);
	EXPECT_EQ(t.lap(), 0.5);
	EXPECT_EQ(t.lar(), 1.0);
	EXPECT_NEAR(*t.af1(), 2.0 / 3.0, 1e-15);
}

TEST(Attribution, MergeFilterKeepsTargetTokens) {
	TokenBag const pred{{"a", 2}, {"b", 1}, {"c", 1}, {"x", 1}};
	TokenBag const target{{"a", 1}, {"b", 1}};
	TokenBag const neigh{{"b", 1}, {"c", 1}};
	auto const f = merge_filter(pred, target, neigh);
	EXPECT_EQ(f, (TokenBag{{"a", 2}, {"b", 1}, {"x", 1}}));
}

TEST(Attribution, EmptyDenominatorsAreAbsent) {
	AttributionTotals const t;
	EXPECT_FALSE(t.lap());
	EXPECT_FALSE(t.af1());
}

TEST(ReadingOrder, MatchesOracle) {
	std::mt19937 rng(11);
	for (int n = 0; n < 500; ++n) {
		std::vector<std::pair<int, std::size_t>> v;
		int const len = static_cast<int>(rng() % 9);
		for (int i = 0; i < len; ++i) { v.emplace_back(i, rng() % 6); }
		std::shuffle(v.begin(), v.end(), rng);
		int const k = 1 + static_cast<int>(rng() % 4);
		EXPECT_NEAR(reading_order_score(v, k), oracle::reading_order(v, k), 1e-15);
	}
}

TEST(ReadingOrder, SwapCostsLocalAgreement) {
	std::vector<std::pair<int, std::size_t>> v{{0, 0}, {1, 1}, {2, 3}, {3, 2}, {4, 4}};
	EXPECT_LT(reading_order_score(v), 1.0);
	EXPECT_DOUBLE_EQ(reading_order_score({{0, 0}, {1, 1}, {2, 2}}), 1.0);
	EXPECT_DOUBLE_EQ(reading_order_score({}), 1.0);
}

TEST(Map, PerfectAndShiftedDetections) {
	std::vector<LayoutElement> const e{element({0.0, 0.0, 0.5, 0.5}, Label::text)};
	EXPECT_DOUBLE_EQ(*coco_map(e, {block(Box{0.0, 0.0, 0.5, 0.5}, Label::text)}), 1.0);
	// IoU 0.6 clears the 0.50, 0.55 and 0.60 thresholds only
	Box const shifted{0.0, 0.0, 0.5, 0.3};
	EXPECT_NEAR(iou(e[0].box, shifted), 0.6, 1e-12);
	EXPECT_NEAR(*coco_map(e, {block(shifted, Label::text)}), 0.3, 1e-12);
	EXPECT_DOUBLE_EQ(*coco_map(e, {}), 0.0);
	EXPECT_DOUBLE_EQ(*coco_map(e, {block(Box{0.0, 0.0, 0.5, 0.5}, Label::table)}), 0.0);
	EXPECT_FALSE(coco_map(std::vector<LayoutElement>{}, {}));
}

TEST(Map, ConfidenceRankingAndClassAverage) {
	std::vector<LayoutElement> const e{element({0.0, 0.0, 0.4, 0.4}, Label::text), element({0.5, 0.5, 0.9, 0.9}, Label::table)};
	std::vector<Block> const p{block(Box{0.6, 0.0, 0.9, 0.3}, Label::text, "", 0.9), block(Box{0.0, 0.0, 0.4, 0.4}, Label::text, "", 0.8),
							   block(Box{0.5, 0.5, 0.9, 0.9}, Label::table, "", 0.7)};
	// text: a false positive ranked first gives precision 1/2 at full recall
	EXPECT_NEAR(*coco_map(e, p), 0.5 * (0.5 + 1.0), 1e-12);
}

TEST(Properties, UnrelatedPredictionNeverLowersScores) {
	auto const c = fixtures::grid_layout(12, 9);
	auto const base = score_grounding(c.elements, c.preds);
	auto noisy = c.preds;
	noisy.push_back(block(std::nullopt, Label::text, "element 0 body text")); // boxless
	auto const s = score_grounding(c.elements, noisy);
	EXPECT_GE(s.epr, base.epr);
	EXPECT_GE(s.reading_order, base.reading_order);
	EXPECT_GE(s.attribution.lar(), base.attribution.lar());
}

TEST(Properties, ExactBoxesAndTextPass) {
	auto const c = fixtures::grid_layout(20, 20);
	auto const s = score_grounding(c.elements, c.preds);
	EXPECT_DOUBLE_EQ(s.epr, 1.0);
	EXPECT_DOUBLE_EQ(s.reading_order, 1.0);
	EXPECT_EQ(s.attribution.af1(), 1.0);
	EXPECT_DOUBLE_EQ(*coco_map(c.elements, c.preds), 1.0);
}
