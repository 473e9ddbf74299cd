#include <gtest/gtest.h>

#include <cmath>

#include "docscore/docscore.hpp"
#include "fixtures.hpp"

using namespace docscore;
using fixtures::make_grid;

namespace {

bool reads_as(std::string_view cell, double v) {
	for (auto const& r : normalize_numeric(cell)) {
		if (std::abs(r.value - v) <= 1e-9 * std::max(1.0, std::abs(v))) { return true; }
	}
	return false;
}

} // namespace

TEST(Numeric, SeparatorsCurrencyAndSuffixes) {
	EXPECT_TRUE(reads_as("1,234.5", 1234.5));
	EXPECT_TRUE(reads_as("1.234,5", 1234.5));
	EXPECT_TRUE(reads_as("$12", 12));
	EXPECT_TRUE(reads_as("€ 3.5", 3.5));
	EXPECT_TRUE(reads_as("2.5k", 2500));
	EXPECT_TRUE(reads_as("1.2 million", 1.2e6));
	EXPECT_TRUE(reads_as("3bn", 3e9));
	EXPECT_TRUE(reads_as("4 kg", 4));
	EXPECT_TRUE(normalize_numeric("n/a").empty());
}

TEST(Numeric, AmbiguousSeparatorGivesBothReadings) {
	EXPECT_TRUE(reads_as("1,234", 1234));
	EXPECT_TRUE(reads_as("1,234", 1.234));
	EXPECT_TRUE(reads_as("0,5", 0.5));
}

TEST(Numeric, PercentAndNegatives) {
	EXPECT_TRUE(reads_as("45%", 45));
	EXPECT_TRUE(reads_as("45%", 0.45));
	EXPECT_TRUE(reads_as("-7", -7));
	EXPECT_TRUE(reads_as("(7)", -7));
	EXPECT_TRUE(reads_as("\xE2\x88\x92" "2.5", -2.5));
	EXPECT_FALSE(reads_as("(7)", 7));
}

TEST(Tolerance, ClosedIntervals) {
	DataPointSpec const a{{"x"}, 10.0, 0.1};
	EXPECT_TRUE(a.accepts(9.0));
	EXPECT_TRUE(a.accepts(11.0));
	EXPECT_FALSE(a.accepts(std::nextafter(9.0, 0.0) - 1e-9));
	EXPECT_FALSE(a.accepts(11.0 + 1e-9));
	DataPointSpec const b{{"x"}, 3.0, 0.5};
	EXPECT_TRUE(b.accepts(1.5));
	EXPECT_TRUE(b.accepts(4.5));
	EXPECT_FALSE(b.accepts(1.5 - 1e-9));
	EXPECT_FALSE(b.accepts(4.5 + 1e-9));
	DataPointSpec const neg{{"x"}, -10.0, 0.1};
	EXPECT_TRUE(neg.accepts(-11.0));
	EXPECT_FALSE(neg.accepts(-8.9));
}

TEST(DataPoint, PassesWithRowAndHeaderLabels) {
	auto const g = make_grid({{"Region", "2022", "2023"}, {"North", "10.2", "12"}, {"South", "7", "8"}});
	auto const v = verify_data_point({g}, {{"North", "2023"}, 12.0, 0.01});
	EXPECT_TRUE(v.pass);
	EXPECT_EQ(v.reason, "pass");
	ASSERT_TRUE(v.cell);
	EXPECT_EQ(v.cell->row, 1);
	EXPECT_EQ(v.cell->col, 2);
}

TEST(DataPoint, LabelMismatchAndNoValue) {
	auto const g = make_grid({{"Region", "2022", "2023"}, {"North", "10", "12"}, {"South", "7", "8"}});
	auto const mismatch = verify_data_point({g}, {{"South", "2023"}, 12.0, 0.01});
	EXPECT_FALSE(mismatch.pass);
	EXPECT_EQ(mismatch.reason, "label_mismatch");
	EXPECT_EQ(mismatch.unmatched_labels, std::vector<std::string>{"South"});
	auto const none = verify_data_point({g}, {{"North"}, 99.0, 0.01});
	EXPECT_EQ(none.reason, "no_value_match");
	auto const no_table = verify_data_point({}, {{"North"}, 10.0, 0.01});
	EXPECT_EQ(no_table.reason, "no_table");
}

TEST(DataPoint, TransposedTableStillPasses) {
	auto const g = make_grid({{"Year", "North", "South"}, {"2022", "10", "7"}, {"2023", "12", "8"}});
	EXPECT_TRUE(verify_data_point({g}, {{"North", "2023"}, 12.0, 0.01}).pass);
	EXPECT_FALSE(verify_data_point({g}, {{"South", "2022"}, 10.0, 0.01}).pass);
}

TEST(DataPoint, ContextSuppliesSeriesLabel) {
	auto const tables = extract_tables("Figure 2: Revenue by region\n\n| Region | 2023 |\n|---|---|\n| North | 12 |\n");
	EXPECT_TRUE(verify_data_point(tables, {{"Revenue", "North"}, 12.0, 0.0}).pass);
}

TEST(DataPoint, FuzzyLabelsAndScaledValues) {
	auto const g = make_grid({{"Region", "Sales"}, {"Nort America", "1.2M"}});
	EXPECT_TRUE(verify_data_point({g}, {{"North America", "Sales"}, 1.2e6, 0.0}).pass);
}

TEST(ChartPage, FractionOfPoints) {
	GroundTruthPage page;
	page.page_id = "c";
	page.dimension = Dimension::charts;
	std::string markup = "| Item | Value |\n|---|---|\n";
	for (int i = 0; i < 10; ++i) {
		auto const name = "item" + std::to_string(i);
		page.data_points.push_back({{name}, static_cast<double>(10 + i), 0.0});
		markup += "| " + name + " | " + std::to_string(i < 8 ? 10 + i : 100 + i) + " |\n";
	}
	auto const s = chart_data_point_match(page, fixtures::doc_of(markup));
	EXPECT_EQ(s.passed, 8u);
	EXPECT_DOUBLE_EQ(s.score, 0.8);
	page.data_points.clear();
	EXPECT_THROW(chart_data_point_match(page, fixtures::doc_of(markup)), DataError);
}
