// docscore: document-parser evaluation toolkit
// Requirements: C++20

#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "geometry.hpp"
#include "model.hpp"
#include "text.hpp"

namespace docscore {

/// Native-text signals that only the PDF itself can supply.
struct PdfSignals {
	std::optional<bool> buggy_native_text;
	std::optional<std::size_t> unusual_punctuation_count;
};

struct DifficultyThresholds {
	std::vector<double> rule_count{45, 60, 80, 110};
	std::vector<double> picture_count{4, 10};
	std::vector<double> table_count{1, 3};
	std::vector<double> fragmented_row_count{5, 9};
	std::vector<double> horizontal_band_count{3, 4};
	std::vector<double> upward_reset_ratio{0.12};
	std::vector<double> page_area{750'000, 1'500'000};
	std::vector<double> bbox_coverage{0.55};
	double unusual_punctuation{100};
	int buggy_text_points{3};
	std::size_t fragmented_row_boxes{4};
	double row_overlap{0.5};
	double upward_step{0.05};
	int easy_max{3};
};

struct DifficultyFeatures {
	std::size_t rule_count{};
	std::size_t picture_count{};
	std::size_t table_count{};
	std::size_t fragmented_row_count{};
	std::size_t horizontal_band_count{};
	double upward_reset_ratio{};
	std::optional<double> page_area;
	double bbox_coverage{};
	bool non_pdf_asset{};
	std::optional<bool> buggy_native_text;
	std::optional<std::size_t> unusual_punctuation_count;
};

enum class DifficultyBucket { easy, hard };

inline std::string_view to_string(DifficultyBucket b) { return b == DifficultyBucket::easy ? "Easy" : "Hard"; }

struct PageDifficulty {
	int score{};
	DifficultyBucket bucket{DifficultyBucket::easy};
	DifficultyFeatures features;
	std::vector<std::string> missing_signals;
};

namespace detail {

inline int steps_met(double value, std::vector<double> const& thresholds) {
	return static_cast<int>(std::count_if(thresholds.begin(), thresholds.end(), [&](double t) { return meets(value, t); }));
}

inline bool text_like(Label l) { return l == Label::text || l == Label::page_header || l == Label::page_footer; }

/// Rows: connected groups of boxes whose vertical overlap is at least `ratio` of the shorter
/// height.
inline std::vector<std::size_t> row_sizes(std::vector<Box> const& boxes, double ratio) {
	std::vector<std::size_t> parent(boxes.size());
	std::iota(parent.begin(), parent.end(), std::size_t{0});
	auto find = [&](std::size_t x) {
		while (parent[x] != x) { x = parent[x] = parent[parent[x]]; }
		return x;
	};
	for (std::size_t i = 0; i < boxes.size(); ++i) {
		for (std::size_t j = i + 1; j < boxes.size(); ++j) {
			double const overlap = std::min(boxes[i].y2, boxes[j].y2) - std::max(boxes[i].y1, boxes[j].y1);
			double const shorter = std::min(boxes[i].height(), boxes[j].height());
			if (shorter > 0.0 && overlap > 0.0 && meets(overlap / shorter, ratio)) { parent[find(i)] = find(j); }
		}
	}
	std::vector<std::size_t> sizes(boxes.size(), 0);
	for (std::size_t i = 0; i < boxes.size(); ++i) { ++sizes[find(i)]; }
	return sizes;
}

/// Bands: maximal groups of boxes whose horizontal extents chain together.
inline std::size_t band_count(std::vector<Box> boxes) {
	std::sort(boxes.begin(), boxes.end(), [](Box const& a, Box const& b) { return a.x1 < b.x1; });
	std::size_t n = 0;
	double reach = 0.0;
	for (auto const& b : boxes) {
		if (n == 0 || b.x1 >= reach) {
			++n;
			reach = b.x2;
		} else {
			reach = std::max(reach, b.x2);
		}
	}
	return n;
}

inline bool ends_with_pdf(std::string s) {
	s = to_lower_ascii(trim_view(s));
	if (auto q = s.find_first_of("?#"); q != std::string::npos) { s.resize(q); }
	return s.size() >= 4 && s.compare(s.size() - 4, 4, ".pdf") == 0;
}

inline std::optional<double> attr_double(GroundTruthPage const& page, std::string const& key) {
	auto v = page.attribute(key);
	if (!v) { return std::nullopt; }
	try {
		return std::stod(*v);
	} catch (std::exception const&) {
		throw DataError(page.page_id, "attributes." + key, "not a number: " + *v);
	}
}

} // namespace detail

/// Geometry and asset features of a layout page. Signals not given are read from the
/// `buggy_native_text` and `native_text_unusual_punctuation_count` attributes when present.
inline DifficultyFeatures difficulty_features(GroundTruthPage const& page, std::optional<PdfSignals> const& signals = std::nullopt,
											  DifficultyThresholds const& th = {}) {
	DifficultyFeatures f;
	f.rule_count = page.elements.size();
	std::vector<Box> text_boxes, all_boxes;
	std::vector<std::pair<int, double>> order;
	for (auto const& e : page.elements) {
		f.picture_count += e.label == Label::picture ? 1 : 0;
		f.table_count += e.label == Label::table ? 1 : 0;
		all_boxes.push_back(e.box);
		if (detail::text_like(e.label)) { text_boxes.push_back(e.box); }
		if (e.order_index) { order.emplace_back(*e.order_index, e.box.center_y()); }
	}
	for (auto n : detail::row_sizes(text_boxes, th.row_overlap)) { f.fragmented_row_count += n >= th.fragmented_row_boxes ? 1 : 0; }
	f.horizontal_band_count = detail::band_count(text_boxes);
	std::stable_sort(order.begin(), order.end(), [](auto const& a, auto const& b) { return a.first < b.first; });
	if (order.size() >= 2) {
		std::size_t resets = 0;
		for (std::size_t i = 1; i < order.size(); ++i) { resets += order[i - 1].second - order[i].second > th.upward_step ? 1 : 0; }
		f.upward_reset_ratio = static_cast<double>(resets) / static_cast<double>(order.size() - 1);
	}
	auto const w = detail::attr_double(page, "page_width"), h = detail::attr_double(page, "page_height");
	if (w && h) { f.page_area = *w * *h; }
	f.bbox_coverage = union_area(all_boxes);
	f.non_pdf_asset = !detail::ends_with_pdf(page.source_asset);
	if (signals) {
		f.buggy_native_text = signals->buggy_native_text;
		f.unusual_punctuation_count = signals->unusual_punctuation_count;
	}
	if (!f.buggy_native_text) {
		if (auto v = page.attribute("buggy_native_text")) {
			auto const s = detail::to_lower_ascii(*v);
			if (s != "true" && s != "false") { throw DataError(page.page_id, "attributes.buggy_native_text", "expected true or false"); }
			f.buggy_native_text = s == "true";
		}
	}
	if (!f.unusual_punctuation_count) {
		if (auto v = detail::attr_double(page, "native_text_unusual_punctuation_count")) { f.unusual_punctuation_count = static_cast<std::size_t>(std::max(0.0, *v)); }
	}
	return f;
}

/// Additive threshold score; every threshold met adds its points.
inline PageDifficulty difficulty_score(DifficultyFeatures const& f, DifficultyThresholds const& th = {}) {
	PageDifficulty d;
	d.features = f;
	auto& s = d.score;
	s += detail::steps_met(static_cast<double>(f.rule_count), th.rule_count);
	s += detail::steps_met(static_cast<double>(f.picture_count), th.picture_count);
	s += detail::steps_met(static_cast<double>(f.table_count), th.table_count);
	s += detail::steps_met(static_cast<double>(f.fragmented_row_count), th.fragmented_row_count);
	s += detail::steps_met(static_cast<double>(f.horizontal_band_count), th.horizontal_band_count);
	s += detail::steps_met(f.upward_reset_ratio, th.upward_reset_ratio);
	s += detail::steps_met(f.bbox_coverage, th.bbox_coverage);
	if (f.page_area) {
		s += detail::steps_met(*f.page_area, th.page_area);
	} else {
		d.missing_signals.emplace_back("page_area");
	}
	s += f.non_pdf_asset ? 1 : 0;
	if (f.buggy_native_text) {
		s += *f.buggy_native_text ? th.buggy_text_points : 0;
	} else {
		d.missing_signals.emplace_back("buggy_native_text");
	}
	if (f.unusual_punctuation_count) {
		s += meets(static_cast<double>(*f.unusual_punctuation_count), th.unusual_punctuation) ? 1 : 0;
	} else {
		d.missing_signals.emplace_back("native_text_unusual_punctuation_count");
	}
	d.bucket = s <= th.easy_max ? DifficultyBucket::easy : DifficultyBucket::hard;
	return d;
}

inline PageDifficulty page_difficulty(GroundTruthPage const& page, std::optional<PdfSignals> const& signals = std::nullopt, DifficultyThresholds const& th = {}) {
	if (page.elements.empty()) { throw DataError(page.page_id, "elements", "difficulty needs layout annotations"); }
	return difficulty_score(difficulty_features(page, signals, th), th);
}

} // namespace docscore
