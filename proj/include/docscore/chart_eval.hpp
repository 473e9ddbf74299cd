// docscore: document-parser evaluation toolkit
// Requirements: C++20

#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "document.hpp"
#include "grid.hpp"
#include "model.hpp"
#include "numeric.hpp"
#include "text.hpp"
#include "unicode.hpp"

namespace docscore {

struct ChartOptions {
	double label_match_ratio{0.85};
};

/// A table cell whose reading fell inside the accepted interval.
struct NumericCandidate {
	std::size_t table{};
	int row{};
	int col{};
	std::string raw;
	double value{};
	NumericScale scale{NumericScale::none};
};

struct DataPointVerdict {
	bool pass{};
	/// "pass", "no_table", "no_value_match" or "label_mismatch".
	std::string reason;
	/// Winning cell on pass; on label mismatch the candidate matching the most labels.
	std::optional<NumericCandidate> cell;
	std::vector<std::string> unmatched_labels;
	std::size_t value_matches{};
};

namespace detail {

inline bool word_char(char32_t c) { return unicode::is_alnum(c); }

/// Whole-word containment of `needle` in `hay` (both lowercased, normalized).
inline bool contains_words(std::u32string_view hay, std::u32string_view needle) {
	if (needle.empty()) { return false; }
	for (auto pos = hay.find(needle); pos != std::u32string_view::npos; pos = hay.find(needle, pos + 1)) {
		bool const left = pos == 0 || !word_char(hay[pos - 1]) || !word_char(needle.front());
		auto const after = pos + needle.size();
		bool const right = after >= hay.size() || !word_char(hay[after]) || !word_char(needle.back());
		if (left && right) { return true; }
	}
	return false;
}

inline std::u32string label_form(std::string_view s) { return unicode::to_u32(unicode::lower(normalize_text(s))); }

inline bool label_matches(std::u32string const& label, std::u32string const& source, double ratio) {
	if (label.empty() || source.empty()) { return false; }
	if (contains_words(source, label)) { return true; }
	auto const longest = std::max(label.size(), source.size());
	// cheap length bound before the quadratic edit distance
	auto const len_gap = label.size() > source.size() ? label.size() - source.size() : source.size() - label.size();
	if (1.0 - static_cast<double>(len_gap) / static_cast<double>(longest) < ratio - 1e-12) { return false; }
	return meets(1.0 - static_cast<double>(levenshtein(label, source)) / static_cast<double>(longest), ratio);
}

struct PreparedTable {
	std::vector<std::vector<std::u32string>> cells;
	std::u32string context;
};

inline PreparedTable prepare(Grid const& g) {
	PreparedTable t;
	t.cells.resize(static_cast<std::size_t>(g.n_rows));
	for (int r = 0; r < g.n_rows; ++r) {
		for (int c = 0; c < g.n_cols; ++c) { t.cells[static_cast<std::size_t>(r)].push_back(label_form(g.at(r, c).text)); }
	}
	t.context = label_form(g.context);
	return t;
}

/// Label sources of cell (r, c): cells above it in its column, cells left of it in its row,
/// and the table context. The set is the same for the transposed table.
inline bool label_satisfied(PreparedTable const& t, int r, int c, std::u32string const& label, double ratio) {
	if (label_matches(label, t.context, ratio)) { return true; }
	for (int i = 0; i < r; ++i) {
		if (label_matches(label, t.cells[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)], ratio)) { return true; }
	}
	for (int j = 0; j < c; ++j) {
		if (label_matches(label, t.cells[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)], ratio)) { return true; }
	}
	return false;
}

/// Labels found in a table's context, header rows or first column; used to rank tables.
inline std::size_t label_overlap(Grid const& g, PreparedTable const& t, std::vector<std::u32string> const& labels, double ratio) {
	std::size_t n = 0;
	for (auto const& label : labels) {
		bool hit = label_matches(label, t.context, ratio);
		for (int r = 0; r < g.n_rows && !hit; ++r) {
			for (int c = 0; c < g.n_cols && !hit; ++c) {
				if (g.is_header_row(r) || c == 0) { hit = label_matches(label, t.cells[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)], ratio); }
			}
		}
		n += hit ? 1 : 0;
	}
	return n;
}

} // namespace detail

/// Verifies one annotated data point against the predicted tables: find cells whose value
/// lies in the tolerance interval, then require every label to match one of the cell's
/// label sources. Passes when any candidate cell satisfies all labels.
inline DataPointVerdict verify_data_point(std::vector<Grid> const& tables, DataPointSpec const& spec, ChartOptions const& options = {}) {
	DataPointVerdict v;
	if (tables.empty()) {
		v.reason = "no_table";
		v.unmatched_labels = spec.labels;
		return v;
	}
	std::vector<std::u32string> labels;
	for (auto const& l : spec.labels) { labels.push_back(detail::label_form(l)); }

	std::vector<detail::PreparedTable> prepared;
	std::vector<std::size_t> overlap;
	for (auto const& g : tables) {
		prepared.push_back(detail::prepare(g));
		overlap.push_back(detail::label_overlap(g, prepared.back(), labels, options.label_match_ratio));
	}
	std::vector<std::size_t> order(tables.size());
	std::iota(order.begin(), order.end(), std::size_t{0});
	std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return overlap[a] > overlap[b]; });

	std::size_t best_matched = 0;
	for (auto ti : order) {
		auto const& g = tables[ti];
		for (int r = 0; r < g.n_rows; ++r) {
			for (int c = 0; c < g.n_cols; ++c) {
				auto const& cell = g.at(r, c);
				if (cell.origin != std::pair{r, c}) { continue; } // spanned copies carry no new value
				auto const readings = normalize_numeric(cell.text);
				auto const hit = std::find_if(readings.begin(), readings.end(), [&](NumericReading const& x) { return spec.accepts(x.value); });
				if (hit == readings.end()) { continue; }
				++v.value_matches;
				NumericCandidate cand{ti, r, c, cell.text, hit->value, hit->scale};
				std::vector<std::string> missing;
				for (std::size_t li = 0; li < labels.size(); ++li) {
					if (!detail::label_satisfied(prepared[ti], r, c, labels[li], options.label_match_ratio)) { missing.push_back(spec.labels[li]); }
				}
				if (missing.empty()) {
					v.pass = true;
					v.reason = "pass";
					v.cell = std::move(cand);
					v.unmatched_labels.clear();
					return v;
				}
				std::size_t const matched = labels.size() - missing.size();
				if (!v.cell || matched > best_matched) {
					best_matched = matched;
					v.cell = std::move(cand);
					v.unmatched_labels = std::move(missing);
				}
			}
		}
	}
	v.reason = v.value_matches == 0 ? "no_value_match" : "label_mismatch";
	if (v.value_matches == 0) { v.unmatched_labels = spec.labels; }
	return v;
}

struct ChartPageScore {
	double score{};
	std::size_t passed{};
	std::vector<DataPointVerdict> verdicts;
};

/// Fraction of the page's annotated data points verified in the predicted tables.
inline ChartPageScore chart_data_point_match(GroundTruthPage const& page, ParsedDocument const& doc, ChartOptions const& options = {}) {
	if (page.data_points.empty()) { throw DataError(page.page_id, "data_points", "no data points"); }
	ChartPageScore out;
	for (auto const& spec : page.data_points) {
		out.verdicts.push_back(verify_data_point(doc.tables, spec, options));
		out.passed += out.verdicts.back().pass ? 1 : 0;
	}
	out.score = static_cast<double>(out.passed) / static_cast<double>(page.data_points.size());
	return out;
}

} // namespace docscore
