// docscore: document-parser evaluation toolkit
// Requirements: C++20

#pragma once

#include <charconv>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>

#include "chart_eval.hpp"
#include "difficulty.hpp"
#include "document.hpp"
#include "format_eval.hpp"
#include "grounding.hpp"
#include "labels.hpp"
#include "model.hpp"
#include "table_eval.hpp"
#include "text_eval.hpp"

namespace docscore {

/// Every tunable of the evaluators; defaults are the published values.
struct EvalConfig {
	GritsOptions grits;
	ChartOptions chart;
	TextOptions text;
	FormatOptions format;
	GroundingOptions grounding;
	DifficultyThresholds difficulty;
	DocumentOptions document;
};

namespace detail {

inline double parse_double(std::string_view v, std::string const& where) {
	double out = 0.0;
	auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
	if (ec != std::errc() || p != v.data() + v.size()) { throw DataError(where + ": expected a number, got '" + std::string(v) + "'"); }
	return out;
}

inline long parse_long(std::string_view v, std::string const& where) {
	long out = 0;
	auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
	if (ec != std::errc() || p != v.data() + v.size() || out < 0) { throw DataError(where + ": expected a non-negative integer, got '" + std::string(v) + "'"); }
	return out;
}

inline bool parse_bool(std::string_view v, std::string const& where) {
	if (v == "true") { return true; }
	if (v == "false") { return false; }
	throw DataError(where + ": expected true or false, got '" + std::string(v) + "'");
}

inline std::string unquote(std::string_view v) {
	if (v.size() >= 2 && (v.front() == '"' || v.front() == '\'') && v.back() == v.front()) { return std::string(v.substr(1, v.size() - 2)); }
	return std::string(v);
}

} // namespace detail

/// Reads `key = value` lines; `[section]` headers prefix the keys that follow. Unknown keys
/// are errors. A relative `labels.map` path resolves against `base_dir`.
inline void apply_config(EvalConfig& cfg, std::istream& in, std::string const& origin = "config",
						 std::filesystem::path const& base_dir = {}) {
	using Setter = std::function<void(std::string const& value, std::string const& where)>;
	auto ratio = [](double& field) {
		return Setter([&field](std::string const& v, std::string const& w) {
			double const x = detail::parse_double(v, w);
			if (x < 0.0 || x > 1.0) { throw DataError(w + ": must lie in [0, 1]"); }
			field = x;
		});
	};
	auto positive = [](double& field) {
		return Setter([&field](std::string const& v, std::string const& w) {
			double const x = detail::parse_double(v, w);
			if (!(x > 0.0)) { throw DataError(w + ": must be positive"); }
			field = x;
		});
	};
	auto count = [](auto& field) {
		return Setter([&field](std::string const& v, std::string const& w) { field = static_cast<std::remove_reference_t<decltype(field)>>(detail::parse_long(v, w)); });
	};
	std::map<std::string, Setter> const keys = {
		{"tables.single_seed_budget", count(cfg.grits.single_seed_budget)},
		{"tables.pair_seed_budget", count(cfg.grits.pair_seed_budget)},
		{"tables.max_refinements", count(cfg.grits.max_refinements)},
		{"chart.label_match_ratio", ratio(cfg.chart.label_match_ratio)},
		{"text.sentence_match_ratio", ratio(cfg.text.sentence_match_ratio)},
		{"format.beta", positive(cfg.format.beta)},
		{"format.title_match_ratio", ratio(cfg.format.title_match_ratio)},
		{"grounding.localization_gt", ratio(cfg.grounding.localization_gt)},
		{"grounding.localization_pred", ratio(cfg.grounding.localization_pred)},
		{"grounding.attribution_candidate", ratio(cfg.grounding.attribution_candidate)},
		{"grounding.attribution_f1", ratio(cfg.grounding.attribution_f1)},
		{"grounding.explicit_recall", ratio(cfg.grounding.explicit_recall)},
		{"grounding.furniture_member", ratio(cfg.grounding.furniture_member)},
		{"grounding.order_neighbors", count(cfg.grounding.order_neighbors)},
		{"difficulty.easy_max", count(cfg.difficulty.easy_max)},
		{"difficulty.row_overlap", ratio(cfg.difficulty.row_overlap)},
		{"difficulty.fragmented_row_boxes", count(cfg.difficulty.fragmented_row_boxes)},
		{"difficulty.upward_step", ratio(cfg.difficulty.upward_step)},
		{"predictions.y_first", Setter([&](std::string const& v, std::string const& w) { cfg.document.y_first = detail::parse_bool(v, w); })},
		{"labels.map", Setter([&](std::string const& v, std::string const&) {
			 std::filesystem::path p(v);
			 if (p.is_relative() && !base_dir.empty()) { p = base_dir / p; }
			 cfg.document.labels.merge_from_file(p.string());
		 })},
	};

	std::string line, section;
	int lineno = 0;
	while (std::getline(in, line)) {
		++lineno;
		std::string const where = origin + ":" + std::to_string(lineno);
		auto view = std::string_view(line);
		if (auto hash = view.find('#'); hash != std::string_view::npos) { view = view.substr(0, hash); }
		view = detail::trim_view(view);
		if (view.empty()) { continue; }
		if (view.front() == '[') {
			if (view.back() != ']') { throw DataError(where + ": malformed section header"); }
			section = std::string(detail::trim_view(view.substr(1, view.size() - 2)));
			continue;
		}
		auto const eq = view.find('=');
		if (eq == std::string_view::npos) { throw DataError(where + ": expected 'key = value'"); }
		auto key = std::string(detail::trim_view(view.substr(0, eq)));
		if (!section.empty()) { key = section + "." + key; }
		auto it = keys.find(key);
		if (it == keys.end()) { throw DataError(where + ": unknown key '" + key + "'"); }
		it->second(detail::unquote(detail::trim_view(view.substr(eq + 1))), where + " (" + key + ")");
	}
}

inline EvalConfig load_config(std::filesystem::path const& path) {
	std::ifstream in(path);
	if (!in) { throw DataError("cannot read config '" + path.string() + "'"); }
	EvalConfig cfg;
	apply_config(cfg, in, path.string(), path.parent_path());
	return cfg;
}

} // namespace docscore
