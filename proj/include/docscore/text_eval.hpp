// docscore: document-parser evaluation toolkit
// Requirements: C++20

#pragma once

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "document.hpp"
#include "model.hpp"
#include "text.hpp"
#include "unicode.hpp"

namespace docscore {

struct TextOptions {
	double sentence_match_ratio{0.90};
};

struct RuleResult {
	RuleType type{};
	RuleCategory category{};
	double score{};
	std::string detail;
};

/// Reference text for rules that compare whole-page statistics: the payload text, else the
/// payload sentences, else the page's `reference_text` attribute.
inline std::string rule_reference_text(TestRule const& rule, GroundTruthPage const& page) {
	if (!rule.payload.text.empty()) { return rule.payload.text; }
	if (!rule.payload.sentences.empty()) {
		std::string joined;
		for (auto const& s : rule.payload.sentences) {
			if (!joined.empty()) { joined += ' '; }
			joined += s;
		}
		return joined;
	}
	return page.attribute("reference_text").value_or("");
}

namespace detail {

inline std::array<std::size_t, 10> digit_counts(std::string_view s) {
	std::array<std::size_t, 10> counts{};
	for (char c : s) {
		if (c >= '0' && c <= '9') { ++counts[static_cast<std::size_t>(c - '0')]; }
	}
	return counts;
}

inline std::string fmt_ratio(std::size_t num, std::size_t den) { return std::to_string(num) + "/" + std::to_string(den); }

} // namespace detail

/// Histogram intersection of digit counts over the larger total; 1 when neither side has digits.
inline double bag_of_digit_score(std::string_view reference, std::string_view output) {
	auto const g = detail::digit_counts(reference);
	auto const o = detail::digit_counts(output);
	std::size_t inter = 0, sg = 0, so = 0;
	for (std::size_t d = 0; d < 10; ++d) {
		inter += std::min(g[d], o[d]);
		sg += g[d];
		so += o[d];
	}
	if (sg == 0 && so == 0) { return 1.0; }
	return static_cast<double>(inter) / static_cast<double>(std::max(sg, so));
}

/// Fraction of reference word types (lowercased) whose output count exceeds the reference
/// count by at most one.
inline double duplication_score(std::string_view reference, std::string_view output) {
	std::map<std::string, std::size_t> gt, out;
	for (auto& t : comparison_tokens(reference)) { ++gt[t]; }
	if (gt.empty()) { return 1.0; }
	for (auto& t : comparison_tokens(output)) { ++out[t]; }
	std::size_t ok = 0;
	for (auto const& [word, n] : gt) {
		auto it = out.find(word);
		std::size_t const m = it == out.end() ? 0 : it->second;
		ok += m <= n + 1 ? 1 : 0;
	}
	return static_cast<double>(ok) / static_cast<double>(gt.size());
}

/// Scores one text-correctness rule. `reference` is the ground-truth text used by the
/// page-statistics rules (see rule_reference_text).
inline RuleResult eval_text_rule(TestRule const& rule, ParsedDocument const& doc, std::string_view reference, TextOptions const& options = {}) {
	RuleResult r{rule.type, rule.category, 0.0, ""};
	auto const& out = doc.normalized_text;
	switch (rule.type) {
	case RuleType::present:
	case RuleType::absent: {
		auto const frag = normalize_text(rule.payload.text);
		if (frag.empty()) { throw std::invalid_argument("present/absent rule without text"); }
		bool const found = out.find(frag) != std::string::npos;
		r.score = (found == (rule.type == RuleType::present)) ? 1.0 : 0.0;
		r.detail = found ? "fragment found" : "fragment not found";
		break;
	}
	case RuleType::missing_sentence: {
		if (rule.payload.sentences.empty()) { throw std::invalid_argument("missing_sentence rule without sentences"); }
		auto const text = unicode::to_u32(out);
		std::size_t hit = 0;
		for (auto const& s : rule.payload.sentences) {
			hit += meets(window_ratio(unicode::to_u32(normalize_text(s)), text), options.sentence_match_ratio) ? 1 : 0;
		}
		r.score = static_cast<double>(hit) / static_cast<double>(rule.payload.sentences.size());
		r.detail = detail::fmt_ratio(hit, rule.payload.sentences.size()) + " reference sentences recalled";
		break;
	}
	case RuleType::unexpected_sentence: {
		auto const gt = unicode::to_u32(normalize_text(reference));
		auto const sentences = split_sentences(out);
		if (sentences.empty()) {
			r.score = 1.0;
			r.detail = "no output sentences";
			break;
		}
		std::size_t hit = 0;
		for (auto const& s : sentences) { hit += meets(window_ratio(unicode::to_u32(s), gt), options.sentence_match_ratio) ? 1 : 0; }
		r.score = static_cast<double>(hit) / static_cast<double>(sentences.size());
		r.detail = detail::fmt_ratio(hit, sentences.size()) + " output sentences supported by the reference";
		break;
	}
	case RuleType::duplication:
		r.score = duplication_score(reference, out);
		r.detail = "word types within one extra occurrence";
		break;
	case RuleType::bag_of_digit_percent:
		r.score = bag_of_digit_score(normalize_text(reference), out);
		r.detail = "digit histogram intersection";
		break;
	default: throw std::invalid_argument("not a text-correctness rule: " + std::string(to_string(rule.type)));
	}
	return r;
}

/// Passes when the first occurrence of `before` precedes the last occurrence of `after`.
inline RuleResult eval_order_rule(TestRule const& rule, ParsedDocument const& doc) {
	RuleResult r{rule.type, rule.category, 0.0, ""};
	auto const before = normalize_text(rule.payload.before);
	auto const after = normalize_text(rule.payload.after);
	if (before.empty() || after.empty()) { throw std::invalid_argument("order rule needs before and after fragments"); }
	auto const& out = doc.normalized_text;
	auto const first = out.find(before);
	auto const last = out.rfind(after);
	if (first == std::string::npos || last == std::string::npos) {
		r.detail = first == std::string::npos ? "before fragment missing" : "after fragment missing";
		return r;
	}
	r.score = first < last ? 1.0 : 0.0;
	r.detail = first < last ? "in order" : "out of order";
	return r;
}

struct AggregateScores {
	std::map<RuleType, double> per_type;
	std::map<RuleCategory, double> per_category;
};

/// Mean per rule type, then mean over the types present in each category.
inline AggregateScores aggregate_rule_scores(std::vector<RuleResult> const& results) {
	std::map<RuleType, std::pair<double, std::size_t>> sums;
	std::map<RuleType, RuleCategory> category_of;
	for (auto const& r : results) {
		auto& [s, n] = sums[r.type];
		s += r.score;
		++n;
		category_of[r.type] = r.category;
	}
	AggregateScores out;
	std::map<RuleCategory, std::pair<double, std::size_t>> cats;
	for (auto const& [type, sn] : sums) {
		double const mean = sn.first / static_cast<double>(sn.second);
		out.per_type[type] = mean;
		auto& [s, n] = cats[category_of[type]];
		s += mean;
		++n;
	}
	for (auto const& [cat, sn] : cats) { out.per_category[cat] = sn.first / static_cast<double>(sn.second); }
	return out;
}

inline constexpr double text_category_weight = 1.0;
inline constexpr double order_category_weight = 0.5;

/// Weighted mean of the present categories (text 1.0, order 0.5).
inline double content_faithfulness_score(std::optional<double> s_text, std::optional<double> s_order) {
	if (!s_text && !s_order) { throw std::invalid_argument("content faithfulness needs at least one category"); }
	double num = 0.0, den = 0.0;
	if (s_text) {
		num += text_category_weight * *s_text;
		den += text_category_weight;
	}
	if (s_order) {
		num += order_category_weight * *s_order;
		den += order_category_weight;
	}
	return num / den;
}

struct TextPageScore {
	std::optional<double> cfs; // absent when the page has no text or order rules
	std::optional<double> text_correctness;
	std::optional<double> reading_order;
	AggregateScores aggregate;
	std::vector<RuleResult> results;
};

/// Content faithfulness of one page from its text-correctness and order rules.
inline TextPageScore score_content_faithfulness(GroundTruthPage const& page, ParsedDocument const& doc, TextOptions const& options = {}) {
	TextPageScore out;
	for (auto const& rule : page.rules) {
		if (rule.category == RuleCategory::text_correctness) {
			out.results.push_back(eval_text_rule(rule, doc, rule_reference_text(rule, page), options));
		} else if (rule.category == RuleCategory::reading_order) {
			out.results.push_back(eval_order_rule(rule, doc));
		}
	}
	if (out.results.empty()) { return out; }
	out.aggregate = aggregate_rule_scores(out.results);
	auto category = [&](RuleCategory c) -> std::optional<double> {
		auto it = out.aggregate.per_category.find(c);
		if (it == out.aggregate.per_category.end()) { return std::nullopt; }
		return it->second;
	};
	out.text_correctness = category(RuleCategory::text_correctness);
	out.reading_order = category(RuleCategory::reading_order);
	out.cfs = content_faithfulness_score(out.text_correctness, out.reading_order);
	return out;
}

} // namespace docscore
