// docscore: document-parser evaluation toolkit
// Requirements: C++20

#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "document.hpp"
#include "model.hpp"
#include "text.hpp"
#include "text_eval.hpp"
#include "unicode.hpp"

namespace docscore {

struct FormatOptions {
	double beta{0.5};
	double title_match_ratio{0.9};
};

struct StyleRuleKind {
	StyleClass style;
	bool positive;
};

inline std::optional<StyleRuleKind> style_rule_kind(RuleType t) {
	switch (t) {
	case RuleType::is_bold: return StyleRuleKind{StyleClass::bold, true};
	case RuleType::is_not_bold: return StyleRuleKind{StyleClass::bold, false};
	case RuleType::is_italic: return StyleRuleKind{StyleClass::italic, true};
	case RuleType::is_not_italic: return StyleRuleKind{StyleClass::italic, false};
	case RuleType::is_strikeout: return StyleRuleKind{StyleClass::strikeout, true};
	case RuleType::is_not_strikeout: return StyleRuleKind{StyleClass::strikeout, false};
	case RuleType::is_sup: return StyleRuleKind{StyleClass::sup, true};
	case RuleType::is_not_sup: return StyleRuleKind{StyleClass::sup, false};
	case RuleType::is_sub: return StyleRuleKind{StyleClass::sub, true};
	case RuleType::is_not_sub: return StyleRuleKind{StyleClass::sub, false};
	case RuleType::is_underline: return StyleRuleKind{StyleClass::underline, true};
	case RuleType::is_not_underline: return StyleRuleKind{StyleClass::underline, false};
	case RuleType::is_highlight: return StyleRuleKind{StyleClass::highlight, true};
	case RuleType::is_not_highlight: return StyleRuleKind{StyleClass::highlight, false};
	default: return std::nullopt;
	}
}

/// Classes that feed the styling score; the others are reported only.
inline bool scored_style(StyleClass c) {
	return c == StyleClass::bold || c == StyleClass::strikeout || c == StyleClass::sup || c == StyleClass::sub;
}

/// Positive rules pass when the payload lies inside a span of the class; negative rules pass
/// when it does not.
inline RuleResult eval_style_rule(TestRule const& rule, ParsedDocument const& doc) {
	auto const kind = style_rule_kind(rule.type);
	if (!kind) { throw std::invalid_argument("not a styling rule: " + std::string(to_string(rule.type))); }
	auto const needle = normalize_text(rule.payload.text);
	bool styled = false;
	if (!needle.empty()) {
		for (auto const& span : doc.styling_spans) {
			if (span.style == kind->style && span.text.find(needle) != std::string::npos) {
				styled = true;
				break;
			}
		}
	}
	RuleResult r{rule.type, rule.category, 0.0, ""};
	r.score = styled == kind->positive ? 1.0 : 0.0;
	r.detail = std::string(styled ? "inside " : "not inside ") + std::string(to_string(kind->style)) + " span";
	return r;
}

struct StylingTally {
	std::vector<double> positive;
	std::vector<double> negative;
	/// Per class: (passed, total) over every styling rule, scored or not.
	std::map<StyleClass, std::pair<std::size_t, std::size_t>> per_class;

	void add(StyleRuleKind kind, double outcome) {
		auto& [passed, total] = per_class[kind.style];
		passed += outcome > 0.5 ? 1 : 0;
		++total;
		if (!scored_style(kind.style)) { return; }
		(kind.positive ? positive : negative).push_back(outcome);
	}
	bool empty() const { return positive.empty() && negative.empty(); }
};

/// (1+β²)·p·n / (β²·p + n); 0 when both rates are 0.
inline double styling_f_beta(double pos, double neg, double beta) {
	double const b2 = beta * beta;
	double const den = b2 * pos + neg;
	if (den <= 0.0) { return 0.0; }
	return (1.0 + b2) * pos * neg / den;
}

/// Weighted harmonic mean of the positive and negative pass rates; with one side empty the
/// other side's mean is returned.
inline std::optional<double> styling_score(StylingTally const& tally, double beta = 0.5) {
	auto mean = [](std::vector<double> const& v) -> std::optional<double> {
		if (v.empty()) { return std::nullopt; }
		double s = 0.0;
		for (double x : v) { s += x; }
		return s / static_cast<double>(v.size());
	};
	auto const pos = mean(tally.positive);
	auto const neg = mean(tally.negative);
	if (!pos && !neg) { return std::nullopt; }
	if (!pos) { return *neg; }
	if (!neg) { return *pos; }
	return styling_f_beta(*pos, *neg, beta);
}

namespace detail {

/// Level of the heading that best matches `text` at the threshold, if any.
inline std::optional<int> heading_level(ParsedDocument const& doc, std::string const& text, double ratio) {
	auto const needle = unicode::lower(normalize_text(text));
	double best = -1.0;
	std::optional<int> level;
	for (auto const& h : doc.headings) {
		double const r = edit_ratio(needle, unicode::lower(h.text));
		if (meets(r, ratio) && r > best) {
			best = r;
			level = h.level;
		}
	}
	return level;
}

inline std::string strip_spaces(std::string_view s) {
	auto const cps = unicode::to_u32(unicode::nfkc(s));
	std::u32string out;
	for (auto c : cps) {
		if (!unicode::is_space(c)) { out.push_back(c); }
	}
	return unicode::to_utf8(out);
}

} // namespace detail

inline RuleResult eval_title_rule(TestRule const& rule, ParsedDocument const& doc, FormatOptions const& options = {}) {
	RuleResult r{rule.type, rule.category, 0.0, ""};
	if (rule.type == RuleType::is_title) {
		auto const level = detail::heading_level(doc, rule.payload.text, options.title_match_ratio);
		r.score = level ? 1.0 : 0.0;
		r.detail = level ? "heading level " + std::to_string(*level) : "no matching heading";
		return r;
	}
	if (rule.type != RuleType::title_hierarchy_percent) { throw std::invalid_argument("not a title rule"); }
	std::size_t counted = 0, passed = 0;
	for (auto const& [parent, child] : rule.payload.edges) {
		auto const lp = detail::heading_level(doc, parent, options.title_match_ratio);
		auto const lc = detail::heading_level(doc, child, options.title_match_ratio);
		if (!lp || !lc) { continue; }
		++counted;
		passed += *lp < *lc ? 1 : 0;
	}
	r.score = counted == 0 ? 0.0 : static_cast<double>(passed) / static_cast<double>(counted);
	r.detail = counted == 0 ? "no detected heading pairs" : std::to_string(passed) + "/" + std::to_string(counted) + " pairs nested";
	return r;
}

/// Mean over the title rule types present.
inline std::optional<double> eval_title_rules(std::vector<TestRule> const& rules, ParsedDocument const& doc, FormatOptions const& options = {}) {
	std::vector<RuleResult> results;
	for (auto const& r : rules) {
		if (r.type == RuleType::is_title || r.type == RuleType::title_hierarchy_percent) { results.push_back(eval_title_rule(r, doc, options)); }
	}
	if (results.empty()) { return std::nullopt; }
	return aggregate_rule_scores(results).per_category.begin()->second;
}

inline RuleResult eval_block_rule(TestRule const& rule, ParsedDocument const& doc) {
	RuleResult r{rule.type, rule.category, 0.0, ""};
	if (rule.type == RuleType::is_latex) {
		auto const formula = detail::strip_spaces(rule.payload.text);
		for (auto const& span : doc.latex_spans) {
			if (!formula.empty() && detail::strip_spaces(span).find(formula) != std::string::npos) {
				r.score = 1.0;
				break;
			}
		}
		r.detail = r.score > 0.0 ? "inside math span" : "no math span holds the formula";
		return r;
	}
	if (rule.type == RuleType::is_code_block) {
		auto const code = canonical_text(rule.payload.text);
		auto const lang = detail::to_lower_ascii(detail::trim_view(rule.payload.language));
		bool body_found = false;
		for (auto const& block : doc.code_blocks) {
			if (code.empty() || canonical_text(block.body).find(code) == std::string::npos) { continue; }
			body_found = true;
			if (block.language == lang) {
				r.score = 1.0;
				break;
			}
		}
		r.detail = r.score > 0.0 ? "fenced block with language " + lang : body_found ? "language tag mismatch" : "no fenced block holds the code";
		return r;
	}
	throw std::invalid_argument("not a latex or code rule");
}

struct BlockScores {
	std::optional<double> latex;
	std::optional<double> code;
};

inline BlockScores eval_block_rules(std::vector<TestRule> const& rules, ParsedDocument const& doc) {
	std::vector<RuleResult> results;
	for (auto const& r : rules) {
		if (r.type == RuleType::is_latex || r.type == RuleType::is_code_block) { results.push_back(eval_block_rule(r, doc)); }
	}
	auto const agg = aggregate_rule_scores(results);
	BlockScores out;
	if (auto it = agg.per_category.find(RuleCategory::latex); it != agg.per_category.end()) { out.latex = it->second; }
	if (auto it = agg.per_category.find(RuleCategory::code); it != agg.per_category.end()) { out.code = it->second; }
	return out;
}

inline constexpr double style_weight = 1.0;
inline constexpr double title_weight = 1.0;
inline constexpr double latex_weight = 1.0 / 5.0;
inline constexpr double code_weight = 1.0 / 5.0;

/// Weighted mean over present categories: style 1, title 1, latex 1/5, code 1/5.
inline double semantic_formatting_score(std::optional<double> style, std::optional<double> title, std::optional<double> latex, std::optional<double> code) {
	double num = 0.0, den = 0.0;
	auto add = [&](std::optional<double> s, double w) {
		if (!s) { return; }
		num += w * *s;
		den += w;
	};
	add(style, style_weight);
	add(title, title_weight);
	add(latex, latex_weight);
	add(code, code_weight);
	if (den == 0.0) { throw std::invalid_argument("semantic formatting needs at least one category"); }
	return num / den;
}

struct FormatPageScore {
	std::optional<double> sfs; // absent when the page has no formatting rules
	std::optional<double> style;
	std::optional<double> title;
	std::optional<double> latex;
	std::optional<double> code;
	StylingTally tally;
	std::vector<RuleResult> results;
};

inline FormatPageScore score_semantic_formatting(GroundTruthPage const& page, ParsedDocument const& doc, FormatOptions const& options = {}) {
	FormatPageScore out;
	std::vector<RuleResult> title_results, block_results;
	for (auto const& rule : page.rules) {
		if (auto kind = style_rule_kind(rule.type)) {
			auto r = eval_style_rule(rule, doc);
			out.tally.add(*kind, r.score);
			out.results.push_back(std::move(r));
		} else if (rule.category == RuleCategory::title) {
			title_results.push_back(eval_title_rule(rule, doc, options));
			out.results.push_back(title_results.back());
		} else if (rule.category == RuleCategory::latex || rule.category == RuleCategory::code) {
			block_results.push_back(eval_block_rule(rule, doc));
			out.results.push_back(block_results.back());
		}
	}
	out.style = styling_score(out.tally, options.beta);
	if (!title_results.empty()) { out.title = aggregate_rule_scores(title_results).per_category.at(RuleCategory::title); }
	auto const blocks = aggregate_rule_scores(block_results);
	if (auto it = blocks.per_category.find(RuleCategory::latex); it != blocks.per_category.end()) { out.latex = it->second; }
	if (auto it = blocks.per_category.find(RuleCategory::code); it != blocks.per_category.end()) { out.code = it->second; }
	if (out.style || out.title || out.latex || out.code) { out.sfs = semantic_formatting_score(out.style, out.title, out.latex, out.code); }
	return out;
}

} // namespace docscore
