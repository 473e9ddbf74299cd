// docscore: document-parser evaluation toolkit
// Requirements: C++20

#pragma once

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "geometry.hpp"

namespace docscore {

/// Malformed or inconsistent input data (dataset pages, predictions, rule payloads).
class DataError : public std::runtime_error {
  public:
	explicit DataError(std::string const& what) : std::runtime_error(what) {}
	DataError(std::string const& page_id, std::string const& field, std::string const& what)
		: std::runtime_error("page '" + page_id + "', field '" + field + "': " + what) {}
};

enum class Dimension { tables, charts, text, layout };

inline constexpr std::array<std::pair<Dimension, std::string_view>, 4> dimension_names = {{
	{Dimension::tables, "tables"},
	{Dimension::charts, "charts"},
	{Dimension::text, "text"},
	{Dimension::layout, "layout"},
}};

enum class RuleType {
	present,
	absent,
	missing_sentence,
	unexpected_sentence,
	duplication,
	bag_of_digit_percent,
	order,
	is_bold,
	is_not_bold,
	is_italic,
	is_not_italic,
	is_strikeout,
	is_not_strikeout,
	is_sup,
	is_not_sup,
	is_sub,
	is_not_sub,
	is_underline,
	is_not_underline,
	is_highlight,
	is_not_highlight,
	is_title,
	title_hierarchy_percent,
	is_latex,
	is_code_block,
};

inline constexpr std::array<std::pair<RuleType, std::string_view>, 25> rule_type_names = {{
	{RuleType::present, "present"},
	{RuleType::absent, "absent"},
	{RuleType::missing_sentence, "missing_sentence"},
	{RuleType::unexpected_sentence, "unexpected_sentence"},
	{RuleType::duplication, "duplication"},
	{RuleType::bag_of_digit_percent, "bag_of_digit_percent"},
	{RuleType::order, "order"},
	{RuleType::is_bold, "is_bold"},
	{RuleType::is_not_bold, "is_not_bold"},
	{RuleType::is_italic, "is_italic"},
	{RuleType::is_not_italic, "is_not_italic"},
	{RuleType::is_strikeout, "is_strikeout"},
	{RuleType::is_not_strikeout, "is_not_strikeout"},
	{RuleType::is_sup, "is_sup"},
	{RuleType::is_not_sup, "is_not_sup"},
	{RuleType::is_sub, "is_sub"},
	{RuleType::is_not_sub, "is_not_sub"},
	{RuleType::is_underline, "is_underline"},
	{RuleType::is_not_underline, "is_not_underline"},
	{RuleType::is_highlight, "is_highlight"},
	{RuleType::is_not_highlight, "is_not_highlight"},
	{RuleType::is_title, "is_title"},
	{RuleType::title_hierarchy_percent, "title_hierarchy_percent"},
	{RuleType::is_latex, "is_latex"},
	{RuleType::is_code_block, "is_code_block"},
}};

enum class RuleCategory { text_correctness, reading_order, styling_positive, styling_negative, title, latex, code };

inline constexpr std::array<std::pair<RuleCategory, std::string_view>, 7> rule_category_names = {{
	{RuleCategory::text_correctness, "text_correctness"},
	{RuleCategory::reading_order, "reading_order"},
	{RuleCategory::styling_positive, "styling_positive"},
	{RuleCategory::styling_negative, "styling_negative"},
	{RuleCategory::title, "title"},
	{RuleCategory::latex, "latex"},
	{RuleCategory::code, "code"},
}};

/// Shared label space for visual grounding.
enum class Label { text, table, picture, page_header, page_footer, unmapped };

inline constexpr std::array<std::pair<Label, std::string_view>, 6> label_names = {{
	{Label::text, "Text"},
	{Label::table, "Table"},
	{Label::picture, "Picture"},
	{Label::page_header, "Page-Header"},
	{Label::page_footer, "Page-Footer"},
	{Label::unmapped, "unmapped"},
}};

template <typename Enum, std::size_t N>
std::string_view enum_name(std::array<std::pair<Enum, std::string_view>, N> const& table, Enum value) {
	for (auto const& [e, name] : table) {
		if (e == value) { return name; }
	}
	return "?";
}

template <typename Enum, std::size_t N>
std::optional<Enum> enum_parse(std::array<std::pair<Enum, std::string_view>, N> const& table, std::string_view name) {
	for (auto const& [e, n] : table) {
		if (n == name) { return e; }
	}
	return std::nullopt;
}

inline std::string_view to_string(Dimension d) { return enum_name(dimension_names, d); }
inline std::string_view to_string(RuleType t) { return enum_name(rule_type_names, t); }
inline std::string_view to_string(RuleCategory c) { return enum_name(rule_category_names, c); }
inline std::string_view to_string(Label l) { return enum_name(label_names, l); }

inline RuleCategory default_category(RuleType t) {
	switch (t) {
	case RuleType::present:
	case RuleType::absent:
	case RuleType::missing_sentence:
	case RuleType::unexpected_sentence:
	case RuleType::duplication:
	case RuleType::bag_of_digit_percent: return RuleCategory::text_correctness;
	case RuleType::order: return RuleCategory::reading_order;
	case RuleType::is_bold:
	case RuleType::is_italic:
	case RuleType::is_strikeout:
	case RuleType::is_sup:
	case RuleType::is_sub:
	case RuleType::is_underline:
	case RuleType::is_highlight: return RuleCategory::styling_positive;
	case RuleType::is_not_bold:
	case RuleType::is_not_italic:
	case RuleType::is_not_strikeout:
	case RuleType::is_not_sup:
	case RuleType::is_not_sub:
	case RuleType::is_not_underline:
	case RuleType::is_not_highlight: return RuleCategory::styling_negative;
	case RuleType::is_title:
	case RuleType::title_hierarchy_percent: return RuleCategory::title;
	case RuleType::is_latex: return RuleCategory::latex;
	case RuleType::is_code_block: return RuleCategory::code;
	}
	return RuleCategory::text_correctness;
}

/// Rule-specific arguments. Which members are meaningful depends on the rule type:
///   present/absent/is_*/is_title: text (is_title may also carry level)
///   missing_sentence/unexpected_sentence: sentences
///   duplication/bag_of_digit_percent: text (reference text; falls back to the page text)
///   order: before, after
///   title_hierarchy_percent: edges (parent, child)
///   is_latex: text (formula)
///   is_code_block: text (code), language
struct RulePayload {
	std::string text;
	std::vector<std::string> sentences;
	std::string before;
	std::string after;
	std::vector<std::pair<std::string, std::string>> edges;
	std::string language;
	std::optional<int> level;

	friend bool operator==(RulePayload const&, RulePayload const&) = default;
};

struct TestRule {
	RuleType type{RuleType::present};
	RulePayload payload;
	RuleCategory category{RuleCategory::text_correctness};

	friend bool operator==(TestRule const&, TestRule const&) = default;
};

struct GroundTruthTable {
	std::string html;
	bool trm_unsupported{};
	std::optional<Box> region_hint;

	friend bool operator==(GroundTruthTable const&, GroundTruthTable const&) = default;
};

struct DataPointSpec {
	std::vector<std::string> labels;
	double value{};
	double relative_tolerance{0.01};

	double lower() const { return value - (value < 0 ? -value : value) * relative_tolerance; }
	double upper() const { return value + (value < 0 ? -value : value) * relative_tolerance; }
	/// Closed interval [v - |v|·tol, v + |v|·tol].
	bool accepts(double x) const {
		double const slack = 1e-12 * std::max(1.0, value < 0 ? -value : value);
		return x >= lower() - slack && x <= upper() + slack;
	}

	friend bool operator==(DataPointSpec const&, DataPointSpec const&) = default;
};

struct ElementFlags {
	bool explicit_content{};
	bool caption{};
	bool ignore{};
	bool formula{};

	friend bool operator==(ElementFlags const&, ElementFlags const&) = default;
};

struct LayoutElement {
	Box box;
	Label label{Label::text};
	std::optional<std::string> content;
	ElementFlags flags;
	std::optional<int> order_index;

	/// Attribution applies: literal content exists and no skip policy covers the element.
	bool attribution_applicable() const {
		return content.has_value() && !content->empty() && !flags.caption && !flags.formula && !flags.ignore;
	}

	friend bool operator==(LayoutElement const&, LayoutElement const&) = default;
};

struct GroundTruthPage {
	std::string page_id;
	Dimension dimension{Dimension::text};
	std::string source_asset;
	std::vector<TestRule> rules;
	std::vector<GroundTruthTable> tables;
	std::vector<DataPointSpec> data_points;
	std::vector<LayoutElement> elements;
	std::map<std::string, std::string> attributes;

	std::optional<std::string> attribute(std::string const& key) const {
		if (auto it = attributes.find(key); it != attributes.end()) { return it->second; }
		return std::nullopt;
	}

	friend bool operator==(GroundTruthPage const&, GroundTruthPage const&) = default;
};

/// One structured layout record from a provider ({bbox, category, text}).
struct PredictionRecord {
	std::optional<std::array<double, 4>> bbox;
	std::string label;
	std::string content;
	std::optional<double> confidence;

	friend bool operator==(PredictionRecord const&, PredictionRecord const&) = default;
};

enum class PayloadKind { markup, structured };

struct RawPrediction {
	std::string page_id;
	PayloadKind kind{PayloadKind::markup};
	std::string markup;
	std::vector<PredictionRecord> records;
	std::map<std::string, std::string> provider_meta;

	friend bool operator==(RawPrediction const&, RawPrediction const&) = default;
};

} // namespace docscore
