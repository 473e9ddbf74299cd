// docscore: document-parser evaluation toolkit
// Requirements: C++20

#pragma once

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "model.hpp"
#include "text.hpp"

namespace docscore {

enum class NumericScale { none, percent, k, M, B };

inline constexpr std::array<std::pair<NumericScale, std::string_view>, 5> numeric_scale_names = {{
	{NumericScale::none, "none"},
	{NumericScale::percent, "percent"},
	{NumericScale::k, "k"},
	{NumericScale::M, "M"},
	{NumericScale::B, "B"},
}};

inline std::string_view to_string(NumericScale s) { return enum_name(numeric_scale_names, s); }

struct NumericReading {
	double value{};
	NumericScale scale{NumericScale::none};

	friend bool operator==(NumericReading const&, NumericReading const&) = default;
};

namespace detail {

inline bool is_digit(char c) { return c >= '0' && c <= '9'; }

inline std::optional<double> parse_plain(std::string const& digits) {
	if (digits.empty()) { return std::nullopt; }
	double v = 0.0;
	auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
	if (ec != std::errc() || ptr != digits.data() + digits.size()) { return std::nullopt; }
	return v;
}

/// Readings of a core made of digits, ',' and '.': the last of two separator kinds is the
/// decimal mark; a repeated single kind is grouping; one separator followed by exactly three
/// digits is ambiguous and read both ways.
inline std::vector<double> core_readings(std::string_view core) {
	auto const comma = core.find(',') != std::string_view::npos;
	auto const dot = core.find('.') != std::string_view::npos;
	auto strip = [&](char drop, char decimal) {
		std::string out;
		for (char c : core) {
			if (c == drop) { continue; }
			out.push_back(c == decimal ? '.' : c);
		}
		return out;
	};
	std::vector<double> out;
	auto push = [&](std::string const& s) {
		if (auto v = parse_plain(s)) { out.push_back(*v); }
	};
	if (comma && dot) {
		char const decimal = core.find_last_of(",.") == core.rfind(',') ? ',' : '.';
		char const group = decimal == ',' ? '.' : ',';
		push(strip(group, decimal));
		return out;
	}
	if (!comma && !dot) {
		push(std::string(core));
		return out;
	}
	char const sep = comma ? ',' : '.';
	auto const count = static_cast<std::size_t>(std::count(core.begin(), core.end(), sep));
	if (count > 1) {
		push(strip(sep, '\0'));
		return out;
	}
	auto const pos = core.find(sep);
	auto const integer = core.substr(0, pos);
	auto const fraction = core.substr(pos + 1);
	bool const ambiguous = fraction.size() == 3 && !integer.empty() && integer != "0";
	if (ambiguous) {
		push(strip(sep, '\0'));
		push(strip('\0', sep));
	} else {
		push(strip('\0', sep));
	}
	return out;
}

struct Suffix {
	std::string_view word;
	NumericScale scale;
	double factor;
};

inline constexpr std::array<Suffix, 9> suffixes = {{
	{"thousand", NumericScale::k, 1e3},
	{"million", NumericScale::M, 1e6},
	{"billion", NumericScale::B, 1e9},
	{"mn", NumericScale::M, 1e6},
	{"bn", NumericScale::B, 1e9},
	{"k", NumericScale::k, 1e3},
	{"K", NumericScale::k, 1e3},
	{"M", NumericScale::M, 1e6},
	{"B", NumericScale::B, 1e9},
}};

} // namespace detail

/// Every plausible numeric reading of a cell: currency symbols and unit words are ignored,
/// grouping and decimal separators are disambiguated, k/M/B suffixes scale, '%' yields both
/// x and x/100, and a parenthesized or minus-signed value is negated. The first number in
/// the cell is read; a cell without digits has no readings.
inline std::vector<NumericReading> normalize_numeric(std::string_view cell) {
	auto const text = normalize_text(cell);
	std::string_view const s = text;
	std::size_t start = 0;
	while (start < s.size() && !detail::is_digit(s[start])) {
		if (s[start] == '.' && start + 1 < s.size() && detail::is_digit(s[start + 1])) { break; }
		++start;
	}
	if (start == s.size()) { return {}; }

	std::string core;
	std::size_t i = start;
	while (i < s.size()) {
		char const c = s[i];
		if (detail::is_digit(c)) {
			core.push_back(c);
			++i;
		} else if ((c == ',' || c == '.') && i + 1 < s.size() && detail::is_digit(s[i + 1])) {
			core.push_back(c);
			++i;
		} else if ((c == ' ' || c == '\'') && !core.empty() && detail::is_digit(core.back()) && i + 3 < s.size() &&
				   detail::is_digit(s[i + 1]) && detail::is_digit(s[i + 2]) && detail::is_digit(s[i + 3]) &&
				   (i + 4 >= s.size() || !detail::is_digit(s[i + 4]))) {
			++i; // digit grouping by space or apostrophe
		} else {
			break;
		}
	}
	std::size_t const end = i;

	// sign: '-' or U+2212 before the number, possibly behind a currency symbol
	bool negative = false;
	for (std::size_t j = start; j > 0; --j) {
		if (j >= 3 && s.substr(j - 3, 3) == "\xE2\x88\x92") {
			negative = true;
			break;
		}
		char const c = s[j - 1];
		if (c == '-') {
			negative = true;
			break;
		}
		if (!(c == ' ' || c == '$' || (static_cast<unsigned char>(c) & 0x80) != 0)) { break; }
	}
	// accounting negation: the whole cell is wrapped in parentheses
	auto const no_alnum = [](std::string_view v) { return std::none_of(v.begin(), v.end(), [](char c) { return detail::is_ascii_alnum(c); }); };
	if (auto const open = s.find('('), close = s.rfind(')'); open != std::string_view::npos && close != std::string_view::npos && open < start &&
															 close >= end && no_alnum(s.substr(0, open)) && no_alnum(s.substr(open, start - open)) &&
															 no_alnum(s.substr(close))) {
		negative = !negative;
	}

	std::size_t k = end;
	while (k < s.size() && s[k] == ' ') { ++k; }
	auto const rest = s.substr(k);
	bool const percent = rest.starts_with("%");
	double factor = 1.0;
	NumericScale scale = NumericScale::none;
	if (!percent) {
		for (auto const& suf : detail::suffixes) {
			if (!rest.starts_with(suf.word)) { continue; }
			auto const after = suf.word.size();
			if (after < rest.size() && std::isalpha(static_cast<unsigned char>(rest[after]))) { continue; }
			factor = suf.factor;
			scale = suf.scale;
			break;
		}
	}

	std::vector<NumericReading> out;
	auto add = [&](double v, NumericScale sc) {
		if (!std::isfinite(v)) { return; }
		NumericReading r{negative ? -v : v, sc};
		if (std::find(out.begin(), out.end(), r) == out.end()) { out.push_back(r); }
	};
	for (double v : detail::core_readings(core)) {
		if (percent) {
			add(v, NumericScale::none);
			add(v / 100.0, NumericScale::percent);
		} else {
			add(v * factor, scale);
		}
	}
	return out;
}

} // namespace docscore
