// docscore: document-parser evaluation toolkit
// Requirements: C++20

#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "unicode.hpp"

namespace docscore {

namespace detail {

inline bool is_ascii_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }
inline bool is_ascii_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v'; }

inline std::string_view trim_view(std::string_view s) {
	while (!s.empty() && is_ascii_space(s.front())) { s.remove_prefix(1); }
	while (!s.empty() && is_ascii_space(s.back())) { s.remove_suffix(1); }
	return s;
}

inline std::string to_lower_ascii(std::string_view s) {
	std::string out(s);
	for (auto& c : out) { c = static_cast<char>(std::tolower(static_cast<unsigned char>(c))); }
	return out;
}

inline std::vector<std::string_view> split_lines(std::string_view s) {
	std::vector<std::string_view> out;
	std::size_t start = 0;
	for (std::size_t i = 0; i <= s.size(); ++i) {
		if (i == s.size() || s[i] == '\n') {
			out.push_back(s.substr(start, i - start));
			start = i + 1;
		}
	}
	return out;
}

// Tags that separate words when removed.
inline bool is_block_tag(std::string_view name) {
	static constexpr std::array<std::string_view, 28> block = {
		"div", "p", "br", "tr", "td", "th", "table", "thead", "tbody", "tfoot", "li", "ul", "ol", "h1",
		"h2", "h3", "h4", "h5", "h6", "caption", "hr", "section", "article", "header", "footer", "blockquote", "pre", "figure"};
	return std::find(block.begin(), block.end(), name) != block.end();
}

/// Length of an HTML tag starting at `i` (which must be '<'), or 0 when the text is not a tag.
inline std::size_t tag_length(std::string_view s, std::size_t i, std::string* name = nullptr) {
	if (i >= s.size() || s[i] != '<') { return 0; }
	std::size_t j = i + 1;
	if (j < s.size() && s[j] == '/') { ++j; }
	if (j >= s.size() || !std::isalpha(static_cast<unsigned char>(s[j]))) { return 0; }
	std::size_t const name_start = j;
	while (j < s.size() && (is_ascii_alnum(s[j]) || s[j] == '-')) { ++j; }
	std::size_t const name_end = j;
	if (j < s.size() && !(is_ascii_space(s[j]) || s[j] == '>' || s[j] == '/')) { return 0; }
	char quote = 0;
	while (j < s.size()) {
		char const c = s[j];
		if (quote != 0) {
			if (c == quote) { quote = 0; }
		} else if (c == '"' || c == '\'') {
			quote = c;
		} else if (c == '>') {
			if (name != nullptr) { *name = to_lower_ascii(s.substr(name_start, name_end - name_start)); }
			return j - i + 1;
		} else if (c == '<') {
			return 0;
		}
		++j;
	}
	return 0;
}

inline bool decode_entity(std::string_view s, std::size_t i, std::string& out, std::size_t& consumed) {
	auto const semi = s.find(';', i);
	if (semi == std::string_view::npos || semi - i > 10) { return false; }
	auto const ent = s.substr(i + 1, semi - i - 1);
	static std::map<std::string_view, std::string_view> const named = {
		{"amp", "&"}, {"lt", "<"}, {"gt", ">"}, {"quot", "\""}, {"apos", "'"}, {"nbsp", "\u00A0"},
		{"ndash", "\u2013"}, {"mdash", "\u2014"}, {"hellip", "\u2026"}, {"thinsp", "\u2009"}};
	if (auto it = named.find(ent); it != named.end()) {
		out += it->second;
		consumed = semi - i + 1;
		return true;
	}
	if (ent.size() >= 2 && ent[0] == '#') {
		std::uint32_t cp = 0;
		auto digits = ent.substr(1);
		int base = 10;
		if (!digits.empty() && (digits[0] == 'x' || digits[0] == 'X')) {
			base = 16;
			digits.remove_prefix(1);
		}
		auto const [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), cp, base);
		if (ec != std::errc{} || ptr != digits.data() + digits.size() || cp == 0 || cp > 0x10FFFF) { return false; }
		unicode::append_utf8(out, static_cast<char32_t>(cp));
		consumed = semi - i + 1;
		return true;
	}
	return false;
}

inline bool is_table_separator_line(std::string_view line) {
	line = trim_view(line);
	if (line.empty()) { return false; }
	bool dash = false;
	for (char c : line) {
		if (c == '-') {
			dash = true;
		} else if (c != '|' && c != ':' && !is_ascii_space(c)) {
			return false;
		}
	}
	return dash && line.find('|') != std::string_view::npos;
}

inline bool is_horizontal_rule(std::string_view line) {
	line = trim_view(line);
	if (line.size() < 3) { return false; }
	char const c = line.front();
	if (c != '-' && c != '*' && c != '_') { return false; }
	return std::all_of(line.begin(), line.end(), [c](char x) { return x == c || is_ascii_space(x); });
}

/// Strips block-level markdown syntax from one line.
inline std::string_view strip_line_prefix(std::string_view line) {
	auto s = line;
	std::size_t lead = 0;
	while (lead < s.size() && (s[lead] == ' ' || s[lead] == '\t')) { ++lead; }
	s.remove_prefix(lead);
	// leading wrapper tags such as `<div data-bbox=...>` do not hide block syntax
	while (!s.empty() && s.front() == '<') {
		auto const len = tag_length(s, 0);
		if (len == 0) { break; }
		s.remove_prefix(len);
		while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) { s.remove_prefix(1); }
	}
	while (!s.empty() && s.front() == '>') {
		s.remove_prefix(1);
		while (!s.empty() && s.front() == ' ') { s.remove_prefix(1); }
	}
	std::size_t hashes = 0;
	while (hashes < s.size() && s[hashes] == '#') { ++hashes; }
	if (hashes >= 1 && hashes <= 6 && (hashes == s.size() || s[hashes] == ' ' || s[hashes] == '\t')) {
		s.remove_prefix(hashes);
	} else if (s.size() >= 2 && (s[0] == '-' || s[0] == '*' || s[0] == '+') && (s[1] == ' ' || s[1] == '\t')) {
		s.remove_prefix(2);
	}
	return s;
}

inline bool is_md_punct(char c) {
	static constexpr std::string_view punct = "\\`*_{}[]()#+-.!|~<>";
	return punct.find(c) != std::string_view::npos;
}

/// One pass of markup removal: block syntax, HTML tags, links, emphasis markers, entities.
inline std::string strip_markup_pass(std::string_view raw) {
	std::string lines;
	lines.reserve(raw.size());
	for (auto line : split_lines(raw)) {
		auto const t = trim_view(line);
		if (t.starts_with("```") || t.starts_with("~~~") || is_table_separator_line(line) || is_horizontal_rule(line)) {
			lines.push_back('\n');
			continue;
		}
		auto body = strip_line_prefix(line);
		bool const pipe_row = trim_view(body).starts_with("|");
		for (char c : body) { lines.push_back(pipe_row && c == '|' ? ' ' : c); }
		lines.push_back('\n');
	}

	std::string out;
	out.reserve(lines.size());
	std::string_view const s = lines;
	std::size_t i = 0;
	while (i < s.size()) {
		char const c = s[i];
		if (c == '<') {
			if (s.substr(i).starts_with("<!--")) {
				auto const end = s.find("-->", i + 4);
				i = end == std::string_view::npos ? s.size() : end + 3;
				out.push_back(' ');
				continue;
			}
			std::string name;
			if (auto const len = tag_length(s, i, &name); len > 0) {
				if (is_block_tag(name)) { out.push_back(' '); }
				i += len;
				continue;
			}
			out.push_back(c);
			++i;
			continue;
		}
		if (c == '&') {
			std::size_t consumed = 0;
			if (decode_entity(s, i, out, consumed)) {
				i += consumed;
				continue;
			}
			out.push_back(c);
			++i;
			continue;
		}
		if (c == '\\' && i + 1 < s.size() && is_md_punct(s[i + 1])) {
			out.push_back(s[i + 1]);
			i += 2;
			continue;
		}
		if (c == '!' && i + 1 < s.size() && s[i + 1] == '[') {
			++i;
			continue;
		}
		if (c == '[') {
			// [text](target) -> text
			auto const close = s.find(']', i + 1);
			if (close != std::string_view::npos && close + 1 < s.size() && s[close + 1] == '(') {
				auto const paren = s.find(')', close + 2);
				auto const nl = s.find('\n', i);
				if (paren != std::string_view::npos && (nl == std::string_view::npos || paren < nl)) {
					out.append(s.substr(i + 1, close - i - 1));
					i = paren + 1;
					continue;
				}
			}
			out.push_back(c);
			++i;
			continue;
		}
		if (c == '*' || c == '`') {
			++i;
			continue;
		}
		if (c == '~' && i + 1 < s.size() && s[i + 1] == '~') {
			i += 2;
			continue;
		}
		if (c == '_') {
			bool const prev_word = i > 0 && is_ascii_alnum(s[i - 1]);
			bool const next_word = i + 1 < s.size() && is_ascii_alnum(s[i + 1]);
			if (!(prev_word && next_word)) {
				++i;
				continue;
			}
		}
		out.push_back(c);
		++i;
	}
	return out;
}

inline std::string collapse_whitespace(std::string_view s) {
	auto const cps = unicode::to_u32(s);
	std::u32string out;
	out.reserve(cps.size());
	bool pending = false;
	for (char32_t cp : cps) {
		if (unicode::is_space(cp) || cp == U'\u200B' || cp == U'\uFEFF') {
			pending = !out.empty();
			continue;
		}
		if (pending) {
			out.push_back(U' ');
			pending = false;
		}
		out.push_back(cp);
	}
	return unicode::to_utf8(out);
}

} // namespace detail

/// Removes markdown/HTML formatting (keeping inner text), applies NFKC and collapses whitespace.
/// The result is a fixed point: normalizing it again returns it unchanged.
inline std::string normalize_text(std::string_view raw) {
	std::string cur(raw);
	for (int pass = 0; pass < 32; ++pass) {
		auto next = detail::collapse_whitespace(unicode::nfkc(detail::strip_markup_pass(cur)));
		if (next == cur) { break; }
		cur = std::move(next);
	}
	return cur;
}

/// Whitespace-collapsed, NFKC text with markup left intact.
inline std::string canonical_text(std::string_view raw) { return detail::collapse_whitespace(unicode::nfkc(raw)); }

inline std::vector<std::string> split_tokens(std::string_view normalized) {
	std::vector<std::string> out;
	std::size_t i = 0;
	while (i < normalized.size()) {
		while (i < normalized.size() && normalized[i] == ' ') { ++i; }
		auto const start = i;
		while (i < normalized.size() && normalized[i] != ' ') { ++i; }
		if (i > start) { out.emplace_back(normalized.substr(start, i - start)); }
	}
	return out;
}

/// Lowercased tokens of normalized text, as used for attribution and duplication comparisons.
inline std::vector<std::string> comparison_tokens(std::string_view raw) {
	return split_tokens(unicode::lower(normalize_text(raw)));
}

inline std::size_t levenshtein(std::u32string_view a, std::u32string_view b) {
	if (a.size() < b.size()) { std::swap(a, b); }
	std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
	for (std::size_t j = 0; j <= b.size(); ++j) { prev[j] = j; }
	for (std::size_t i = 1; i <= a.size(); ++i) {
		cur[0] = i;
		for (std::size_t j = 1; j <= b.size(); ++j) {
			auto const sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
			cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
		}
		std::swap(prev, cur);
	}
	return prev[b.size()];
}

/// 1 - levenshtein / max(len); two empty strings are identical.
inline double edit_ratio(std::string_view a, std::string_view b) {
	auto const ua = unicode::to_u32(a);
	auto const ub = unicode::to_u32(b);
	auto const longest = std::max(ua.size(), ub.size());
	if (longest == 0) { return 1.0; }
	return 1.0 - static_cast<double>(levenshtein(ua, ub)) / static_cast<double>(longest);
}

/// Best edit ratio of `pattern` against any window (substring) of `text`:
/// 1 - min_window_distance / len(pattern), via semi-global alignment.
inline double window_ratio(std::u32string_view pattern, std::u32string_view text) {
	if (pattern.empty()) { return 1.0; }
	std::vector<std::size_t> prev(pattern.size() + 1), cur(pattern.size() + 1);
	for (std::size_t i = 0; i <= pattern.size(); ++i) { prev[i] = i; }
	std::size_t best = prev[pattern.size()];
	for (std::size_t j = 1; j <= text.size(); ++j) {
		cur[0] = 0;
		for (std::size_t i = 1; i <= pattern.size(); ++i) {
			auto const sub = prev[i - 1] + (pattern[i - 1] == text[j - 1] ? 0 : 1);
			cur[i] = std::min({prev[i] + 1, cur[i - 1] + 1, sub});
		}
		best = std::min(best, cur[pattern.size()]);
		std::swap(prev, cur);
		if (best == 0) { break; }
	}
	return 1.0 - static_cast<double>(best) / static_cast<double>(pattern.size());
}

inline double window_ratio(std::string_view pattern, std::string_view text) {
	return window_ratio(unicode::to_u32(pattern), unicode::to_u32(text));
}

/// Longest common subsequence length over code points.
inline std::size_t lcs_length(std::u32string_view a, std::u32string_view b) {
	std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
	for (std::size_t i = 1; i <= a.size(); ++i) {
		for (std::size_t j = 1; j <= b.size(); ++j) {
			cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
		}
		std::swap(prev, cur);
	}
	return prev[b.size()];
}

/// Splits normalized text into sentences on `.?!` followed by a space and an uppercase letter or digit.
inline std::vector<std::string> split_sentences(std::string_view normalized) {
	static constexpr std::array<std::string_view, 24> abbreviations = {
		"mr", "mrs", "ms", "dr", "prof", "sr", "jr", "st", "vs", "etc", "e.g", "i.e", "no", "fig", "inc", "ltd",
		"co", "corp", "vol", "pp", "p", "u.s", "dept", "approx"};
	auto const cps = unicode::to_u32(normalized);
	std::vector<std::string> out;
	std::size_t start = 0;
	for (std::size_t i = 0; i < cps.size(); ++i) {
		char32_t const c = cps[i];
		if (c != U'.' && c != U'?' && c != U'!') { continue; }
		if (i + 2 >= cps.size() || cps[i + 1] != U' ') { continue; }
		char32_t const next = cps[i + 2];
		if (!unicode::is_upper(next) && !unicode::is_digit(next)) { continue; }
		if (c == U'.') {
			std::size_t w = i;
			while (w > start && cps[w - 1] != U' ') { --w; }
			auto const word = unicode::lower(unicode::to_utf8(cps.substr(w, i - w)));
			if (std::find(abbreviations.begin(), abbreviations.end(), word) != abbreviations.end()) { continue; }
			if (i - w == 1 && unicode::is_upper(cps[w])) { continue; }
		}
		out.push_back(unicode::to_utf8(cps.substr(start, i + 1 - start)));
		start = i + 2;
	}
	if (start < cps.size()) { out.push_back(unicode::to_utf8(cps.substr(start))); }
	return out;
}

} // namespace docscore
