// docscore: document-parser evaluation toolkit
// Requirements: C++20

#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "text.hpp"

namespace docscore::html {

struct Tag {
	std::size_t pos{};
	std::size_t len{};
	std::string name; // lowercase, without '/'
	bool closing{};
	bool self_closing{};

	std::size_t end() const { return pos + len; }
};

/// Next well-formed tag at or after `from`.
inline std::optional<Tag> next_tag(std::string_view s, std::size_t from) {
	while (from < s.size()) {
		auto const lt = s.find('<', from);
		if (lt == std::string_view::npos) { return std::nullopt; }
		std::string name;
		if (auto const len = detail::tag_length(s, lt, &name); len > 0) {
			Tag t;
			t.pos = lt;
			t.len = len;
			t.name = std::move(name);
			t.closing = s[lt + 1] == '/';
			t.self_closing = len >= 2 && s[lt + len - 2] == '/';
			return t;
		}
		from = lt + 1;
	}
	return std::nullopt;
}

/// Attribute map of a start tag (`<td colspan="2" data-x='y' hidden>`); names lowercased.
inline std::map<std::string, std::string> attributes(std::string_view tag_text) {
	std::map<std::string, std::string> out;
	std::size_t i = 1;
	while (i < tag_text.size() && tag_text[i] != ' ' && tag_text[i] != '>' && tag_text[i] != '/' && tag_text[i] != '\t' &&
		   tag_text[i] != '\n') {
		++i;
	}
	while (i < tag_text.size()) {
		while (i < tag_text.size() && (detail::is_ascii_space(tag_text[i]) || tag_text[i] == '/')) { ++i; }
		if (i >= tag_text.size() || tag_text[i] == '>') { break; }
		auto const name_start = i;
		while (i < tag_text.size() && !detail::is_ascii_space(tag_text[i]) && tag_text[i] != '=' && tag_text[i] != '>') { ++i; }
		auto name = detail::to_lower_ascii(tag_text.substr(name_start, i - name_start));
		while (i < tag_text.size() && detail::is_ascii_space(tag_text[i])) { ++i; }
		std::string value;
		if (i < tag_text.size() && tag_text[i] == '=') {
			++i;
			while (i < tag_text.size() && detail::is_ascii_space(tag_text[i])) { ++i; }
			if (i < tag_text.size() && (tag_text[i] == '"' || tag_text[i] == '\'')) {
				char const q = tag_text[i++];
				auto const vstart = i;
				while (i < tag_text.size() && tag_text[i] != q) { ++i; }
				value = std::string(tag_text.substr(vstart, i - vstart));
				if (i < tag_text.size()) { ++i; }
			} else {
				auto const vstart = i;
				while (i < tag_text.size() && !detail::is_ascii_space(tag_text[i]) && tag_text[i] != '>') { ++i; }
				value = std::string(tag_text.substr(vstart, i - vstart));
			}
		}
		if (!name.empty()) { out.emplace(std::move(name), std::move(value)); }
	}
	return out;
}

/// Position just past the end tag matching the start tag `open` (same name, nesting-aware), or npos.
inline std::size_t matching_end(std::string_view s, Tag const& open, std::size_t* close_pos = nullptr) {
	int depth = 1;
	auto from = open.end();
	while (auto t = next_tag(s, from)) {
		if (t->name == open.name) {
			if (t->closing) {
				if (--depth == 0) {
					if (close_pos != nullptr) { *close_pos = t->pos; }
					return t->end();
				}
			} else if (!t->self_closing) {
				++depth;
			}
		}
		from = t->end();
	}
	return std::string_view::npos;
}

} // namespace docscore::html
