// docscore: document-parser evaluation toolkit
// Requirements: C++20

#pragma once

#include <algorithm>
#include <array>
#include <charconv>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "geometry.hpp"
#include "grid.hpp"
#include "html.hpp"
#include "labels.hpp"
#include "model.hpp"
#include "text.hpp"

namespace docscore {

enum class StyleClass { bold, italic, strikeout, sup, sub, underline, highlight };

inline constexpr std::array<std::pair<StyleClass, std::string_view>, 7> style_class_names = {{
	{StyleClass::bold, "bold"},
	{StyleClass::italic, "italic"},
	{StyleClass::strikeout, "strikeout"},
	{StyleClass::sup, "sup"},
	{StyleClass::sub, "sub"},
	{StyleClass::underline, "underline"},
	{StyleClass::highlight, "highlight"},
}};

inline std::string_view to_string(StyleClass c) { return enum_name(style_class_names, c); }

struct StyleSpan {
	StyleClass style{};
	std::string text; // normalized inner text
	std::size_t begin{}; // source offsets of the inner text
	std::size_t end{};
};

struct Heading {
	int level{};
	std::string text; // normalized
	std::size_t offset{};
};

struct CodeBlock {
	std::string language;
	std::string body;
};

/// One layout region of a prediction.
struct Block {
	std::optional<Box> box; // normalized; absent when the provider gave no box
	Label label{Label::unmapped};
	std::string provider_label;
	std::string raw;
	std::string text;				 // normalized
	std::vector<std::string> tokens; // lowercased comparison tokens
	std::optional<double> confidence;
};

struct ParsedDocument {
	std::string page_id;
	std::string markup;
	std::string normalized_text;
	std::vector<std::string> tokens;
	std::vector<Grid> tables;
	std::vector<Block> blocks;
	std::vector<StyleSpan> styling_spans;
	std::vector<Heading> headings;
	std::vector<CodeBlock> code_blocks;
	std::vector<std::string> latex_spans;
	std::vector<std::string> warnings;
};

struct DocumentOptions {
	LabelMap labels = LabelMap::defaults();
	/// Markup boxes are written [y1, x1, y2, x2].
	bool y_first{};
};

namespace detail {

/// Byte ranges of fenced code blocks and inline code spans, where markup is literal.
inline std::vector<std::pair<std::size_t, std::size_t>> code_ranges(std::string_view s, std::vector<CodeBlock>* blocks = nullptr) {
	std::vector<std::pair<std::size_t, std::size_t>> out;
	auto const lines = line_spans(s);
	for (std::size_t i = 0; i < lines.size(); ++i) {
		auto const line = trim_view(s.substr(lines[i].begin, lines[i].end - lines[i].begin));
		if (!(line.starts_with("```") || line.starts_with("~~~"))) { continue; }
		char const fence = line[0];
		std::size_t n = 0;
		while (n < line.size() && line[n] == fence) { ++n; }
		auto info = trim_view(line.substr(n));
		auto const lang = info.substr(0, std::min(info.find(' '), info.size()));
		std::size_t j = i + 1;
		for (; j < lines.size(); ++j) {
			auto const l = trim_view(s.substr(lines[j].begin, lines[j].end - lines[j].begin));
			std::size_t m = 0;
			while (m < l.size() && l[m] == fence) { ++m; }
			if (m >= n && trim_view(l.substr(m)).empty()) { break; }
		}
		std::size_t const body_begin = i + 1 < lines.size() ? lines[i + 1].begin : s.size();
		std::size_t const body_end = j < lines.size() ? lines[j].begin : s.size();
		if (blocks != nullptr) {
			std::string body(s.substr(body_begin, body_end > body_begin ? body_end - body_begin : 0));
			while (!body.empty() && body.back() == '\n') { body.pop_back(); }
			blocks->push_back({to_lower_ascii(lang), std::move(body)});
		}
		out.emplace_back(lines[i].begin, j < lines.size() ? lines[j].end : s.size());
		i = j;
	}
	// inline code outside fences
	std::vector<std::pair<std::size_t, std::size_t>> inline_ranges;
	std::size_t i = 0;
	auto in_fence = [&](std::size_t p) { return std::any_of(out.begin(), out.end(), [&](auto const& r) { return p >= r.first && p < r.second; }); };
	while (i < s.size()) {
		if (s[i] != '`' || in_fence(i)) {
			++i;
			continue;
		}
		std::size_t n = 0;
		while (i + n < s.size() && s[i + n] == '`') { ++n; }
		auto const close = s.find(std::string(n, '`'), i + n);
		if (close == std::string_view::npos) {
			i += n;
			continue;
		}
		inline_ranges.emplace_back(i, close + n);
		i = close + n;
	}
	out.insert(out.end(), inline_ranges.begin(), inline_ranges.end());
	std::sort(out.begin(), out.end());
	return out;
}

inline bool in_ranges(std::vector<std::pair<std::size_t, std::size_t>> const& ranges, std::size_t p) {
	auto it = std::upper_bound(ranges.begin(), ranges.end(), std::pair{p, std::string_view::npos});
	if (it == ranges.begin()) { return false; }
	--it;
	return p >= it->first && p < it->second;
}

inline std::optional<StyleClass> html_style(std::string_view tag) {
	if (tag == "b" || tag == "strong") { return StyleClass::bold; }
	if (tag == "i" || tag == "em") { return StyleClass::italic; }
	if (tag == "s" || tag == "del" || tag == "strike") { return StyleClass::strikeout; }
	if (tag == "sup") { return StyleClass::sup; }
	if (tag == "sub") { return StyleClass::sub; }
	if (tag == "u" || tag == "ins") { return StyleClass::underline; }
	if (tag == "mark") { return StyleClass::highlight; }
	return std::nullopt;
}

inline bool byte_is_space(std::string_view s, std::size_t i) { return i >= s.size() || is_ascii_space(s[i]); }
inline bool byte_is_word(std::string_view s, std::size_t i) {
	return i < s.size() && (is_ascii_alnum(s[i]) || (static_cast<unsigned char>(s[i]) & 0x80) != 0);
}

/// Styled spans from markdown delimiter runs (`*`, `_`, `~~`) and inline HTML tags.
inline std::vector<StyleSpan> styling_spans(std::string_view s, std::vector<std::pair<std::size_t, std::size_t>> const& code) {
	std::vector<StyleSpan> spans;
	auto emit = [&](StyleClass c, std::size_t b, std::size_t e) {
		if (e <= b) { return; }
		auto text = normalize_text(s.substr(b, e - b));
		if (!text.empty()) { spans.push_back({c, std::move(text), b, e}); }
	};

	struct Open {
		char marker;
		std::size_t length;
		std::size_t inner_begin;
	};
	std::vector<Open> md_stack;
	struct OpenTag {
		std::string name;
		std::size_t inner_begin;
	};
	std::vector<OpenTag> tag_stack;

	std::size_t i = 0;
	while (i < s.size()) {
		if (in_ranges(code, i)) {
			++i;
			continue;
		}
		char const c = s[i];
		if (c == '\\' && i + 1 < s.size()) {
			i += 2;
			continue;
		}
		if (c == '\n' && i + 1 < s.size() && s[i + 1] == '\n') {
			md_stack.clear(); // emphasis never spans paragraphs
		}
		if (c == '<') {
			std::string name;
			if (auto const len = tag_length(s, i, &name); len > 0) {
				if (auto style = html_style(name)) {
					bool const closing = s[i + 1] == '/';
					if (!closing) {
						tag_stack.push_back({name, i + len});
					} else {
						for (auto it = tag_stack.rbegin(); it != tag_stack.rend(); ++it) {
							if (it->name == name) {
								emit(*style, it->inner_begin, i);
								tag_stack.erase(std::next(it).base(), tag_stack.end());
								break;
							}
						}
					}
				}
				i += len;
				continue;
			}
		}
		if (c == '*' || c == '_' || c == '~') {
			std::size_t n = 0;
			while (i + n < s.size() && s[i + n] == c) { ++n; }
			if (c == '~' && n != 2) {
				i += n;
				continue;
			}
			bool const before_space = i == 0 || byte_is_space(s, i - 1);
			bool const after_space = byte_is_space(s, i + n);
			bool can_open = !after_space;
			bool can_close = !before_space;
			if (c == '_') {
				can_open = can_open && !(i > 0 && byte_is_word(s, i - 1));
				can_close = can_close && !byte_is_word(s, i + n);
			}
			bool closed = false;
			if (can_close) {
				for (auto it = md_stack.rbegin(); it != md_stack.rend(); ++it) {
					if (it->marker == c && it->length == n) {
						auto const b = it->inner_begin;
						if (c == '~') {
							emit(StyleClass::strikeout, b, i);
						} else {
							if (n == 1 || n == 3) { emit(StyleClass::italic, b, i); }
							if (n == 2 || n == 3) { emit(StyleClass::bold, b, i); }
						}
						md_stack.erase(std::next(it).base(), md_stack.end());
						closed = true;
						break;
					}
				}
			}
			if (!closed && can_open && n <= 3) { md_stack.push_back({c, n, i + n}); }
			i += n;
			continue;
		}
		++i;
	}
	std::stable_sort(spans.begin(), spans.end(), [](auto const& a, auto const& b) { return a.begin < b.begin; });
	return spans;
}

inline std::vector<Heading> headings(std::string_view s, std::vector<std::pair<std::size_t, std::size_t>> const& code) {
	std::vector<Heading> out;
	for (auto const& l : line_spans(s)) {
		if (in_ranges(code, l.begin)) { continue; }
		auto line = s.substr(l.begin, l.end - l.begin);
		std::size_t indent = 0;
		while (indent < line.size() && indent < 4 && line[indent] == ' ') { ++indent; }
		if (indent > 3) { continue; }
		line = line.substr(indent);
		while (!line.empty() && line.front() == '<') {
			auto const len = tag_length(line, 0);
			if (len == 0) { break; }
			line = trim_view(line.substr(len));
		}
		std::size_t n = 0;
		while (n < line.size() && line[n] == '#') { ++n; }
		if (n == 0 || n > 6 || (n < line.size() && line[n] != ' ' && line[n] != '\t')) { continue; }
		auto body = trim_view(line.substr(n));
		while (!body.empty() && body.back() == '#') { body.remove_suffix(1); }
		auto text = normalize_text(body);
		if (!text.empty()) { out.push_back({static_cast<int>(n), std::move(text), l.begin}); }
	}
	std::size_t from = 0;
	while (auto t = html::next_tag(s, from)) {
		from = t->end();
		if (t->closing || t->name.size() != 2 || t->name[0] != 'h' || t->name[1] < '1' || t->name[1] > '6' || in_ranges(code, t->pos)) {
			continue;
		}
		std::size_t close = 0;
		auto const end = html::matching_end(s, *t, &close);
		if (end == std::string_view::npos) { continue; }
		auto text = normalize_text(s.substr(t->end(), close - t->end()));
		if (!text.empty()) { out.push_back({t->name[1] - '0', std::move(text), t->pos}); }
		from = end;
	}
	std::stable_sort(out.begin(), out.end(), [](auto const& a, auto const& b) { return a.offset < b.offset; });
	return out;
}

/// Inner text of `$$..$$`, `$..$`, `\(..\)`, `\[..\]` and equation environments.
inline std::vector<std::string> latex_spans(std::string_view s, std::vector<std::pair<std::size_t, std::size_t>> const& code) {
	std::vector<std::string> out;
	std::size_t i = 0;
	while (i < s.size()) {
		if (in_ranges(code, i)) {
			++i;
			continue;
		}
		if (s[i] == '\\' && i + 1 < s.size() && (s[i + 1] == '(' || s[i + 1] == '[')) {
			auto const closer = s[i + 1] == '(' ? std::string_view("\\)") : std::string_view("\\]");
			auto const close = s.find(closer, i + 2);
			if (close != std::string_view::npos) {
				out.emplace_back(s.substr(i + 2, close - i - 2));
				i = close + 2;
				continue;
			}
		}
		if (s.substr(i).starts_with("\\begin{")) {
			auto const name_end = s.find('}', i + 7);
			if (name_end != std::string_view::npos) {
				auto const env = s.substr(i + 7, name_end - i - 7);
				auto const closer = "\\end{" + std::string(env) + "}";
				auto const close = s.find(closer, name_end + 1);
				if (close != std::string_view::npos) {
					out.emplace_back(s.substr(name_end + 1, close - name_end - 1));
					i = close + closer.size();
					continue;
				}
			}
		}
		if (s[i] == '\\' && i + 1 < s.size()) {
			i += 2;
			continue;
		}
		if (s[i] == '$') {
			if (i + 1 < s.size() && s[i + 1] == '$') {
				auto const close = s.find("$$", i + 2);
				if (close != std::string_view::npos) {
					out.emplace_back(s.substr(i + 2, close - i - 2));
					i = close + 2;
					continue;
				}
			} else if (!byte_is_space(s, i + 1)) {
				// inline math: closing `$` not preceded by a space and not followed by a digit (currency)
				std::size_t j = i + 1;
				std::optional<std::size_t> close;
				while (j < s.size() && s[j] != '\n') {
					if (s[j] == '\\') {
						j += 2;
						continue;
					}
					if (s[j] == '$' && !is_ascii_space(s[j - 1]) && !(j + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[j + 1])))) {
						close = j;
						break;
					}
					++j;
				}
				if (close) {
					out.emplace_back(s.substr(i + 1, *close - i - 1));
					i = *close + 1;
					continue;
				}
			}
		}
		++i;
	}
	return out;
}

inline std::optional<std::array<double, 4>> parse_number_list(std::string_view v) {
	std::array<double, 4> out{};
	std::size_t n = 0;
	std::size_t i = 0;
	while (i < v.size()) {
		char const c = v[i];
		if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '.' || c == '+') {
			double x = 0.0;
			auto const* first = v.data() + i + (c == '+' ? 1 : 0);
			auto [ptr, ec] = std::from_chars(first, v.data() + v.size(), x);
			if (ec != std::errc()) { return std::nullopt; }
			if (n == 4) { return std::nullopt; }
			out[n++] = x;
			i = static_cast<std::size_t>(ptr - v.data());
		} else {
			++i;
		}
	}
	if (n != 4) { return std::nullopt; }
	return out;
}

/// Orders coordinates, scales to [0,1] and clamps, recording a warning when clamping was needed.
inline Box finish_box(std::array<double, 4> v, double sx, double sy, bool y_first, std::vector<std::string>& warnings, std::string const& where) {
	if (y_first) { v = {v[1], v[0], v[3], v[2]}; }
	Box b{std::min(v[0], v[2]) / sx, std::min(v[1], v[3]) / sy, std::max(v[0], v[2]) / sx, std::max(v[1], v[3]) / sy};
	auto clamp01 = [](double x) { return std::clamp(x, 0.0, 1.0); };
	Box const c{clamp01(b.x1), clamp01(b.y1), clamp01(b.x2), clamp01(b.y2)};
	if (!(c == b)) { warnings.push_back(where + ": box outside the page clamped"); }
	return c;
}

inline std::optional<double> meta_number(std::map<std::string, std::string> const& meta, char const* key) {
	auto it = meta.find(key);
	if (it == meta.end()) { return std::nullopt; }
	try {
		double const d = std::stod(it->second);
		if (d > 0.0) { return d; }
	} catch (std::exception const&) {}
	return std::nullopt;
}

inline Block make_block(std::string raw, std::string provider_label, LabelMap const& labels) {
	Block b;
	b.provider_label = std::move(provider_label);
	b.label = b.provider_label.empty() ? Label::unmapped : labels.collapse(b.provider_label);
	b.text = normalize_text(raw);
	b.tokens = split_tokens(unicode::lower(b.text));
	b.raw = std::move(raw);
	return b;
}

} // namespace detail

/// Layout blocks of a prediction. Markup blocks are `<div data-bbox="[x1, y1, x2, y2]"
/// data-label="...">` wrappers in 0-1000 coordinates; structured records use per-mille
/// coordinates unless provider_meta declares page_width/page_height (pixels) or
/// bbox_units=normalized.
inline std::vector<Block> parse_layout_blocks(RawPrediction const& pred, DocumentOptions const& options, std::vector<std::string>* warnings = nullptr) {
	std::vector<Block> blocks;
	std::vector<std::string> local;
	auto& warn = warnings != nullptr ? *warnings : local;
	if (pred.kind == PayloadKind::structured) {
		double sx = 1000.0;
		double sy = 1000.0;
		auto const w = detail::meta_number(pred.provider_meta, "page_width");
		auto const h = detail::meta_number(pred.provider_meta, "page_height");
		if (w && h) {
			sx = *w;
			sy = *h;
		}
		if (auto it = pred.provider_meta.find("bbox_units"); it != pred.provider_meta.end() && it->second == "normalized") { sx = sy = 1.0; }
		for (std::size_t i = 0; i < pred.records.size(); ++i) {
			auto const& r = pred.records[i];
			auto b = detail::make_block(r.content, r.label, options.labels);
			if (r.bbox) { b.box = detail::finish_box(*r.bbox, sx, sy, options.y_first, warn, "record " + std::to_string(i)); }
			b.confidence = r.confidence;
			blocks.push_back(std::move(b));
		}
		return blocks;
	}

	std::string_view const s = pred.markup;
	std::size_t from = 0;
	while (auto t = html::next_tag(s, from)) {
		from = t->end();
		if (t->closing || t->name != "div") { continue; }
		auto const attrs = html::attributes(s.substr(t->pos, t->len));
		auto const bbox = attrs.find("data-bbox");
		auto const label = attrs.find("data-label");
		if (bbox == attrs.end() && label == attrs.end()) { continue; }
		std::size_t close = 0;
		auto const end = html::matching_end(s, *t, &close);
		std::string inner(end == std::string_view::npos ? s.substr(t->end()) : s.substr(t->end(), close - t->end()));
		auto b = detail::make_block(std::move(inner), label == attrs.end() ? "" : label->second, options.labels);
		if (bbox != attrs.end()) {
			if (auto v = detail::parse_number_list(bbox->second)) {
				b.box = detail::finish_box(*v, 1000.0, 1000.0, options.y_first, warn, "block at offset " + std::to_string(t->pos));
			} else {
				warn.push_back("block at offset " + std::to_string(t->pos) + ": unreadable data-bbox");
			}
		}
		blocks.push_back(std::move(b));
		if (end != std::string_view::npos) { from = end; }
	}
	return blocks;
}

/// Normalizes one raw prediction into text, tables, layout blocks and formatting structure.
inline ParsedDocument build_document(RawPrediction const& pred, DocumentOptions const& options = {}) {
	ParsedDocument doc;
	doc.page_id = pred.page_id;
	doc.blocks = parse_layout_blocks(pred, options, &doc.warnings);
	if (pred.kind == PayloadKind::structured) {
		for (auto const& r : pred.records) {
			if (r.content.empty()) { continue; }
			if (!doc.markup.empty()) { doc.markup += "\n\n"; }
			doc.markup += r.content;
		}
	} else {
		doc.markup = pred.markup;
	}
	std::string_view const s = doc.markup;
	doc.normalized_text = normalize_text(s);
	doc.tokens = split_tokens(doc.normalized_text);
	doc.tables = extract_tables(s, &doc.warnings);
	auto const code = detail::code_ranges(s, &doc.code_blocks);
	doc.styling_spans = detail::styling_spans(s, code);
	doc.headings = detail::headings(s, code);
	doc.latex_spans = detail::latex_spans(s, code);
	return doc;
}

} // namespace docscore
