// docscore: document-parser evaluation toolkit
// Requirements: C++20

#pragma once

#include <algorithm>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "html.hpp"
#include "text.hpp"

namespace docscore {

struct Cell {
	std::string text;
	bool is_header{};
	std::pair<int, int> origin{0, 0}; // (row, col) of the source cell
	std::pair<int, int> span{1, 1};	  // (rows, cols) of the source cell
};

/// Rectangular cell matrix after span expansion. Spanned cells are replicated into every
/// covered position and share their origin.
struct Grid {
	std::vector<std::vector<Cell>> cells;
	int n_rows{};
	int n_cols{};
	std::vector<bool> header_row_flags;
	/// Surrounding text used to locate the table (headings, captions near it).
	std::string context;

	Cell const& at(int r, int c) const { return cells[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]; }
	bool is_header_row(int r) const { return header_row_flags[static_cast<std::size_t>(r)]; }
	int header_rows() const { return static_cast<int>(std::count(header_row_flags.begin(), header_row_flags.end(), true)); }
	bool empty() const { return n_rows == 0 || n_cols == 0; }
};

/// Table as written in the source, before span expansion.
struct RawCell {
	std::string text;
	bool is_header{};
	int rowspan{1};
	int colspan{1};
};

struct RawRow {
	std::vector<RawCell> cells;
	bool in_header_section{};
};

struct RawTable {
	std::vector<RawRow> rows;
	std::string caption;
};

/// Span expansion. Ragged rows are padded with empty cells; overlapping spans keep the
/// first writer. A row is a header row when it sits in a header section or every source
/// cell occupying it is header-tagged.
inline Grid expand_grid(RawTable const& table, std::vector<std::string>* warnings = nullptr) {
	Grid g;
	int const n_rows = static_cast<int>(table.rows.size());
	std::vector<std::vector<int>> owner; // index into placed, -1 when free
	std::vector<Cell> placed;
	auto ensure_cols = [&](int cols) {
		for (auto& row : owner) {
			if (static_cast<int>(row.size()) < cols) { row.resize(static_cast<std::size_t>(cols), -1); }
		}
	};
	owner.assign(static_cast<std::size_t>(n_rows), {});
	int width = 0;
	bool overlap_warned = false;
	for (int r = 0; r < n_rows; ++r) {
		int c = 0;
		for (auto const& raw : table.rows[static_cast<std::size_t>(r)].cells) {
			auto& row = owner[static_cast<std::size_t>(r)];
			while (c < static_cast<int>(row.size()) && row[static_cast<std::size_t>(c)] != -1) { ++c; }
			int const rs = std::clamp(raw.rowspan, 1, n_rows - r);
			int const cs = std::max(1, raw.colspan);
			width = std::max(width, c + cs);
			ensure_cols(width);
			int const id = static_cast<int>(placed.size());
			placed.push_back(Cell{raw.text, raw.is_header, {r, c}, {rs, cs}});
			for (int dr = 0; dr < rs; ++dr) {
				for (int dc = 0; dc < cs; ++dc) {
					auto& slot = owner[static_cast<std::size_t>(r + dr)][static_cast<std::size_t>(c + dc)];
					if (slot == -1) {
						slot = id;
					} else if (!overlap_warned && warnings != nullptr) {
						warnings->push_back("overlapping cell spans at row " + std::to_string(r + dr) + ", column " +
											std::to_string(c + dc) + "; first writer kept");
						overlap_warned = true;
					}
				}
			}
			c += cs;
		}
	}
	ensure_cols(width);

	g.n_rows = n_rows;
	g.n_cols = width;
	g.cells.assign(static_cast<std::size_t>(n_rows), std::vector<Cell>(static_cast<std::size_t>(width)));
	g.header_row_flags.assign(static_cast<std::size_t>(n_rows), false);
	for (int r = 0; r < n_rows; ++r) {
		bool any = false;
		bool all_header = true;
		for (int c = 0; c < width; ++c) {
			int const id = owner[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
			auto& cell = g.cells[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
			if (id == -1) {
				cell = Cell{"", false, {r, c}, {1, 1}};
				continue;
			}
			cell = placed[static_cast<std::size_t>(id)];
			any = true;
			all_header = all_header && cell.is_header;
		}
		g.header_row_flags[static_cast<std::size_t>(r)] = table.rows[static_cast<std::size_t>(r)].in_header_section || (any && all_header);
	}
	if (g.n_cols == 0) { g.n_rows = 0; }
	return g;
}

namespace detail {

inline int span_attr(std::map<std::string, std::string> const& attrs, char const* name) {
	auto it = attrs.find(name);
	if (it == attrs.end()) { return 1; }
	int const v = std::atoi(it->second.c_str());
	return std::clamp(v, 1, 1000);
}

/// Parses the HTML table whose start tag is `open`; `end` is one past its end tag.
inline RawTable parse_html_table(std::string_view s, html::Tag const& open, std::size_t end) {
	RawTable table;
	bool in_head = false;
	bool row_open = false;
	std::optional<std::size_t> cell_start;
	RawCell pending;

	auto close_cell = [&](std::size_t at) {
		if (!cell_start) { return; }
		pending.text = normalize_text(s.substr(*cell_start, at - *cell_start));
		if (!row_open) {
			table.rows.push_back(RawRow{{}, in_head});
			row_open = true;
		}
		table.rows.back().cells.push_back(std::move(pending));
		pending = RawCell{};
		cell_start.reset();
	};

	auto from = open.end();
	while (auto t = html::next_tag(s, from)) {
		if (t->pos >= end) { break; }
		from = t->end();
		if (t->name == "table") {
			if (t->closing) {
				close_cell(t->pos);
				break;
			}
			// nested table stays inside the current cell text
			auto const nested_end = html::matching_end(s, *t);
			if (nested_end == std::string_view::npos || nested_end > end) { break; }
			from = nested_end;
			continue;
		}
		if (t->name == "caption") {
			if (!t->closing) {
				std::size_t close_pos = 0;
				auto const cap_end = html::matching_end(s, *t, &close_pos);
				if (cap_end != std::string_view::npos && cap_end <= end) {
					table.caption = normalize_text(s.substr(t->end(), close_pos - t->end()));
					from = cap_end;
				}
			}
			continue;
		}
		if (t->name == "thead") {
			close_cell(t->pos);
			in_head = !t->closing;
			continue;
		}
		if (t->name == "tbody" || t->name == "tfoot") {
			close_cell(t->pos);
			in_head = false;
			continue;
		}
		if (t->name == "tr") {
			close_cell(t->pos);
			if (!t->closing) {
				table.rows.push_back(RawRow{{}, in_head});
				row_open = true;
			} else {
				row_open = false;
			}
			continue;
		}
		if (t->name == "td" || t->name == "th") {
			close_cell(t->pos);
			if (!t->closing) {
				auto const attrs = html::attributes(s.substr(t->pos, t->len));
				pending.is_header = t->name == "th";
				pending.colspan = span_attr(attrs, "colspan");
				pending.rowspan = span_attr(attrs, "rowspan");
				cell_start = t->end();
			}
			continue;
		}
	}
	return table;
}

inline std::vector<std::string> split_pipe_row(std::string_view line) {
	line = trim_view(line);
	std::vector<std::string> cells;
	std::string cur;
	for (std::size_t i = 0; i < line.size(); ++i) {
		if (line[i] == '\\' && i + 1 < line.size() && line[i + 1] == '|') {
			cur.push_back('|');
			++i;
		} else if (line[i] == '|') {
			cells.push_back(std::move(cur));
			cur.clear();
		} else {
			cur.push_back(line[i]);
		}
	}
	cells.push_back(std::move(cur));
	if (!line.empty() && line.front() == '|' && !cells.empty()) { cells.erase(cells.begin()); }
	if (!line.empty() && line.back() == '|' && !cells.empty()) { cells.pop_back(); }
	return cells;
}

struct LineSpan {
	std::size_t begin;
	std::size_t end; // exclusive, excluding '\n'
};

inline std::vector<LineSpan> line_spans(std::string_view s) {
	std::vector<LineSpan> out;
	std::size_t start = 0;
	for (std::size_t i = 0; i <= s.size(); ++i) {
		if (i == s.size() || s[i] == '\n') {
			out.push_back({start, i});
			start = i + 1;
		}
	}
	return out;
}

inline bool is_heading_line(std::string_view line) {
	line = trim_view(line);
	if (line.starts_with("#")) {
		std::size_t n = 0;
		while (n < line.size() && line[n] == '#') { ++n; }
		return n <= 6 && (n == line.size() || line[n] == ' ');
	}
	auto const lower = to_lower_ascii(line.substr(0, 4));
	return lower.size() == 4 && lower[0] == '<' && lower[1] == 'h' && lower[2] >= '1' && lower[2] <= '6';
}

inline bool is_emphasis_line(std::string_view line) {
	line = trim_view(line);
	if (line.size() < 3) { return false; }
	auto const wrapped = [&](std::string_view open, std::string_view close) {
		return line.size() > open.size() + close.size() && line.starts_with(open) && line.ends_with(close);
	};
	return wrapped("**", "**") || wrapped("__", "__") || wrapped("*", "*") || wrapped("_", "_") ||
		   wrapped("<b>", "</b>") || wrapped("<strong>", "</strong>") || wrapped("<em>", "</em>") || wrapped("<i>", "</i>");
}

inline bool is_caption_like(std::string_view line) {
	auto const text = normalize_text(line);
	if (text.empty()) { return false; }
	auto const lower = to_lower_ascii(text);
	static constexpr std::string_view prefixes[] = {"figure", "fig.", "chart", "table", "graph", "source", "note", "exhibit"};
	for (auto p : prefixes) {
		if (lower.starts_with(p)) { return true; }
	}
	auto const t = trim_view(line);
	return t.find("data-label=\"Caption\"") != std::string_view::npos || t.find("<figcaption") != std::string_view::npos ||
		   is_emphasis_line(line);
}

struct TableRange {
	std::size_t begin;
	std::size_t end;
	RawTable raw;
};

} // namespace detail

/// Finds every HTML and pipe-markdown table in `markup`, expands spans and records per-table
/// context: the nearest preceding heading or emphasized line, plus caption-like lines within
/// three non-empty lines of the table. Malformed tables are skipped with a warning.
inline std::vector<Grid> extract_tables(std::string_view markup, std::vector<std::string>* warnings = nullptr) {
	std::vector<detail::TableRange> ranges;

	std::size_t from = 0;
	while (auto t = html::next_tag(markup, from)) {
		if (t->name != "table" || t->closing) {
			from = t->end();
			continue;
		}
		auto const end = html::matching_end(markup, *t);
		if (end == std::string_view::npos) {
			if (warnings != nullptr) { warnings->push_back("unterminated <table> at offset " + std::to_string(t->pos) + " skipped"); }
			from = t->end();
			continue;
		}
		auto raw = detail::parse_html_table(markup, *t, end);
		if (raw.rows.empty()) {
			if (warnings != nullptr) { warnings->push_back("table without rows at offset " + std::to_string(t->pos) + " skipped"); }
		} else {
			ranges.push_back({t->pos, end, std::move(raw)});
		}
		from = end;
	}

	auto const lines = detail::line_spans(markup);
	auto const inside_html_table = [&](std::size_t offset) {
		return std::any_of(ranges.begin(), ranges.end(), [&](auto const& r) { return offset >= r.begin && offset < r.end; });
	};
	for (std::size_t i = 0; i + 1 < lines.size(); ++i) {
		auto const line = markup.substr(lines[i].begin, lines[i].end - lines[i].begin);
		auto const next = markup.substr(lines[i + 1].begin, lines[i + 1].end - lines[i + 1].begin);
		if (line.find('|') == std::string_view::npos || !detail::is_table_separator_line(next) || inside_html_table(lines[i].begin)) {
			continue;
		}
		RawTable raw;
		RawRow header;
		header.in_header_section = true;
		for (auto& text : detail::split_pipe_row(line)) { header.cells.push_back(RawCell{normalize_text(text), true, 1, 1}); }
		raw.rows.push_back(std::move(header));
		std::size_t j = i + 2;
		for (; j < lines.size(); ++j) {
			auto const body = markup.substr(lines[j].begin, lines[j].end - lines[j].begin);
			if (detail::trim_view(body).empty() || body.find('|') == std::string_view::npos) { break; }
			RawRow row;
			for (auto& text : detail::split_pipe_row(body)) { row.cells.push_back(RawCell{normalize_text(text), false, 1, 1}); }
			raw.rows.push_back(std::move(row));
		}
		auto const end = j < lines.size() ? lines[j].begin : markup.size();
		ranges.push_back({lines[i].begin, std::min(end, markup.size()), std::move(raw)});
		i = j - 1;
	}
	std::stable_sort(ranges.begin(), ranges.end(), [](auto const& a, auto const& b) { return a.begin < b.begin; });

	auto const in_any_table = [&](detail::LineSpan const& l) {
		return std::any_of(ranges.begin(), ranges.end(), [&](auto const& r) { return l.begin < r.end && l.end > r.begin; });
	};

	std::vector<Grid> out;
	for (auto const& range : ranges) {
		auto grid = expand_grid(range.raw, warnings);
		if (grid.empty()) {
			if (warnings != nullptr) { warnings->push_back("empty table at offset " + std::to_string(range.begin) + " skipped"); }
			continue;
		}
		std::vector<std::string> context;
		if (!range.raw.caption.empty()) { context.push_back(range.raw.caption); }
		// lines strictly before and after the table
		std::vector<std::size_t> before, after;
		for (std::size_t i = 0; i < lines.size(); ++i) {
			if (in_any_table(lines[i]) || detail::trim_view(markup.substr(lines[i].begin, lines[i].end - lines[i].begin)).empty()) {
				continue;
			}
			if (lines[i].end <= range.begin) { before.push_back(i); }
			if (lines[i].begin >= range.end) { after.push_back(i); }
		}
		auto text_of = [&](std::size_t i) { return markup.substr(lines[i].begin, lines[i].end - lines[i].begin); };
		for (auto it = before.rbegin(); it != before.rend(); ++it) {
			auto const line = text_of(*it);
			if (detail::is_heading_line(line) || detail::is_emphasis_line(line)) {
				context.push_back(normalize_text(line));
				break;
			}
		}
		for (std::size_t k = 0; k < 3 && k < before.size(); ++k) {
			auto const line = text_of(before[before.size() - 1 - k]);
			if (detail::is_caption_like(line)) { context.push_back(normalize_text(line)); }
		}
		for (std::size_t k = 0; k < 3 && k < after.size(); ++k) {
			auto const line = text_of(after[k]);
			if (detail::is_caption_like(line)) { context.push_back(normalize_text(line)); }
		}
		std::string joined;
		for (std::size_t k = 0; k < context.size(); ++k) {
			auto const& c = context[k];
			if (c.empty() || std::find(context.begin(), context.begin() + static_cast<std::ptrdiff_t>(k), c) != context.begin() + static_cast<std::ptrdiff_t>(k)) {
				continue;
			}
			if (!joined.empty()) { joined += " | "; }
			joined += c;
		}
		grid.context = std::move(joined);
		out.push_back(std::move(grid));
	}
	return out;
}

} // namespace docscore
