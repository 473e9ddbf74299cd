// docscore test fixtures: grid builders, layout helpers and a synthetic dataset generator.
#pragma once

#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "docscore/docscore.hpp"

namespace fixtures {

using namespace docscore;

inline std::filesystem::path temp_dir(std::string const& name) {
	auto const dir = std::filesystem::path(DOCSCORE_TEST_TMP) / name;
	std::filesystem::remove_all(dir);
	std::filesystem::create_directories(dir);
	return dir;
}

inline void write_text(std::filesystem::path const& path, std::string const& body) {
	std::ofstream out(path, std::ios::binary);
	out << body;
}

/// Grid from rows of cell text; the first `header_rows` rows are header rows.
inline Grid make_grid(std::vector<std::vector<std::string>> const& rows, int header_rows = 1) {
	RawTable t;
	for (std::size_t r = 0; r < rows.size(); ++r) {
		RawRow row;
		row.in_header_section = static_cast<int>(r) < header_rows;
		for (auto const& text : rows[r]) { row.cells.push_back({text, row.in_header_section, 1, 1}); }
		t.rows.push_back(std::move(row));
	}
	return expand_grid(t);
}

inline std::string to_html(std::vector<std::vector<std::string>> const& rows, int header_rows = 1) {
	std::string h = "<table>";
	for (std::size_t r = 0; r < rows.size(); ++r) {
		bool const head = static_cast<int>(r) < header_rows;
		h += "<tr>";
		for (auto const& c : rows[r]) { h += (head ? "<th>" : "<td>") + c + (head ? "</th>" : "</td>"); }
		h += "</tr>";
	}
	return h + "</table>";
}

inline std::string to_pipe(std::vector<std::vector<std::string>> const& rows) {
	std::string s;
	for (std::size_t r = 0; r < rows.size(); ++r) {
		s += "|";
		for (auto const& c : rows[r]) { s += " " + c + " |"; }
		s += "\n";
		if (r == 0) {
			s += "|";
			for (std::size_t c = 0; c < rows[r].size(); ++c) { s += "---|"; }
			s += "\n";
		}
	}
	return s;
}

inline LayoutElement element(Box b, Label l, std::optional<std::string> content = std::nullopt, std::optional<int> order = std::nullopt, ElementFlags flags = {}) {
	LayoutElement e;
	e.box = b;
	e.label = l;
	e.content = std::move(content);
	e.order_index = order;
	e.flags = flags;
	return e;
}

inline Block block(std::optional<Box> b, Label l, std::string const& text = "", std::optional<double> confidence = std::nullopt) {
	Block k;
	k.box = b;
	k.label = l;
	k.provider_label = std::string(to_string(l));
	k.raw = text;
	k.text = normalize_text(text);
	k.tokens = comparison_tokens(text);
	k.confidence = confidence;
	return k;
}

inline TestRule rule(RuleType t, RulePayload p) { return TestRule{t, std::move(p), default_category(t)}; }

inline TestRule text_rule(RuleType t, std::string text) {
	RulePayload p;
	p.text = std::move(text);
	return rule(t, p);
}

inline TestRule order_rule(std::string before, std::string after) {
	RulePayload p;
	p.before = std::move(before);
	p.after = std::move(after);
	return rule(RuleType::order, p);
}

inline RawPrediction markup_prediction(std::string page_id, std::string markup) {
	RawPrediction p;
	p.page_id = std::move(page_id);
	p.kind = PayloadKind::markup;
	p.markup = std::move(markup);
	return p;
}

inline ParsedDocument doc_of(std::string markup) { return build_document(markup_prediction("p", std::move(markup))); }

struct SyntheticData {
	std::vector<GroundTruthPage> pages;
	std::map<std::string, RawPrediction> predictions;
};

namespace detail_gen {

inline std::string word(std::mt19937& rng) {
	static constexpr char const* words[] = {"revenue", "margin", "north", "south", "growth", "cost", "total", "region", "quarter", "annual",
											"budget", "forecast", "actual", "units", "price", "market", "share", "index", "yield", "rate"};
	return words[std::uniform_int_distribution<std::size_t>(0, std::size(words) - 1)(rng)];
}

inline std::string sentence(std::mt19937& rng, int n) {
	std::string s;
	for (int i = 0; i < n; ++i) { s += (i ? " " : "") + word(rng); }
	s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
	return s + ".";
}

inline std::vector<std::vector<std::string>> random_table(std::mt19937& rng, int rows, int cols) {
	std::vector<std::vector<std::string>> t(static_cast<std::size_t>(rows));
	for (int c = 0; c < cols; ++c) { t[0].push_back(word(rng) + std::to_string(c)); }
	for (int r = 1; r < rows; ++r) {
		t[static_cast<std::size_t>(r)].push_back(word(rng) + std::to_string(r));
		for (int c = 1; c < cols; ++c) { t[static_cast<std::size_t>(r)].push_back(std::to_string(std::uniform_int_distribution<int>(1, 999)(rng))); }
	}
	return t;
}

} // namespace detail_gen

/// Deterministic mixed-dimension dataset with imperfect predictions for every page.
inline SyntheticData synthetic_dataset(std::size_t n_pages, unsigned seed = 7) {
	using namespace detail_gen;
	std::mt19937 rng(seed);
	SyntheticData d;
	auto coin = [&](double p) { return std::bernoulli_distribution(p)(rng); };
	for (std::size_t i = 0; i < n_pages; ++i) {
		GroundTruthPage page;
		char id[32];
		std::snprintf(id, sizeof id, "page_%03zu", i);
		page.page_id = id;
		page.source_asset = "docs/" + page.page_id + ".pdf";
		std::string markup;
		RawPrediction pred;
		pred.page_id = page.page_id;
		pred.provider_meta["provider"] = "synthetic";
		switch (i % 4) {
		case 0: {
			page.dimension = Dimension::tables;
			auto t = random_table(rng, std::uniform_int_distribution<int>(3, 6)(rng), std::uniform_int_distribution<int>(2, 5)(rng));
			page.tables.push_back({to_html(t), coin(0.1), std::nullopt});
			auto p = t;
			if (coin(0.5)) { p[1][1] = "x"; }
			if (coin(0.3) && p.size() > 2) { std::swap(p[1], p[2]); }
			markup = "Intro text.\n\n" + to_pipe(p);
			break;
		}
		case 1: {
			page.dimension = Dimension::charts;
			auto t = random_table(rng, 4, 3);
			for (int k = 0; k < 3; ++k) {
				auto const r = static_cast<std::size_t>(1 + k);
				page.data_points.push_back({{t[r][0], t[0][1]}, std::stod(t[r][1]), 0.05});
			}
			auto p = t;
			if (coin(0.5)) { p[2][1] = "0"; }
			markup = "**Figure " + std::to_string(i) + ": chart**\n\n" + to_pipe(p);
			break;
		}
		case 2: {
			page.dimension = Dimension::text;
			std::vector<std::string> sentences;
			for (int k = 0; k < 4; ++k) { sentences.push_back(sentence(rng, 5)); }
			std::string body;
			for (auto const& s : sentences) { body += (body.empty() ? "" : " ") + s; }
			page.rules.push_back(text_rule(RuleType::present, sentences[0]));
			page.rules.push_back(text_rule(RuleType::absent, "lorem ipsum"));
			RulePayload ms;
			ms.sentences = {sentences[1], sentences[2]};
			page.rules.push_back(rule(RuleType::missing_sentence, ms));
			page.rules.push_back(order_rule(sentences[0], sentences[3]));
			page.rules.push_back(text_rule(RuleType::is_bold, "Key"));
			page.rules.push_back(text_rule(RuleType::is_not_bold, sentences[1]));
			page.rules.push_back(text_rule(RuleType::is_title, "Section " + std::to_string(i)));
			page.attributes["reference_text"] = body;
			auto out = sentences;
			if (coin(0.4)) { std::swap(out[0], out[3]); }
			if (coin(0.3)) { out[2] = sentence(rng, 5); }
			markup = "# Section " + std::to_string(i) + "\n\n" + (coin(0.7) ? "**Key** " : "Key ");
			for (auto const& s : out) { markup += s + " "; }
			break;
		}
		default: {
			page.dimension = Dimension::layout;
			page.attributes["page_width"] = "612";
			page.attributes["page_height"] = "792";
			page.attributes["buggy_native_text"] = "false";
			page.attributes["native_text_unusual_punctuation_count"] = "3";
			pred.kind = PayloadKind::structured;
			int order = 0;
			page.elements.push_back(element({0.1, 0.02, 0.9, 0.05}, Label::page_header, "annual report", order++));
			int const n = std::uniform_int_distribution<int>(3, 9)(rng);
			for (int k = 0; k < n; ++k) {
				double const y = 0.08 + 0.09 * k;
				Label const l = k % 4 == 3 ? Label::picture : Label::text;
				std::optional<std::string> content;
				if (l == Label::text) { content = sentence(rng, 6); }
				page.elements.push_back(element({0.1, y, 0.9, y + 0.07}, l, content, order++));
			}
			page.elements.push_back(element({0.45, 0.95, 0.55, 0.98}, Label::page_footer, std::to_string(i), order++));
			for (auto const& e : page.elements) {
				if (coin(0.1)) { continue; }
				PredictionRecord r;
				double const j = std::uniform_real_distribution<double>(-0.01, 0.01)(rng);
				r.bbox = std::array<double, 4>{(e.box.x1 + j) * 1000, e.box.y1 * 1000, (e.box.x2 + j) * 1000, e.box.y2 * 1000};
				r.label = coin(0.1) ? "Caption" : std::string(to_string(e.label));
				r.content = e.content.value_or("");
				if (coin(0.2) && !r.content.empty()) { r.content += " extra words here"; }
				pred.records.push_back(std::move(r));
			}
			break;
		}
		}
		if (pred.kind == PayloadKind::markup) { pred.markup = markup; }
		d.predictions.emplace(page.page_id, std::move(pred));
		d.pages.push_back(std::move(page));
	}
	return d;
}

inline Json prediction_to_json(RawPrediction const& p) {
	Json j;
	j["page_id"] = p.page_id;
	j["provider_meta"] = p.provider_meta;
	if (p.kind == PayloadKind::markup) {
		j["markdown"] = p.markup;
	} else {
		j["elements"] = Json::array();
		for (auto const& r : p.records) {
			Json e;
			if (r.bbox) { e["bbox"] = *r.bbox; }
			e["label"] = r.label;
			e["text"] = r.content;
			if (r.confidence) { e["confidence"] = *r.confidence; }
			j["elements"].push_back(std::move(e));
		}
	}
	return j;
}

/// Writes dataset.jsonl and one prediction file per page under `dir`.
inline void write_synthetic(SyntheticData const& d, std::filesystem::path const& dir) {
	std::filesystem::create_directories(dir / "gt");
	std::filesystem::create_directories(dir / "pred");
	save_dataset(d.pages, dir / "gt" / "dataset.jsonl");
	for (auto const& [id, p] : d.predictions) { write_text(dir / "pred" / (id + ".json"), prediction_to_json(p).dump()); }
}

} // namespace fixtures

namespace fixtures {

/// Two column groups under spanning headers; `swapped` relabels the groups without moving data.
inline std::string two_group_table(bool swapped) {
	std::string const g1 = swapped ? "Budget" : "Actual", g2 = swapped ? "Actual" : "Budget";
	return "<table><thead><tr><th rowspan=2>Region</th><th colspan=2>" + g1 + "</th><th colspan=2>" + g2 +
		   "</th></tr><tr><th>2022</th><th>2023</th><th>2022</th><th>2023</th></tr></thead><tbody>"
		   "<tr><td>North</td><td>11</td><td>12</td><td>13</td><td>14</td></tr>"
		   "<tr><td>South</td><td>21</td><td>22</td><td>23</td><td>24</td></tr>"
		   "<tr><td>East</td><td>31</td><td>32</td><td>33</td><td>34</td></tr>"
		   "<tr><td>West</td><td>41</td><td>42</td><td>43</td><td>44</td></tr></tbody></table>";
}

/// Random table with a header row and distinct-ish cell values drawn from a small pool.
inline std::vector<std::vector<std::string>> random_cells(std::mt19937& rng, int rows, int cols, int pool) {
	std::vector<std::vector<std::string>> t(static_cast<std::size_t>(rows), std::vector<std::string>(static_cast<std::size_t>(cols)));
	for (int c = 0; c < cols; ++c) { t[0][static_cast<std::size_t>(c)] = "h" + std::to_string(c); }
	for (int r = 1; r < rows; ++r) {
		for (int c = 0; c < cols; ++c) { t[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = "v" + std::to_string(std::uniform_int_distribution<int>(0, pool - 1)(rng)); }
	}
	return t;
}

} // namespace fixtures

namespace fixtures {

struct LayoutCase {
	std::vector<LayoutElement> elements;
	std::vector<Block> preds;
};

/// `n` text elements on a grid; the first `passing` get an exact prediction, the rest none.
inline LayoutCase grid_layout(std::size_t n, std::size_t passing) {
	LayoutCase c;
	std::size_t const cols = 4;
	std::size_t const rows = (n + cols - 1) / cols;
	for (std::size_t i = 0; i < n; ++i) {
		double const x = static_cast<double>(i % cols) / cols, y = static_cast<double>(i / cols) / static_cast<double>(rows);
		Box const b{x + 0.01, y + 0.01, x + 1.0 / cols - 0.01, y + 1.0 / static_cast<double>(rows) - 0.01};
		auto const text = "element " + std::to_string(i) + " body text";
		c.elements.push_back(element(b, Label::text, text, static_cast<int>(i)));
		if (i < passing) { c.preds.push_back(block(b, Label::text, text)); }
	}
	return c;
}

/// Two stacked paragraphs recovered by one merged prediction.
inline LayoutCase merged_layout() {
	LayoutCase c;
	c.elements.push_back(element({0.1, 0.1, 0.9, 0.2}, Label::text, "alpha beta gamma", 0));
	c.elements.push_back(element({0.1, 0.2, 0.9, 0.3}, Label::text, "delta epsilon zeta", 1));
	c.preds.push_back(block(Box{0.1, 0.1, 0.9, 0.3}, Label::text, "alpha beta gamma delta epsilon zeta"));
	return c;
}

/// One paragraph whose prediction doubles its tokens with fabricated words.
inline LayoutCase hallucinated_layout() {
	LayoutCase c;
	c.elements.push_back(element({0.1, 0.1, 0.9, 0.2}, Label::text, "alpha beta gamma delta", 0));
	c.preds.push_back(block(Box{0.1, 0.1, 0.9, 0.2}, Label::text, "alpha beta gamma delta omega sigma kappa lambda"));
	return c;
}

} // namespace fixtures
