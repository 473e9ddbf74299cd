// docscore: document-parser evaluation toolkit
// Requirements: C++20

#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "grid.hpp"
#include "model.hpp"
#include "unicode.hpp"

namespace docscore {

using Json = nlohmann::ordered_json;

namespace detail {

inline std::string read_file(std::filesystem::path const& path) {
	std::ifstream in(path, std::ios::binary);
	if (!in) { throw DataError("cannot read '" + path.string() + "'"); }
	return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

inline std::string scalar_to_string(Json const& v) {
	if (v.is_string()) { return v.get<std::string>(); }
	if (v.is_null()) { return ""; }
	return v.dump();
}

inline std::string const& require_string(Json const& obj, char const* key, std::string const& page_id, std::string const& field) {
	auto it = obj.find(key);
	if (it == obj.end() || !it->is_string()) { throw DataError(page_id, field + "." + key, "expected a string"); }
	return it->get_ref<std::string const&>();
}

inline std::optional<Box> parse_box(Json const& v) {
	if (!v.is_array() || v.size() != 4) { return std::nullopt; }
	for (auto const& x : v) {
		if (!x.is_number()) { return std::nullopt; }
	}
	return Box{v[0].get<double>(), v[1].get<double>(), v[2].get<double>(), v[3].get<double>()};
}

inline Json box_to_json(Box const& b) { return Json::array({b.x1, b.y1, b.x2, b.y2}); }

inline RulePayload parse_payload(Json const& v, RuleType type, std::string const& page_id, std::string const& field) {
	RulePayload p;
	bool const sentence_rule = type == RuleType::missing_sentence || type == RuleType::unexpected_sentence;
	if (v.is_null()) { return p; }
	if (v.is_string()) {
		if (sentence_rule) {
			p.sentences.push_back(v.get<std::string>());
		} else {
			p.text = v.get<std::string>();
		}
		return p;
	}
	if (v.is_array()) {
		bool const all_strings = std::all_of(v.begin(), v.end(), [](Json const& e) { return e.is_string(); });
		bool const all_pairs = std::all_of(v.begin(), v.end(), [](Json const& e) {
			return e.is_array() && e.size() == 2 && e[0].is_string() && e[1].is_string();
		});
		if (type == RuleType::title_hierarchy_percent && all_pairs) {
			for (auto const& e : v) { p.edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>()); }
		} else if (type == RuleType::order && all_strings && v.size() == 2) {
			p.before = v[0].get<std::string>();
			p.after = v[1].get<std::string>();
		} else if (all_strings) {
			for (auto const& e : v) { p.sentences.push_back(e.get<std::string>()); }
		} else {
			throw DataError(page_id, field, "unsupported payload array");
		}
		return p;
	}
	if (!v.is_object()) { throw DataError(page_id, field, "payload must be an object, string or array"); }
	for (auto const& [key, value] : v.items()) {
		auto const sub = field + "." + key;
		if (key == "text" || key == "before" || key == "after" || key == "language") {
			if (!value.is_string()) { throw DataError(page_id, sub, "expected a string"); }
			auto const& s = value.get_ref<std::string const&>();
			(key == "text" ? p.text : key == "before" ? p.before : key == "after" ? p.after : p.language) = s;
		} else if (key == "sentences") {
			if (!value.is_array()) { throw DataError(page_id, sub, "expected an array of strings"); }
			for (auto const& e : value) {
				if (!e.is_string()) { throw DataError(page_id, sub, "expected an array of strings"); }
				p.sentences.push_back(e.get<std::string>());
			}
		} else if (key == "edges") {
			if (!value.is_array()) { throw DataError(page_id, sub, "expected an array of [parent, child] pairs"); }
			for (auto const& e : value) {
				if (e.is_array() && e.size() == 2 && e[0].is_string() && e[1].is_string()) {
					p.edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
				} else if (e.is_object() && e.contains("parent") && e.contains("child") && e["parent"].is_string() && e["child"].is_string()) {
					p.edges.emplace_back(e["parent"].get<std::string>(), e["child"].get<std::string>());
				} else {
					throw DataError(page_id, sub, "expected an array of [parent, child] pairs");
				}
			}
		} else if (key == "level") {
			if (!value.is_number_integer()) { throw DataError(page_id, sub, "expected an integer"); }
			p.level = value.get<int>();
		} else {
			throw DataError(page_id, sub, "unknown payload key");
		}
	}
	return p;
}

inline Json payload_to_json(RulePayload const& p) {
	Json j = Json::object();
	if (!p.text.empty()) { j["text"] = p.text; }
	if (!p.sentences.empty()) { j["sentences"] = p.sentences; }
	if (!p.before.empty()) { j["before"] = p.before; }
	if (!p.after.empty()) { j["after"] = p.after; }
	if (!p.edges.empty()) {
		j["edges"] = Json::array();
		for (auto const& [a, b] : p.edges) { j["edges"].push_back(Json::array({a, b})); }
	}
	if (!p.language.empty()) { j["language"] = p.language; }
	if (p.level) { j["level"] = *p.level; }
	return j;
}

enum class BoxUnits { normalized, permille, pixels };

/// Unit detection over every box of a page: values within [0,1] are already normalized;
/// otherwise declared page dimensions mean pixels, and values within [0,1000] mean per-mille.
inline BoxUnits detect_units(std::vector<Box> const& boxes, GroundTruthPage const& page) {
	if (auto declared = page.attribute("bbox_units")) {
		if (*declared == "normalized") { return BoxUnits::normalized; }
		if (*declared == "permille") { return BoxUnits::permille; }
		if (*declared == "pixels") { return BoxUnits::pixels; }
		throw DataError(page.page_id, "attributes.bbox_units", "expected normalized, permille or pixels");
	}
	double max_coord = 0.0;
	for (auto const& b : boxes) { max_coord = std::max({max_coord, b.x1, b.y1, b.x2, b.y2}); }
	if (max_coord <= 1.0) { return BoxUnits::normalized; }
	if (page.attribute("page_width") && page.attribute("page_height")) { return BoxUnits::pixels; }
	if (max_coord <= 1000.0) { return BoxUnits::permille; }
	throw DataError(page.page_id, "elements.bbox", "coordinates exceed 1000 and no page_width/page_height attributes are declared");
}

inline double attribute_number(GroundTruthPage const& page, char const* key) {
	auto v = page.attribute(key);
	if (!v) { throw DataError(page.page_id, std::string("attributes.") + key, "missing"); }
	try {
		double const d = std::stod(*v);
		if (d > 0.0) { return d; }
	} catch (std::exception const&) {}
	throw DataError(page.page_id, std::string("attributes.") + key, "expected a positive number");
}

inline Box rescale(Box b, BoxUnits units, GroundTruthPage const& page) {
	switch (units) {
	case BoxUnits::normalized: return b;
	case BoxUnits::permille: return {b.x1 / 1000.0, b.y1 / 1000.0, b.x2 / 1000.0, b.y2 / 1000.0};
	case BoxUnits::pixels: {
		double const w = attribute_number(page, "page_width");
		double const h = attribute_number(page, "page_height");
		return {b.x1 / w, b.y1 / h, b.x2 / w, b.y2 / h};
	}
	}
	return b;
}

} // namespace detail

/// Parses one page document. Boxes are converted to normalized coordinates; no invariant
/// checks beyond field types (see validate_page).
inline GroundTruthPage page_from_json(Json const& j) {
	if (!j.is_object()) { throw DataError("page document must be a JSON object"); }
	GroundTruthPage page;
	if (!j.contains("page_id") || !j["page_id"].is_string() || j["page_id"].get<std::string>().empty()) {
		throw DataError("page document without a non-empty string 'page_id'");
	}
	page.page_id = j["page_id"].get<std::string>();
	auto const& id = page.page_id;

	static std::set<std::string> const known = {"page_id", "dimension", "source_asset", "rules", "tables", "data_points", "elements", "attributes"};
	for (auto const& [key, value] : j.items()) {
		if (!known.contains(key)) { throw DataError(id, key, "unknown field"); }
	}

	auto const dim = enum_parse(dimension_names, detail::require_string(j, "dimension", id, "page"));
	if (!dim) { throw DataError(id, "dimension", "expected one of tables, charts, text, layout"); }
	page.dimension = *dim;
	if (j.contains("source_asset")) {
		if (!j["source_asset"].is_string()) { throw DataError(id, "source_asset", "expected a string"); }
		page.source_asset = j["source_asset"].get<std::string>();
	}

	if (j.contains("attributes")) {
		if (!j["attributes"].is_object()) { throw DataError(id, "attributes", "expected an object"); }
		for (auto const& [key, value] : j["attributes"].items()) { page.attributes[key] = detail::scalar_to_string(value); }
	}

	auto array_field = [&](char const* key) -> Json const* {
		if (!j.contains(key) || j[key].is_null()) { return nullptr; }
		if (!j[key].is_array()) { throw DataError(id, key, "expected an array"); }
		return &j[key];
	};

	if (auto rules = array_field("rules")) {
		for (std::size_t i = 0; i < rules->size(); ++i) {
			auto const& r = (*rules)[i];
			auto const field = "rules[" + std::to_string(i) + "]";
			if (!r.is_object()) { throw DataError(id, field, "expected an object"); }
			auto const type = enum_parse(rule_type_names, detail::require_string(r, "type", id, field));
			if (!type) { throw DataError(id, field + ".type", "unknown rule type '" + r["type"].get<std::string>() + "'"); }
			TestRule rule;
			rule.type = *type;
			rule.category = default_category(*type);
			if (r.contains("category")) {
				auto const cat = enum_parse(rule_category_names, detail::require_string(r, "category", id, field));
				if (!cat) { throw DataError(id, field + ".category", "unknown category"); }
				rule.category = *cat;
			}
			rule.payload = detail::parse_payload(r.contains("payload") ? r["payload"] : Json(), *type, id, field + ".payload");
			page.rules.push_back(std::move(rule));
		}
	}

	std::vector<Box> raw_boxes;
	std::vector<std::optional<Box>> table_hints;
	if (auto tables = array_field("tables")) {
		for (std::size_t i = 0; i < tables->size(); ++i) {
			auto const& t = (*tables)[i];
			auto const field = "tables[" + std::to_string(i) + "]";
			if (!t.is_object()) { throw DataError(id, field, "expected an object"); }
			GroundTruthTable table;
			table.html = detail::require_string(t, "html", id, field);
			if (t.contains("trm_unsupported")) {
				if (!t["trm_unsupported"].is_boolean()) { throw DataError(id, field + ".trm_unsupported", "expected a boolean"); }
				table.trm_unsupported = t["trm_unsupported"].get<bool>();
			}
			if (t.contains("region_hint") && !t["region_hint"].is_null()) {
				auto b = detail::parse_box(t["region_hint"]);
				if (!b) { throw DataError(id, field + ".region_hint", "expected [x1, y1, x2, y2]"); }
				table.region_hint = *b;
				raw_boxes.push_back(*b);
			}
			page.tables.push_back(std::move(table));
		}
	}

	if (auto points = array_field("data_points")) {
		for (std::size_t i = 0; i < points->size(); ++i) {
			auto const& d = (*points)[i];
			auto const field = "data_points[" + std::to_string(i) + "]";
			if (!d.is_object()) { throw DataError(id, field, "expected an object"); }
			DataPointSpec spec;
			if (!d.contains("labels") || !d["labels"].is_array()) { throw DataError(id, field + ".labels", "expected an array of strings"); }
			for (auto const& l : d["labels"]) {
				if (!l.is_string()) { throw DataError(id, field + ".labels", "expected an array of strings"); }
				spec.labels.push_back(l.get<std::string>());
			}
			if (!d.contains("value") || !d["value"].is_number()) { throw DataError(id, field + ".value", "expected a number"); }
			spec.value = d["value"].get<double>();
			if (d.contains("relative_tolerance")) {
				if (!d["relative_tolerance"].is_number()) { throw DataError(id, field + ".relative_tolerance", "expected a number"); }
				spec.relative_tolerance = d["relative_tolerance"].get<double>();
			}
			page.data_points.push_back(std::move(spec));
		}
	}

	if (auto elements = array_field("elements")) {
		for (std::size_t i = 0; i < elements->size(); ++i) {
			auto const& e = (*elements)[i];
			auto const field = "elements[" + std::to_string(i) + "]";
			if (!e.is_object()) { throw DataError(id, field, "expected an object"); }
			LayoutElement el;
			auto b = e.contains("bbox") ? detail::parse_box(e["bbox"]) : std::nullopt;
			if (!b) { throw DataError(id, field + ".bbox", "expected [x1, y1, x2, y2]"); }
			el.box = *b;
			raw_boxes.push_back(*b);
			auto const label = enum_parse(label_names, detail::require_string(e, "label", id, field));
			if (!label || *label == Label::unmapped) {
				throw DataError(id, field + ".label", "expected one of Text, Table, Picture, Page-Header, Page-Footer");
			}
			el.label = *label;
			if (e.contains("content") && !e["content"].is_null()) {
				if (!e["content"].is_string()) { throw DataError(id, field + ".content", "expected a string"); }
				el.content = e["content"].get<std::string>();
			}
			if (e.contains("flags")) {
				auto const& f = e["flags"];
				if (!f.is_object()) { throw DataError(id, field + ".flags", "expected an object"); }
				for (auto const& [key, value] : f.items()) {
					if (!value.is_boolean()) { throw DataError(id, field + ".flags." + key, "expected a boolean"); }
					bool const on = value.get<bool>();
					if (key == "explicit") {
						el.flags.explicit_content = on;
					} else if (key == "caption") {
						el.flags.caption = on;
					} else if (key == "ignore") {
						el.flags.ignore = on;
					} else if (key == "formula") {
						el.flags.formula = on;
					} else {
						throw DataError(id, field + ".flags." + key, "unknown flag");
					}
				}
			}
			if (e.contains("order_index") && !e["order_index"].is_null()) {
				if (!e["order_index"].is_number_integer()) { throw DataError(id, field + ".order_index", "expected an integer"); }
				el.order_index = e["order_index"].get<int>();
			}
			page.elements.push_back(std::move(el));
		}
	}

	if (!raw_boxes.empty()) {
		auto const units = detail::detect_units(raw_boxes, page);
		for (auto& el : page.elements) { el.box = detail::rescale(el.box, units, page); }
		for (auto& t : page.tables) {
			if (t.region_hint) { t.region_hint = detail::rescale(*t.region_hint, units, page); }
		}
	}
	page.attributes.erase("bbox_units");
	return page;
}

inline Json page_to_json(GroundTruthPage const& page) {
	Json j;
	j["page_id"] = page.page_id;
	j["dimension"] = std::string(to_string(page.dimension));
	j["source_asset"] = page.source_asset;
	j["rules"] = Json::array();
	for (auto const& r : page.rules) {
		Json jr;
		jr["type"] = std::string(to_string(r.type));
		jr["payload"] = detail::payload_to_json(r.payload);
		jr["category"] = std::string(to_string(r.category));
		j["rules"].push_back(std::move(jr));
	}
	j["tables"] = Json::array();
	for (auto const& t : page.tables) {
		Json jt;
		jt["html"] = t.html;
		jt["trm_unsupported"] = t.trm_unsupported;
		if (t.region_hint) { jt["region_hint"] = detail::box_to_json(*t.region_hint); }
		j["tables"].push_back(std::move(jt));
	}
	j["data_points"] = Json::array();
	for (auto const& d : page.data_points) {
		j["data_points"].push_back(Json{{"labels", d.labels}, {"value", d.value}, {"relative_tolerance", d.relative_tolerance}});
	}
	j["elements"] = Json::array();
	for (auto const& e : page.elements) {
		Json je;
		je["bbox"] = detail::box_to_json(e.box);
		je["label"] = std::string(to_string(e.label));
		if (e.content) { je["content"] = *e.content; }
		je["flags"] = Json{{"explicit", e.flags.explicit_content}, {"caption", e.flags.caption}, {"ignore", e.flags.ignore}, {"formula", e.flags.formula}};
		if (e.order_index) { je["order_index"] = *e.order_index; }
		j["elements"].push_back(std::move(je));
	}
	j["attributes"] = Json::object();
	for (auto const& [k, v] : page.attributes) { j["attributes"][k] = v; }
	// a pixel-unit page would otherwise be re-scaled on reload
	j["attributes"]["bbox_units"] = "normalized";
	return j;
}

/// Checks the dimension-specific invariants of a page; throws DataError naming the field.
inline void validate_page(GroundTruthPage const& page) {
	auto const& id = page.page_id;
	auto require = [&](bool non_empty, char const* field, bool expected) {
		if (non_empty != expected) {
			throw DataError(id, field, expected ? "must be non-empty for dimension " + std::string(to_string(page.dimension))
												: "must be empty for dimension " + std::string(to_string(page.dimension)));
		}
	};
	require(!page.rules.empty(), "rules", page.dimension == Dimension::text);
	require(!page.tables.empty(), "tables", page.dimension == Dimension::tables);
	require(!page.data_points.empty(), "data_points", page.dimension == Dimension::charts);
	require(!page.elements.empty(), "elements", page.dimension == Dimension::layout);

	for (std::size_t i = 0; i < page.rules.size(); ++i) {
		auto const& r = page.rules[i];
		auto const field = "rules[" + std::to_string(i) + "]";
		if (r.category != default_category(r.type)) {
			throw DataError(id, field + ".category", "category '" + std::string(to_string(r.category)) + "' does not match rule type '" +
														 std::string(to_string(r.type)) + "'");
		}
		auto const& p = r.payload;
		switch (r.type) {
		case RuleType::order:
			if (p.before.empty() || p.after.empty()) { throw DataError(id, field + ".payload", "order rules need non-empty before and after"); }
			break;
		case RuleType::missing_sentence:
			if (p.sentences.empty()) { throw DataError(id, field + ".payload", "missing_sentence needs sentences"); }
			break;
		case RuleType::unexpected_sentence:
		case RuleType::duplication:
		case RuleType::bag_of_digit_percent:
			if (p.sentences.empty() && p.text.empty() && !page.attribute("reference_text")) {
				throw DataError(id, field + ".payload", "needs reference text (payload text, sentences or the reference_text attribute)");
			}
			break;
		case RuleType::title_hierarchy_percent:
			if (p.edges.empty()) { throw DataError(id, field + ".payload", "title_hierarchy_percent needs edges"); }
			break;
		case RuleType::is_code_block:
			if (p.text.empty() || p.language.empty()) { throw DataError(id, field + ".payload", "is_code_block needs text and language"); }
			break;
		default:
			if (p.text.empty()) { throw DataError(id, field + ".payload", "missing text"); }
			break;
		}
	}

	for (std::size_t i = 0; i < page.tables.size(); ++i) {
		auto const field = "tables[" + std::to_string(i) + "].html";
		auto const grids = extract_tables(page.tables[i].html);
		if (grids.size() != 1) { throw DataError(id, field, "must contain exactly one table, found " + std::to_string(grids.size())); }
		if (auto const& hint = page.tables[i].region_hint; hint && !hint->valid()) {
			throw DataError(id, "tables[" + std::to_string(i) + "].region_hint", "invalid box");
		}
	}

	for (std::size_t i = 0; i < page.data_points.size(); ++i) {
		auto const& d = page.data_points[i];
		auto const field = "data_points[" + std::to_string(i) + "]";
		if (d.labels.empty()) { throw DataError(id, field + ".labels", "at least one label is required"); }
		for (auto const& l : d.labels) {
			if (detail::trim_view(l).empty()) { throw DataError(id, field + ".labels", "labels must be non-empty strings"); }
		}
		if (!(d.relative_tolerance >= 0.0)) { throw DataError(id, field + ".relative_tolerance", "must be non-negative"); }
	}

	std::set<int> order;
	for (std::size_t i = 0; i < page.elements.size(); ++i) {
		auto const& e = page.elements[i];
		auto const field = "elements[" + std::to_string(i) + "]";
		auto const& b = e.box;
		if (!b.valid() || b.x1 < 0.0 || b.y1 < 0.0 || b.x2 > 1.0 || b.y2 > 1.0) {
			throw DataError(id, field + ".bbox", "expected x1<x2, y1<y2 within the page");
		}
		if (e.order_index && !order.insert(*e.order_index).second) {
			throw DataError(id, field + ".order_index", "duplicate order index " + std::to_string(*e.order_index));
		}
	}
}

namespace detail {

inline void append_pages(Json const& doc, std::vector<GroundTruthPage>& out, std::string const& origin) {
	try {
		if (doc.is_array()) {
			for (auto const& p : doc) { out.push_back(page_from_json(p)); }
		} else {
			out.push_back(page_from_json(doc));
		}
	} catch (DataError const& e) {
		throw DataError(origin + ": " + e.what());
	}
}

inline Json parse_json(std::string const& text, std::string const& origin) {
	try {
		return Json::parse(text);
	} catch (Json::parse_error const& e) {
		throw DataError(origin + ": invalid JSON: " + e.what());
	}
}

} // namespace detail

/// Loads a dataset from a directory of page documents (searched recursively, in path order),
/// a JSON-lines file, or a JSON file holding one page or an array of pages. Every page is
/// validated and page ids must be unique.
inline std::vector<GroundTruthPage> load_dataset(std::filesystem::path const& path) {
	namespace fs = std::filesystem;
	std::vector<GroundTruthPage> pages;
	std::error_code ec;
	if (!fs::exists(path, ec)) { throw DataError("dataset path '" + path.string() + "' does not exist"); }
	if (fs::is_directory(path)) {
		std::vector<fs::path> files;
		for (auto const& entry : fs::recursive_directory_iterator(path)) {
			if (entry.is_regular_file() && (entry.path().extension() == ".json" || entry.path().extension() == ".jsonl")) {
				files.push_back(entry.path());
			}
		}
		std::sort(files.begin(), files.end());
		for (auto const& f : files) {
			auto loaded = load_dataset(f);
			std::move(loaded.begin(), loaded.end(), std::back_inserter(pages));
		}
	} else if (path.extension() == ".jsonl") {
		std::istringstream in(detail::read_file(path));
		std::string line;
		int lineno = 0;
		while (std::getline(in, line)) {
			++lineno;
			if (detail::trim_view(line).empty()) { continue; }
			auto const origin = path.string() + ":" + std::to_string(lineno);
			detail::append_pages(detail::parse_json(line, origin), pages, origin);
		}
	} else {
		detail::append_pages(detail::parse_json(detail::read_file(path), path.string()), pages, path.string());
	}

	std::set<std::string> seen;
	for (auto const& p : pages) {
		if (!seen.insert(p.page_id).second) { throw DataError(p.page_id, "page_id", "duplicate page id"); }
		validate_page(p);
	}
	return pages;
}

/// Writes a dataset as JSON lines (one page per line), readable by load_dataset.
inline void save_dataset(std::vector<GroundTruthPage> const& pages, std::filesystem::path const& path) {
	std::ofstream out(path, std::ios::binary);
	if (!out) { throw DataError("cannot write '" + path.string() + "'"); }
	for (auto const& p : pages) { out << page_to_json(p).dump() << '\n'; }
}

namespace detail {

inline PredictionRecord parse_record(Json const& r, std::string const& origin, std::size_t index) {
	auto const field = "record " + std::to_string(index);
	if (!r.is_object()) { throw DataError(origin + ": " + field + " is not an object"); }
	PredictionRecord rec;
	for (char const* key : {"bbox", "box"}) {
		if (r.contains(key) && !r[key].is_null()) {
			auto const& v = r[key];
			if (!v.is_array() || v.size() != 4 || !std::all_of(v.begin(), v.end(), [](Json const& x) { return x.is_number(); })) {
				throw DataError(origin + ": " + field + ": expected bbox [x1, y1, x2, y2]");
			}
			rec.bbox = std::array<double, 4>{v[0].get<double>(), v[1].get<double>(), v[2].get<double>(), v[3].get<double>()};
			break;
		}
	}
	for (char const* key : {"category", "label", "type"}) {
		if (r.contains(key) && r[key].is_string()) {
			rec.label = r[key].get<std::string>();
			break;
		}
	}
	for (char const* key : {"text", "content", "markdown"}) {
		if (r.contains(key) && r[key].is_string()) {
			rec.content = r[key].get<std::string>();
			break;
		}
	}
	for (char const* key : {"confidence", "score"}) {
		if (r.contains(key) && r[key].is_number()) {
			rec.confidence = r[key].get<double>();
			break;
		}
	}
	return rec;
}

} // namespace detail

/// Reads one provider output. JSON arrays of {bbox, category, text} records and objects with
/// an `elements`/`layout`/`blocks` array are structured; objects with `markdown`/`markup`/
/// `content` and any other UTF-8 text are markup. The page id comes from an embedded
/// `page_id` field or the file stem.
inline RawPrediction load_prediction(std::filesystem::path const& path) {
	auto const bytes = detail::read_file(path);
	auto const origin = path.string();
	if (!unicode::is_valid_utf8(bytes) || bytes.find('\0') != std::string::npos) {
		throw DataError(origin + ": neither a JSON nor a text prediction (binary content)");
	}
	RawPrediction pred;
	pred.page_id = path.stem().string();

	auto const first = detail::trim_view(bytes);
	bool const looks_json = !first.empty() && (first.front() == '[' || first.front() == '{');
	if (!looks_json) {
		pred.kind = PayloadKind::markup;
		pred.markup = bytes;
		return pred;
	}
	Json j;
	try {
		j = Json::parse(bytes);
	} catch (Json::parse_error const&) {
		pred.kind = PayloadKind::markup;
		pred.markup = bytes;
		return pred;
	}
	if (j.is_array()) {
		pred.kind = PayloadKind::structured;
		for (std::size_t i = 0; i < j.size(); ++i) { pred.records.push_back(detail::parse_record(j[i], origin, i)); }
		return pred;
	}
	if (j.contains("page_id") && j["page_id"].is_string()) { pred.page_id = j["page_id"].get<std::string>(); }
	if (j.contains("provider_meta") && j["provider_meta"].is_object()) {
		for (auto const& [k, v] : j["provider_meta"].items()) { pred.provider_meta[k] = detail::scalar_to_string(v); }
	}
	bool recognized = false;
	for (char const* key : {"markdown", "markup", "content"}) {
		if (j.contains(key) && j[key].is_string()) {
			pred.kind = PayloadKind::markup;
			pred.markup = j[key].get<std::string>();
			recognized = true;
			break;
		}
	}
	for (char const* key : {"elements", "layout", "blocks"}) {
		if (j.contains(key) && j[key].is_array()) {
			pred.kind = PayloadKind::structured;
			auto const& arr = j[key];
			for (std::size_t i = 0; i < arr.size(); ++i) { pred.records.push_back(detail::parse_record(arr[i], origin, i)); }
			recognized = true;
			break;
		}
	}
	if (!recognized) { throw DataError(origin + ": JSON prediction without markdown, markup, content or elements"); }
	return pred;
}

/// Loads every regular file under `dir` as a prediction, keyed by page id.
inline std::map<std::string, RawPrediction> load_predictions(std::filesystem::path const& dir) {
	namespace fs = std::filesystem;
	if (!fs::is_directory(dir)) { throw DataError("predictions path '" + dir.string() + "' is not a directory"); }
	std::vector<fs::path> files;
	for (auto const& entry : fs::recursive_directory_iterator(dir)) {
		if (entry.is_regular_file() && entry.path().filename().string().front() != '.') { files.push_back(entry.path()); }
	}
	std::sort(files.begin(), files.end());
	std::map<std::string, RawPrediction> out;
	for (auto const& f : files) {
		auto pred = load_prediction(f);
		auto const id = pred.page_id;
		if (!out.emplace(id, std::move(pred)).second) { throw DataError("duplicate prediction for page '" + id + "' (" + f.string() + ")"); }
	}
	return out;
}

} // namespace docscore
