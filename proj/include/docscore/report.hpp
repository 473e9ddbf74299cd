// docscore: document-parser evaluation toolkit
// Requirements: C++20

#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "chart_eval.hpp"
#include "config.hpp"
#include "dataset.hpp"
#include "difficulty.hpp"
#include "document.hpp"
#include "format_eval.hpp"
#include "grounding.hpp"
#include "model.hpp"
#include "table_eval.hpp"
#include "text_eval.hpp"

namespace docscore {

/// The five reported dimensions, in report order.
inline constexpr std::array<std::string_view, 5> score_dimensions = {"tables", "charts", "content_faithfulness", "semantic_formatting", "visual_grounding"};

/// Unweighted mean of the dimension scores present.
inline std::optional<double> overall_score(std::vector<std::optional<double>> const& dims) {
	double sum = 0.0;
	std::size_t n = 0;
	for (auto const& d : dims) {
		if (!d) { continue; }
		sum += *d;
		++n;
	}
	if (n == 0) { return std::nullopt; }
	return sum / static_cast<double>(n);
}

struct CostRecord {
	std::string provider;
	double average_cents{};
	std::optional<double> overall;
	std::map<std::string, double> per_category;
	std::vector<std::string> warnings;
};

/// Per-provider, per-category cost in cents per page.
using CostTable = std::map<std::string, std::map<std::string, double>>;

inline constexpr std::array<std::string_view, 4> cost_categories = {"charts", "tables", "text", "layout"};

/// Average cost over the dataset categories present; a missing category is warned about.
inline std::optional<CostRecord> join_costs(CostTable const& table, std::string const& provider, std::optional<double> overall) {
	auto it = table.find(provider);
	if (it == table.end()) { return std::nullopt; }
	CostRecord rec{provider, 0.0, overall, {}, {}};
	for (auto cat : cost_categories) {
		auto c = it->second.find(std::string(cat));
		if (c == it->second.end()) {
			rec.warnings.push_back("no cost for category '" + std::string(cat) + "'");
			continue;
		}
		rec.per_category[c->first] = c->second;
		rec.average_cents += c->second;
	}
	if (rec.per_category.empty()) { return std::nullopt; }
	rec.average_cents /= static_cast<double>(rec.per_category.size());
	return rec;
}

/// Cost table JSON: {"provider": {"charts": cents, "tables": cents, "text": cents, "layout": cents}}.
inline CostTable load_cost_table(std::filesystem::path const& path) {
	auto const j = detail::parse_json(detail::read_file(path), path.string());
	if (!j.is_object()) { throw DataError(path.string() + ": cost table must be an object of providers"); }
	CostTable out;
	for (auto const& [provider, cats] : j.items()) {
		if (!cats.is_object()) { throw DataError(path.string() + ": costs of '" + provider + "' must be an object"); }
		for (auto const& [cat, v] : cats.items()) {
			if (std::find(cost_categories.begin(), cost_categories.end(), cat) == cost_categories.end()) {
				throw DataError(path.string() + ": unknown cost category '" + cat + "'");
			}
			if (!v.is_number() || v.get<double>() < 0.0) { throw DataError(path.string() + ": cost of '" + provider + "/" + cat + "' must be a non-negative number"); }
			out[provider][cat] = v.get<double>();
		}
	}
	return out;
}

struct PageReport {
	std::string page_id;
	Dimension dimension{Dimension::text};
	bool missing{};
	std::map<std::string, double> scores; // keys from score_dimensions
	Json details = Json::object();
	std::optional<int> difficulty;
	std::optional<DifficultyBucket> bucket;
	std::vector<std::string> warnings;
	bool has_verdicts{};
};

struct EprStratum {
	std::size_t pages{};
	std::optional<double> epr;
};

struct Diagnostics {
	std::optional<double> map;
	std::optional<double> lap;
	std::optional<double> lar;
	std::optional<double> af1;
	std::optional<double> reading_order;
	std::optional<double> localization_rate;
	std::optional<double> classification_rate;
	EprStratum easy;
	EprStratum hard;
};

struct DimensionSummary {
	std::optional<double> mean;
	std::size_t pages{};
};

struct BenchmarkReport {
	std::string provider;
	std::vector<std::string> dimensions; // page dimensions selected
	std::vector<PageReport> pages;
	std::map<std::string, DimensionSummary> per_dimension;
	std::optional<double> overall;
	Diagnostics diagnostics;
	std::vector<std::string> missing_pages;
	std::vector<std::string> excluded_pages;
	std::optional<CostRecord> cost;
	std::vector<std::string> warnings;
	/// Per-element grounding verdicts, one JSON object per line in verdicts.jsonl.
	std::vector<Json> verdicts;
};

struct EvalOptions {
	EvalConfig config;
	std::set<Dimension> dimensions{Dimension::tables, Dimension::charts, Dimension::text, Dimension::layout};
	/// When set, up to this many pages without a prediction are excluded instead of scored 0;
	/// more missing pages abort the run.
	std::optional<std::size_t> allow_missing;
	unsigned jobs{1};
	std::string provider;
	CostTable costs;
};

namespace detail {

inline Json opt_json(std::optional<double> v) { return v ? Json(*v) : Json(nullptr); }

inline std::optional<double> json_opt(Json const& j) {
	if (j.is_null()) { return std::nullopt; }
	return j.get<double>();
}

inline Json verdict_json(std::string const& page_id, ElementVerdict const& v) {
	Json j;
	j["page_id"] = page_id;
	j["element"] = v.element;
	j["label"] = to_string(v.label);
	j["L"] = v.L;
	j["C"] = v.C;
	j["E"] = v.E;
	j["A"] = v.A ? Json(*v.A) : Json(nullptr);
	j["pass"] = v.pass;
	j["furniture"] = v.furniture;
	j["matched_prediction"] = v.matched_prediction ? Json(*v.matched_prediction) : Json(nullptr);
	j["attribution_span"] = v.attribution_span;
	j["attribution_score"] = v.attribution_score;
	j["reasons"] = v.reasons;
	return j;
}

inline Json rule_results_json(std::vector<RuleResult> const& results) {
	Json arr = Json::array();
	for (auto const& r : results) { arr.push_back({{"type", to_string(r.type)}, {"category", to_string(r.category)}, {"score", r.score}, {"detail", r.detail}}); }
	return arr;
}

/// Everything one worker produces for one page.
struct PageOutcome {
	PageReport report;
	std::vector<Block> blocks;
	AttributionTotals attribution;
	std::optional<double> epr, reading_order, localization_rate, classification_rate;
	std::vector<Json> verdicts;
};

inline bool has_category(GroundTruthPage const& page, std::initializer_list<RuleCategory> cats) {
	return std::any_of(page.rules.begin(), page.rules.end(), [&](TestRule const& r) { return std::find(cats.begin(), cats.end(), r.category) != cats.end(); });
}

inline PageOutcome evaluate_page(GroundTruthPage const& page, RawPrediction const* pred, EvalConfig const& cfg) {
	PageOutcome out;
	auto& rep = out.report;
	rep.page_id = page.page_id;
	rep.dimension = page.dimension;
	rep.missing = pred == nullptr;
	ParsedDocument doc;
	if (pred) {
		doc = build_document(*pred, cfg.document);
		rep.warnings = doc.warnings;
	}
	auto& d = rep.details;
	switch (page.dimension) {
	case Dimension::tables: {
		if (rep.missing) {
			rep.scores["tables"] = 0.0;
			break;
		}
		auto const s = score_table_page(page, doc, cfg.grits);
		rep.scores["tables"] = s.score;
		d["tables"] = Json::array();
		for (auto const& t : s.tables) {
			d["tables"].push_back({{"grits", t.grits}, {"trm", opt_json(t.trm)}, {"gtrm", t.gtrm}, {"prediction", t.prediction ? Json(*t.prediction) : Json(nullptr)}});
		}
		d["predicted_tables"] = doc.tables.size();
		break;
	}
	case Dimension::charts: {
		if (rep.missing) {
			rep.scores["charts"] = 0.0;
			break;
		}
		auto const s = chart_data_point_match(page, doc, cfg.chart);
		rep.scores["charts"] = s.score;
		d["passed"] = s.passed;
		d["data_points"] = Json::array();
		for (std::size_t i = 0; i < s.verdicts.size(); ++i) {
			auto const& v = s.verdicts[i];
			Json j{{"labels", page.data_points[i].labels}, {"value", page.data_points[i].value}, {"pass", v.pass}, {"reason", v.reason}, {"value_matches", v.value_matches}};
			if (v.cell) { j["cell"] = {{"table", v.cell->table}, {"row", v.cell->row}, {"col", v.cell->col}, {"raw", v.cell->raw}, {"value", v.cell->value}}; }
			j["unmatched_labels"] = v.unmatched_labels;
			d["data_points"].push_back(std::move(j));
		}
		break;
	}
	case Dimension::text: {
		bool const wants_cfs = has_category(page, {RuleCategory::text_correctness, RuleCategory::reading_order});
		bool const wants_sfs = has_category(page, {RuleCategory::styling_positive, RuleCategory::styling_negative, RuleCategory::title, RuleCategory::latex, RuleCategory::code});
		if (rep.missing) {
			if (wants_cfs) { rep.scores["content_faithfulness"] = 0.0; }
			if (wants_sfs) { rep.scores["semantic_formatting"] = 0.0; }
			break;
		}
		auto const t = score_content_faithfulness(page, doc, cfg.text);
		if (t.cfs) {
			rep.scores["content_faithfulness"] = *t.cfs;
			d["text_correctness"] = opt_json(t.text_correctness);
			d["reading_order"] = opt_json(t.reading_order);
			Json per_type = Json::object();
			for (auto const& [type, v] : t.aggregate.per_type) { per_type[std::string(to_string(type))] = v; }
			d["text_rule_types"] = std::move(per_type);
			d["text_rules"] = rule_results_json(t.results);
		}
		auto const f = score_semantic_formatting(page, doc, cfg.format);
		if (f.sfs) {
			rep.scores["semantic_formatting"] = *f.sfs;
			d["style"] = opt_json(f.style);
			d["title"] = opt_json(f.title);
			d["latex"] = opt_json(f.latex);
			d["code"] = opt_json(f.code);
			Json classes = Json::object();
			for (auto const& [cls, pt] : f.tally.per_class) { classes[std::string(to_string(cls))] = {{"passed", pt.first}, {"total", pt.second}}; }
			d["style_classes"] = std::move(classes);
			d["format_rules"] = rule_results_json(f.results);
		}
		break;
	}
	case Dimension::layout: {
		auto const diff = page_difficulty(page, std::nullopt, cfg.difficulty);
		rep.difficulty = diff.score;
		rep.bucket = diff.bucket;
		d["difficulty_missing_signals"] = diff.missing_signals;
		static std::vector<Block> const none;
		out.blocks = doc.blocks;
		auto const g = score_grounding(page.elements, rep.missing ? none : doc.blocks, cfg.grounding);
		rep.scores["visual_grounding"] = g.epr;
		rep.has_verdicts = true;
		out.epr = g.epr;
		out.reading_order = g.reading_order;
		out.localization_rate = g.localization_rate;
		out.classification_rate = g.classification_rate;
		out.attribution = g.attribution;
		d["elements"] = g.n;
		d["passed"] = g.passed;
		d["localization_rate"] = g.localization_rate;
		d["classification_rate"] = g.classification_rate;
		d["reading_order"] = g.reading_order;
		d["lap"] = opt_json(g.attribution.lap());
		d["lar"] = opt_json(g.attribution.lar());
		for (auto const& v : g.verdicts) { out.verdicts.push_back(verdict_json(page.page_id, v)); }
		break;
	}
	}
	return out;
}

inline std::optional<double> mean_of(std::vector<double> const& v) {
	if (v.empty()) { return std::nullopt; }
	double s = 0.0;
	for (double x : v) { s += x; }
	return s / static_cast<double>(v.size());
}

} // namespace detail

/// Scores every selected page against its prediction and aggregates the report. Pages run
/// on `jobs` workers; results are merged in dataset order so output is deterministic.
inline BenchmarkReport evaluate(std::vector<GroundTruthPage> const& pages, std::map<std::string, RawPrediction> const& predictions,
								EvalOptions const& options = {}) {
	BenchmarkReport report;
	for (auto dim : options.dimensions) { report.dimensions.emplace_back(to_string(dim)); }

	std::vector<GroundTruthPage const*> selected;
	std::set<std::string> ids;
	for (auto const& p : pages) {
		ids.insert(p.page_id);
		if (options.dimensions.contains(p.dimension)) { selected.push_back(&p); }
	}
	for (auto const& [id, pred] : predictions) {
		if (!ids.contains(id)) { report.warnings.push_back("prediction for unknown page '" + id + "' ignored"); }
	}

	std::vector<std::string> missing;
	for (auto const* p : selected) {
		if (!predictions.contains(p->page_id)) { missing.push_back(p->page_id); }
	}
	if (options.allow_missing) {
		if (missing.size() > *options.allow_missing) {
			std::string list;
			for (auto const& id : missing) { list += (list.empty() ? "" : ", ") + id; }
			throw DataError(std::to_string(missing.size()) + " pages lack predictions (allowed " + std::to_string(*options.allow_missing) + "): " + list);
		}
		report.excluded_pages = missing;
		std::erase_if(selected, [&](GroundTruthPage const* p) { return !predictions.contains(p->page_id); });
	} else {
		report.missing_pages = missing;
	}

	if (options.provider.empty()) {
		for (auto const* p : selected) {
			auto it = predictions.find(p->page_id);
			if (it == predictions.end()) { continue; }
			if (auto m = it->second.provider_meta.find("provider"); m != it->second.provider_meta.end()) {
				report.provider = m->second;
				break;
			}
		}
	} else {
		report.provider = options.provider;
	}

	std::vector<detail::PageOutcome> outcomes(selected.size());
	std::vector<std::exception_ptr> errors(selected.size());
	std::atomic<std::size_t> next{0};
	auto worker = [&] {
		for (std::size_t i = next++; i < selected.size(); i = next++) {
			try {
				auto it = predictions.find(selected[i]->page_id);
				outcomes[i] = detail::evaluate_page(*selected[i], it == predictions.end() ? nullptr : &it->second, options.config);
			} catch (...) {
				errors[i] = std::current_exception();
			}
		}
	};
	unsigned const jobs = std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(std::max<std::size_t>(1, selected.size()))));
	if (jobs == 1) {
		worker();
	} else {
		std::vector<std::jthread> pool;
		for (unsigned j = 0; j < jobs; ++j) { pool.emplace_back(worker); }
	}
	for (auto const& e : errors) {
		if (e) { std::rethrow_exception(e); }
	}

	std::map<std::string, std::vector<double>> per_dim;
	std::vector<double> ro, lr, cr, easy, hard;
	AttributionTotals attribution;
	std::vector<DetectionImage> images;
	for (std::size_t i = 0; i < outcomes.size(); ++i) {
		auto& o = outcomes[i];
		for (auto const& [name, v] : o.report.scores) { per_dim[name].push_back(v); }
		if (o.epr) {
			ro.push_back(*o.reading_order);
			lr.push_back(*o.localization_rate);
			cr.push_back(*o.classification_rate);
			(o.report.bucket == DifficultyBucket::easy ? easy : hard).push_back(*o.epr);
			attribution += o.attribution;
			images.push_back({&selected[i]->elements, &o.blocks});
		}
		for (auto& v : o.verdicts) { report.verdicts.push_back(std::move(v)); }
		report.pages.push_back(std::move(o.report));
	}
	std::vector<std::optional<double>> means;
	for (auto name : score_dimensions) {
		auto const& v = per_dim[std::string(name)];
		DimensionSummary s{detail::mean_of(v), v.size()};
		report.per_dimension[std::string(name)] = s;
		means.push_back(s.mean);
	}
	report.overall = overall_score(means);

	auto& dg = report.diagnostics;
	dg.map = coco_map(std::span<DetectionImage const>(images));
	dg.lap = attribution.lap();
	dg.lar = attribution.lar();
	dg.af1 = attribution.af1();
	dg.reading_order = detail::mean_of(ro);
	dg.localization_rate = detail::mean_of(lr);
	dg.classification_rate = detail::mean_of(cr);
	dg.easy = {easy.size(), detail::mean_of(easy)};
	dg.hard = {hard.size(), detail::mean_of(hard)};

	if (!options.costs.empty()) {
		report.cost = join_costs(options.costs, report.provider, report.overall);
		if (!report.cost) { report.warnings.push_back("cost table has no entry for provider '" + report.provider + "'"); }
	}
	return report;
}

inline Json report_to_json(BenchmarkReport const& r) {
	using detail::opt_json;
	Json j;
	j["provider"] = r.provider;
	j["dimensions"] = r.dimensions;
	j["overall"] = opt_json(r.overall);
	Json dims = Json::object();
	for (auto name : score_dimensions) {
		auto it = r.per_dimension.find(std::string(name));
		DimensionSummary const s = it == r.per_dimension.end() ? DimensionSummary{} : it->second;
		dims[std::string(name)] = {{"mean", opt_json(s.mean)}, {"pages", s.pages}};
	}
	j["per_dimension"] = std::move(dims);
	auto const& d = r.diagnostics;
	j["diagnostics"] = {
		{"map", opt_json(d.map)},
		{"lap", opt_json(d.lap)},
		{"lar", opt_json(d.lar)},
		{"af1", opt_json(d.af1)},
		{"reading_order", opt_json(d.reading_order)},
		{"localization_rate", opt_json(d.localization_rate)},
		{"classification_rate", opt_json(d.classification_rate)},
		{"epr_by_difficulty",
		 {{"Easy", {{"pages", d.easy.pages}, {"epr", opt_json(d.easy.epr)}}}, {"Hard", {{"pages", d.hard.pages}, {"epr", opt_json(d.hard.epr)}}}}},
	};
	j["missing_pages"] = r.missing_pages;
	j["excluded_pages"] = r.excluded_pages;
	if (r.cost) {
		j["cost"] = {{"provider", r.cost->provider},
					 {"average_cents", r.cost->average_cents},
					 {"overall", opt_json(r.cost->overall)},
					 {"per_category", r.cost->per_category},
					 {"warnings", r.cost->warnings}};
	} else {
		j["cost"] = nullptr;
	}
	j["warnings"] = r.warnings;
	Json pages = Json::array();
	for (auto const& p : r.pages) {
		Json pj;
		pj["page_id"] = p.page_id;
		pj["dimension"] = to_string(p.dimension);
		pj["status"] = p.missing ? "missing" : "scored";
		Json scores = Json::object();
		for (auto name : score_dimensions) {
			if (auto it = p.scores.find(std::string(name)); it != p.scores.end()) { scores[std::string(name)] = it->second; }
		}
		pj["scores"] = std::move(scores);
		pj["details"] = p.details;
		pj["difficulty"] = p.difficulty ? Json{{"score", *p.difficulty}, {"bucket", to_string(*p.bucket)}} : Json(nullptr);
		pj["warnings"] = p.warnings;
		pj["verdict_log"] = p.has_verdicts ? Json("verdicts.jsonl") : Json(nullptr);
		pages.push_back(std::move(pj));
	}
	j["pages"] = std::move(pages);
	return j;
}

inline BenchmarkReport report_from_json(Json const& j) {
	using detail::json_opt;
	BenchmarkReport r;
	try {
		r.provider = j.at("provider").get<std::string>();
		r.dimensions = j.at("dimensions").get<std::vector<std::string>>();
		r.overall = json_opt(j.at("overall"));
		for (auto const& [name, s] : j.at("per_dimension").items()) { r.per_dimension[name] = {json_opt(s.at("mean")), s.at("pages").get<std::size_t>()}; }
		auto const& d = j.at("diagnostics");
		auto& dg = r.diagnostics;
		dg.map = json_opt(d.at("map"));
		dg.lap = json_opt(d.at("lap"));
		dg.lar = json_opt(d.at("lar"));
		dg.af1 = json_opt(d.at("af1"));
		dg.reading_order = json_opt(d.at("reading_order"));
		dg.localization_rate = json_opt(d.at("localization_rate"));
		dg.classification_rate = json_opt(d.at("classification_rate"));
		auto const& strata = d.at("epr_by_difficulty");
		dg.easy = {strata.at("Easy").at("pages").get<std::size_t>(), json_opt(strata.at("Easy").at("epr"))};
		dg.hard = {strata.at("Hard").at("pages").get<std::size_t>(), json_opt(strata.at("Hard").at("epr"))};
		r.missing_pages = j.at("missing_pages").get<std::vector<std::string>>();
		r.excluded_pages = j.at("excluded_pages").get<std::vector<std::string>>();
		if (auto const& c = j.at("cost"); !c.is_null()) {
			CostRecord rec;
			rec.provider = c.at("provider").get<std::string>();
			rec.average_cents = c.at("average_cents").get<double>();
			rec.overall = json_opt(c.at("overall"));
			rec.per_category = c.at("per_category").get<std::map<std::string, double>>();
			rec.warnings = c.at("warnings").get<std::vector<std::string>>();
			r.cost = std::move(rec);
		}
		r.warnings = j.at("warnings").get<std::vector<std::string>>();
		for (auto const& pj : j.at("pages")) {
			PageReport p;
			p.page_id = pj.at("page_id").get<std::string>();
			p.dimension = enum_parse(dimension_names, pj.at("dimension").get<std::string>()).value();
			p.missing = pj.at("status").get<std::string>() == "missing";
			p.scores = pj.at("scores").get<std::map<std::string, double>>();
			p.details = pj.at("details");
			if (auto const& dj = pj.at("difficulty"); !dj.is_null()) {
				p.difficulty = dj.at("score").get<int>();
				p.bucket = dj.at("bucket").get<std::string>() == "Easy" ? DifficultyBucket::easy : DifficultyBucket::hard;
			}
			p.warnings = pj.at("warnings").get<std::vector<std::string>>();
			p.has_verdicts = !pj.at("verdict_log").is_null();
			r.pages.push_back(std::move(p));
		}
	} catch (Json::exception const& e) {
		throw DataError(std::string("malformed report: ") + e.what());
	} catch (std::bad_optional_access const&) {
		throw DataError("malformed report: unknown dimension");
	}
	return r;
}

/// Reports are equal when their canonical JSON is; the verdict log is not part of it.
inline bool operator==(BenchmarkReport const& a, BenchmarkReport const& b) { return report_to_json(a) == report_to_json(b); }

namespace detail {

inline std::string csv_number(double v) {
	char buf[64];
	auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
	return ec == std::errc() ? std::string(buf, p) : std::string();
}

inline std::string csv_field(std::string const& s) {
	if (s.find_first_of(",\"\n\r") == std::string::npos) { return s; }
	std::string out = "\"";
	for (char c : s) {
		if (c == '"') { out += '"'; }
		out += c;
	}
	return out + "\"";
}

} // namespace detail

/// Flat per-page table: a header row, then one row per page.
inline std::string report_to_csv(BenchmarkReport const& r) {
	std::ostringstream out;
	out << "page_id,dimension,status";
	for (auto name : score_dimensions) { out << ',' << name; }
	out << ",difficulty_score,difficulty_bucket\n";
	for (auto const& p : r.pages) {
		out << detail::csv_field(p.page_id) << ',' << to_string(p.dimension) << ',' << (p.missing ? "missing" : "scored");
		for (auto name : score_dimensions) {
			out << ',';
			if (auto it = p.scores.find(std::string(name)); it != p.scores.end()) { out << detail::csv_number(it->second); }
		}
		out << ',' << (p.difficulty ? std::to_string(*p.difficulty) : "") << ',' << (p.bucket ? std::string(to_string(*p.bucket)) : "") << '\n';
	}
	return out.str();
}

inline std::string verdicts_to_jsonl(BenchmarkReport const& r) {
	std::string out;
	for (auto const& v : r.verdicts) { out += v.dump() + "\n"; }
	return out;
}

enum class ReportFormat { json, csv };

/// Writes report.json or report.csv, plus verdicts.jsonl, into `dir`.
inline void emit_report(BenchmarkReport const& r, ReportFormat format, std::filesystem::path const& dir) {
	std::error_code ec;
	std::filesystem::create_directories(dir, ec);
	if (ec) { throw DataError("cannot create output directory '" + dir.string() + "': " + ec.message()); }
	auto write = [&](std::filesystem::path const& path, std::string const& body) {
		std::ofstream out(path, std::ios::binary);
		out << body;
		out.close();
		if (!out) { throw DataError("cannot write '" + path.string() + "'"); }
	};
	if (format == ReportFormat::json) {
		write(dir / "report.json", report_to_json(r).dump(2) + "\n");
	} else {
		write(dir / "report.csv", report_to_csv(r));
	}
	write(dir / "verdicts.jsonl", verdicts_to_jsonl(r));
}

} // namespace docscore
