// docscore: command-line front end
// Requirements: C++20

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "docscore/docscore.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_data = 2;

std::set<docscore::Dimension> parse_dimensions(std::string const& list) {
	std::set<docscore::Dimension> out;
	std::stringstream ss(list);
	std::string item;
	while (std::getline(ss, item, ',')) {
		auto const name = std::string(docscore::detail::trim_view(item));
		if (name.empty()) { continue; }
		auto dim = docscore::enum_parse(docscore::dimension_names, name);
		if (!dim) { throw CLI::ValidationError("--dimensions", "unknown dimension '" + name + "'"); }
		out.insert(*dim);
	}
	if (out.empty()) { throw CLI::ValidationError("--dimensions", "no dimension selected"); }
	return out;
}

void print_summary(docscore::BenchmarkReport const& r) {
	auto pct = [](std::optional<double> v) {
		if (!v) { return std::string("n/a"); }
		char buf[32];
		std::snprintf(buf, sizeof buf, "%.1f", 100.0 * *v);
		return std::string(buf);
	};
	for (auto name : docscore::score_dimensions) {
		auto const& s = r.per_dimension.at(std::string(name));
		std::cout << name << ": " << pct(s.mean) << " (" << s.pages << " pages)\n";
	}
	std::cout << "overall: " << pct(r.overall) << "\n";
	if (!r.missing_pages.empty()) { std::cout << "missing predictions scored 0: " << r.missing_pages.size() << "\n"; }
	if (!r.excluded_pages.empty()) { std::cout << "excluded pages: " << r.excluded_pages.size() << "\n"; }
	for (auto const& w : r.warnings) { std::cerr << "warning: " << w << "\n"; }
}

} // namespace

int main(int argc, char** argv) {
	CLI::App app{"docscore: score document-parser outputs against annotated ground truth"};
	app.require_subcommand(1);

	std::string dataset, predictions, dimensions = "tables,charts,text,layout", config, out_dir = "docscore-out", format = "json", costs, provider;
	long allow_missing = -1;
	unsigned jobs = 1;

	auto* eval = app.add_subcommand("eval", "Score predictions and write a report");
	eval->add_option("--dataset", dataset, "Ground-truth file or directory")->required();
	eval->add_option("--predictions", predictions, "Directory of prediction files")->required();
	eval->add_option("--dimensions", dimensions, "Comma-separated page dimensions to score")->capture_default_str();
	eval->add_option("--config", config, "key = value config file");
	eval->add_option("--out", out_dir, "Output directory")->capture_default_str();
	eval->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
	eval->add_option("--allow-missing", allow_missing, "Exclude up to N pages without predictions instead of scoring them 0")->check(CLI::NonNegativeNumber);
	eval->add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1u, 256u))->capture_default_str();
	eval->add_option("--costs", costs, "Per-provider per-category cost table (JSON, cents/page)");
	eval->add_option("--provider", provider, "Provider name for the cost join");

	std::string validate_dataset, validate_predictions;
	auto* validate = app.add_subcommand("validate", "Load and validate a dataset");
	validate->add_option("--dataset", validate_dataset, "Ground-truth file or directory")->required();
	validate->add_option("--predictions", validate_predictions, "Optional prediction directory to check as well");

	std::string difficulty_dataset;
	auto* difficulty = app.add_subcommand("difficulty", "Print the difficulty score of each layout page");
	difficulty->add_option("--dataset", difficulty_dataset, "Ground-truth file or directory")->required();

	std::set<docscore::Dimension> dims;
	try {
		app.parse(argc, argv);
		if (eval->parsed()) { dims = parse_dimensions(dimensions); }
	} catch (CLI::CallForHelp const& e) {
		return app.exit(e) == 0 ? exit_ok : exit_usage;
	} catch (CLI::CallForAllHelp const& e) {
		return app.exit(e) == 0 ? exit_ok : exit_usage;
	} catch (CLI::ParseError const& e) {
		app.exit(e);
		return exit_usage;
	}

	try {
		if (eval->parsed()) {
			docscore::EvalOptions options;
			if (!config.empty()) { options.config = docscore::load_config(config); }
			options.dimensions = dims;
			if (allow_missing >= 0) { options.allow_missing = static_cast<std::size_t>(allow_missing); }
			options.jobs = jobs;
			options.provider = provider;
			if (!costs.empty()) { options.costs = docscore::load_cost_table(costs); }
			auto const pages = docscore::load_dataset(dataset);
			auto const preds = docscore::load_predictions(predictions);
			auto const report = docscore::evaluate(pages, preds, options);
			docscore::emit_report(report, format == "csv" ? docscore::ReportFormat::csv : docscore::ReportFormat::json, out_dir);
			print_summary(report);
		} else if (validate->parsed()) {
			auto const pages = docscore::load_dataset(validate_dataset);
			std::cout << pages.size() << " pages valid\n";
			if (!validate_predictions.empty()) {
				auto const preds = docscore::load_predictions(validate_predictions);
				std::size_t matched = 0;
				for (auto const& p : pages) { matched += preds.contains(p.page_id) ? 1 : 0; }
				std::cout << preds.size() << " predictions loaded, " << matched << " match dataset pages\n";
			}
		} else if (difficulty->parsed()) {
			auto const pages = docscore::load_dataset(difficulty_dataset);
			std::cout << "page_id\tscore\tbucket\tmissing_signals\n";
			for (auto const& p : pages) {
				if (p.dimension != docscore::Dimension::layout) { continue; }
				auto const d = docscore::page_difficulty(p);
				std::string missing;
				for (auto const& m : d.missing_signals) { missing += (missing.empty() ? "" : ",") + m; }
				std::cout << p.page_id << '\t' << d.score << '\t' << to_string(d.bucket) << '\t' << missing << '\n';
			}
		}
	} catch (docscore::DataError const& e) {
		std::cerr << "error: " << e.what() << "\n";
		return exit_data;
	} catch (std::exception const& e) {
		std::cerr << "error: " << e.what() << "\n";
		return exit_data;
	}
	return exit_ok;
}
