// docscore: document-parser evaluation toolkit
// Requirements: C++20

#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "assignment.hpp"
#include "document.hpp"
#include "grid.hpp"
#include "model.hpp"
#include "unicode.hpp"

namespace docscore {

/// One table row keyed by composite column key.
using Record = std::map<std::string, std::string>;

struct RecordBag {
	std::vector<Record> records;
	std::vector<std::string> column_keys; // in column order
	std::vector<std::string> warnings;
};

/// Column keys join the header texts of a column top to bottom with " / " (consecutive
/// repeats from span expansion collapse); duplicates get "#2", "#3" suffixes. Every
/// non-header row becomes a record; fully empty rows are dropped.
inline RecordBag extract_records(Grid const& grid) {
	RecordBag bag;
	bool const has_header = grid.header_rows() > 0;
	if (!has_header && !grid.empty()) { bag.warnings.push_back("table without header rows; synthesized keys col_1..col_n"); }
	std::map<std::string, int> seen;
	for (int c = 0; c < grid.n_cols; ++c) {
		std::string key;
		std::string last;
		if (has_header) {
			for (int r = 0; r < grid.n_rows; ++r) {
				if (!grid.is_header_row(r)) { continue; }
				auto const& text = grid.at(r, c).text;
				if (text.empty() || text == last) { continue; }
				if (!key.empty()) { key += " / "; }
				key += text;
				last = text;
			}
		}
		if (key.empty()) { key = "col_" + std::to_string(c + 1); }
		if (int const n = ++seen[key]; n > 1) { key += "#" + std::to_string(n); }
		bag.column_keys.push_back(std::move(key));
	}
	for (int r = 0; r < grid.n_rows; ++r) {
		if (grid.is_header_row(r)) { continue; }
		Record rec;
		bool any = false;
		for (int c = 0; c < grid.n_cols; ++c) {
			auto const& text = grid.at(r, c).text;
			any = any || !text.empty();
			rec[bag.column_keys[static_cast<std::size_t>(c)]] = text;
		}
		if (any) { bag.records.push_back(std::move(rec)); }
	}
	return bag;
}

/// Matching keyed values over the union of keys; two empty records are identical.
inline double record_sim(Record const& g, Record const& p) {
	if (g.empty() && p.empty()) { return 1.0; }
	std::size_t matches = 0;
	std::size_t shared = 0;
	auto gi = g.begin();
	auto pi = p.begin();
	while (gi != g.end() && pi != p.end()) {
		if (gi->first < pi->first) {
			++gi;
		} else if (pi->first < gi->first) {
			++pi;
		} else {
			++shared;
			if (gi->second == pi->second) { ++matches; }
			++gi;
			++pi;
		}
	}
	return static_cast<double>(matches) / static_cast<double>(g.size() + p.size() - shared);
}

inline constexpr std::size_t max_assignment_records = 512;

/// Optimal one-to-one record assignment, summed similarity over max(|G|, |P|).
inline double table_record_match(RecordBag const& g, RecordBag const& p) {
	auto const ng = g.records.size();
	auto const np = p.records.size();
	if (ng == 0 && np == 0) { return 1.0; }
	if (ng == 0 || np == 0) { return 0.0; }
	if (ng > max_assignment_records || np > max_assignment_records) {
		throw std::length_error("table too large for exact record assignment (" + std::to_string(std::max(ng, np)) + " records, limit " +
								std::to_string(max_assignment_records) + ")");
	}
	std::vector<double> sims(ng * np);
	for (std::size_t i = 0; i < ng; ++i) {
		for (std::size_t j = 0; j < np; ++j) { sims[i * np + j] = record_sim(g.records[i], p.records[j]); }
	}
	auto const a = max_weight_assignment(ng, np, [&](std::size_t i, std::size_t j) { return sims[i * np + j]; });
	return a.total / static_cast<double>(std::max(ng, np));
}

namespace detail {

struct Alignment {
	std::vector<int> first;
	std::vector<int> second;
	double score{};

	bool same_pairs(Alignment const& o) const { return first == o.first && second == o.second; }
};

/// Monotone 1-D alignment maximizing summed pair reward. Ties prefer the diagonal, then
/// skipping an element of the first sequence.
template <typename Reward>
Alignment align_1d(int n1, int n2, Reward&& reward) {
	std::size_t const w = static_cast<std::size_t>(n2) + 1;
	std::vector<double> score((static_cast<std::size_t>(n1) + 1) * w, 0.0);
	std::vector<signed char> move(score.size(), 0);
	for (int i = 1; i <= n1; ++i) {
		for (int j = 1; j <= n2; ++j) {
			auto const at = static_cast<std::size_t>(i) * w + static_cast<std::size_t>(j);
			double const diag = score[at - w - 1] + reward(i - 1, j - 1);
			double const skip2 = score[at - 1];
			double const skip1 = score[at - w];
			double const best = std::max({diag, skip2, skip1});
			score[at] = best;
			move[at] = diag == best ? 0 : (skip1 == best ? -1 : 1);
		}
	}
	Alignment a;
	int i = n1;
	int j = n2;
	while (i > 0 && j > 0) {
		auto const m = move[static_cast<std::size_t>(i) * w + static_cast<std::size_t>(j)];
		if (m == 0) {
			a.first.push_back(i - 1);
			a.second.push_back(j - 1);
			--i;
			--j;
		} else if (m == -1) {
			--i;
		} else {
			--j;
		}
	}
	std::reverse(a.first.begin(), a.first.end());
	std::reverse(a.second.begin(), a.second.end());
	a.score = score.back();
	return a;
}

/// Cell-text similarity 2·LCS/(|a|+|b|) cached per distinct text pair.
class CellReward {
  public:
	CellReward(Grid const& a, Grid const& b) : ca_(a.n_cols), cb_(b.n_cols) {
		ida_ = intern(a, texts_a_);
		idb_ = intern(b, texts_b_);
		cache_.assign(texts_a_.size() * texts_b_.size(), -1.0);
	}

	double operator()(int i, int c, int j, int d) const {
		auto const x = ida_[static_cast<std::size_t>(i * ca_ + c)];
		auto const y = idb_[static_cast<std::size_t>(j * cb_ + d)];
		auto& slot = cache_[x * texts_b_.size() + y];
		if (slot < 0.0) { slot = similarity(texts_a_[x], texts_b_[y]); }
		return slot;
	}

	static double similarity(std::u32string const& a, std::u32string const& b) {
		if (a.empty() && b.empty()) { return 1.0; }
		if (a == b) { return 1.0; }
		return 2.0 * static_cast<double>(lcs_length(a, b)) / static_cast<double>(a.size() + b.size());
	}

  private:
	static std::vector<std::size_t> intern(Grid const& g, std::vector<std::u32string>& texts) {
		std::unordered_map<std::string, std::size_t> index;
		std::vector<std::size_t> ids;
		for (int r = 0; r < g.n_rows; ++r) {
			for (int c = 0; c < g.n_cols; ++c) {
				auto const& t = g.at(r, c).text;
				auto [it, inserted] = index.emplace(t, texts.size());
				if (inserted) { texts.push_back(unicode::to_u32(t)); }
				ids.push_back(it->second);
			}
		}
		return ids;
	}

	int ca_, cb_;
	std::vector<std::u32string> texts_a_, texts_b_;
	std::vector<std::size_t> ida_, idb_;
	mutable std::vector<double> cache_;
};

inline std::size_t choose2(std::size_t n) { return n * (n - 1) / 2; }

} // namespace detail

/// Seed budgets for the alternating refinement of the 2-D alignment.
struct GritsOptions {
	std::size_t single_seed_budget{400};
	std::size_t pair_seed_budget{400};
	int max_refinements{20};
};

/// Content GriTS: best factored 2-D substructure match between the cell grids, found by
/// row and column dynamic-programming alignment refined alternately to a fixed point from
/// several seeds; f = 2·score/(|A|+|B|) with |A| = rows·cols.
inline double grits_content(Grid const& a, Grid const& b, GritsOptions const& options = {}) {
	if (a.empty() && b.empty()) { return 1.0; }
	if (a.empty() || b.empty()) { return 0.0; }
	int const r1 = a.n_rows, c1 = a.n_cols, r2 = b.n_rows, c2 = b.n_cols;
	detail::CellReward const cell(a, b);
	using detail::Alignment;

	auto objective = [&](Alignment const& rows, Alignment const& cols) {
		double s = 0.0;
		for (std::size_t i = 0; i < rows.first.size(); ++i) {
			for (std::size_t k = 0; k < cols.first.size(); ++k) { s += cell(rows.first[i], cols.first[k], rows.second[i], cols.second[k]); }
		}
		return s;
	};
	auto rows_given = [&](Alignment const& cols) {
		return detail::align_1d(r1, r2, [&](int i, int j) {
			double s = 0.0;
			for (std::size_t k = 0; k < cols.first.size(); ++k) { s += cell(i, cols.first[k], j, cols.second[k]); }
			return s;
		});
	};
	auto cols_given = [&](Alignment const& rows) {
		return detail::align_1d(c1, c2, [&](int c, int d) {
			double s = 0.0;
			for (std::size_t k = 0; k < rows.first.size(); ++k) { s += cell(rows.first[k], c, rows.second[k], d); }
			return s;
		});
	};

	// factored alignment: each row pair rewarded by its best column alignment, and vice versa
	auto const rows = detail::align_1d(r1, r2, [&](int i, int j) {
		return detail::align_1d(c1, c2, [&](int c, int d) { return cell(i, c, j, d); }).score;
	});
	auto const cols = detail::align_1d(c1, c2, [&](int c, int d) {
		return detail::align_1d(r1, r2, [&](int i, int j) { return cell(i, c, j, d); }).score;
	});
	double best = objective(rows, cols);

	auto refine = [&](Alignment r, Alignment c) {
		for (int it = 0; it < options.max_refinements; ++it) {
			auto c_next = cols_given(r);
			best = std::max(best, objective(r, c_next));
			auto r_next = rows_given(c_next);
			best = std::max(best, objective(r_next, c_next));
			if (r_next.same_pairs(r) && c_next.same_pairs(c)) { break; }
			r = std::move(r_next);
			c = std::move(c_next);
		}
	};
	refine(rows, cols);
	refine(rows_given(cols), cols);

	auto const ur1 = static_cast<std::size_t>(r1), uc1 = static_cast<std::size_t>(c1);
	auto const ur2 = static_cast<std::size_t>(r2), uc2 = static_cast<std::size_t>(c2);
	if (ur1 * ur2 + uc1 * uc2 <= options.single_seed_budget) {
		for (int c = 0; c < c1; ++c) {
			for (int d = 0; d < c2; ++d) {
				Alignment seed{{c}, {d}, 0.0};
				refine(rows_given(seed), seed);
			}
		}
		for (int i = 0; i < r1; ++i) {
			for (int j = 0; j < r2; ++j) {
				Alignment seed{{i}, {j}, 0.0};
				refine(seed, cols_given(seed));
			}
		}
	}
	using detail::choose2;
	if (choose2(ur1) * choose2(ur2) + choose2(uc1) * choose2(uc2) <= options.pair_seed_budget) {
		for (int c = 0; c < c1; ++c) {
			for (int d = 0; d < c2; ++d) {
				for (int c_b = c + 1; c_b < c1; ++c_b) {
					for (int d_b = d + 1; d_b < c2; ++d_b) {
						Alignment seed{{c, c_b}, {d, d_b}, 0.0};
						refine(rows_given(seed), seed);
					}
				}
			}
		}
		for (int i = 0; i < r1; ++i) {
			for (int j = 0; j < r2; ++j) {
				for (int i_b = i + 1; i_b < r1; ++i_b) {
					for (int j_b = j + 1; j_b < r2; ++j_b) {
						Alignment seed{{i, i_b}, {j, j_b}, 0.0};
						refine(seed, cols_given(seed));
					}
				}
			}
		}
	}
	double const size = static_cast<double>(r1 * c1 + r2 * c2);
	return std::min(1.0, 2.0 * best / size);
}

/// Parses ground-truth table markup into its single grid.
inline Grid ground_truth_grid(GroundTruthTable const& table) {
	auto grids = extract_tables(table.html);
	if (grids.size() != 1) { throw DataError("ground-truth table markup must hold exactly one table, found " + std::to_string(grids.size())); }
	return std::move(grids.front());
}

struct TableScore {
	double grits{};
	std::optional<double> trm; // absent when record matching is unsupported for the table
	double gtrm{};
	std::optional<std::size_t> prediction; // index of the predicted grid scored against
};

/// Score of one ground-truth table against one predicted grid.
inline TableScore score_table_pair(Grid const& gt, bool trm_unsupported, Grid const& pred, GritsOptions const& options = {}) {
	TableScore s;
	s.grits = grits_content(gt, pred, options);
	if (trm_unsupported) {
		s.gtrm = s.grits;
	} else {
		s.trm = table_record_match(extract_records(gt), extract_records(pred));
		s.gtrm = 0.5 * (s.grits + *s.trm);
	}
	return s;
}

/// Best GTRM of a ground-truth table over the predicted grids; no grids scores 0.
inline TableScore gtrm(GroundTruthTable const& table, std::vector<Grid> const& pred_grids, GritsOptions const& options = {}) {
	auto const gt = ground_truth_grid(table);
	TableScore best;
	if (!table.trm_unsupported) { best.trm = 0.0; }
	for (std::size_t k = 0; k < pred_grids.size(); ++k) {
		auto s = score_table_pair(gt, table.trm_unsupported, pred_grids[k], options);
		if (!best.prediction || s.gtrm > best.gtrm) {
			s.prediction = k;
			best = s;
		}
	}
	return best;
}

struct TablePageScore {
	double score{};
	std::vector<TableScore> tables; // one per ground-truth table
};

/// Mean GTRM over the page's tables. Pairs are assigned greedily by descending GTRM (ties by
/// ground-truth then prediction index) so each predicted grid serves at most one table.
inline TablePageScore score_table_page(GroundTruthPage const& page, ParsedDocument const& doc, GritsOptions const& options = {}) {
	if (page.tables.empty()) { throw DataError(page.page_id, "tables", "no ground-truth tables"); }
	std::vector<Grid> gts;
	for (auto const& t : page.tables) { gts.push_back(ground_truth_grid(t)); }
	auto const ng = gts.size();
	auto const np = doc.tables.size();

	struct Candidate {
		std::size_t g, p;
		TableScore s;
	};
	std::vector<Candidate> all;
	for (std::size_t g = 0; g < ng; ++g) {
		for (std::size_t p = 0; p < np; ++p) { all.push_back({g, p, score_table_pair(gts[g], page.tables[g].trm_unsupported, doc.tables[p], options)}); }
	}
	std::stable_sort(all.begin(), all.end(), [](Candidate const& x, Candidate const& y) { return x.s.gtrm > y.s.gtrm; });

	TablePageScore out;
	out.tables.resize(ng);
	for (std::size_t g = 0; g < ng; ++g) {
		if (!page.tables[g].trm_unsupported) { out.tables[g].trm = 0.0; }
	}
	std::vector<bool> g_done(ng, false), p_used(np, false);
	for (auto& c : all) {
		if (g_done[c.g] || p_used[c.p]) { continue; }
		g_done[c.g] = true;
		p_used[c.p] = true;
		c.s.prediction = c.p;
		out.tables[c.g] = c.s;
	}
	double sum = 0.0;
	for (auto const& t : out.tables) { sum += t.gtrm; }
	out.score = sum / static_cast<double>(ng);
	return out;
}

} // namespace docscore
