// docscore: document-parser evaluation toolkit
// Requirements: C++20

#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <vector>

namespace docscore {

struct Assignment {
	/// row_to_col[i] is the column matched to row i, or -1.
	std::vector<int> row_to_col;
	double total{};
};

/// Maximum-weight one-to-one assignment on a dense rows x cols weight matrix (Kuhn-Munkres
/// with potentials, O(n^3)). Unmatched rows are allowed when the matrix is rectangular;
/// weights are expected to be non-negative.
template <typename Weight>
Assignment max_weight_assignment(std::size_t rows, std::size_t cols, Weight&& weight) {
	Assignment result;
	result.row_to_col.assign(rows, -1);
	if (rows == 0 || cols == 0) { return result; }

	std::size_t const n = std::max(rows, cols);
	std::vector<double> cost(n * n, 0.0);
	double max_w = 0.0;
	for (std::size_t i = 0; i < rows; ++i) {
		for (std::size_t j = 0; j < cols; ++j) {
			double const w = weight(i, j);
			cost[i * n + j] = w;
			max_w = std::max(max_w, w);
		}
	}
	// minimize (max_w - w) over the padded square matrix; padding has weight 0
	for (auto& c : cost) { c = max_w - c; }

	double const inf = std::numeric_limits<double>::infinity();
	std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
	std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
	for (std::size_t i = 1; i <= n; ++i) {
		p[0] = i;
		std::size_t j0 = 0;
		std::vector<double> minv(n + 1, inf);
		std::vector<char> used(n + 1, 0);
		do {
			used[j0] = 1;
			std::size_t const i0 = p[j0];
			double delta = inf;
			std::size_t j1 = 0;
			for (std::size_t j = 1; j <= n; ++j) {
				if (used[j]) { continue; }
				double const cur = cost[(i0 - 1) * n + (j - 1)] - u[i0] - v[j];
				if (cur < minv[j]) {
					minv[j] = cur;
					way[j] = j0;
				}
				if (minv[j] < delta) {
					delta = minv[j];
					j1 = j;
				}
			}
			for (std::size_t j = 0; j <= n; ++j) {
				if (used[j]) {
					u[p[j]] += delta;
					v[j] -= delta;
				} else {
					minv[j] -= delta;
				}
			}
			j0 = j1;
		} while (p[j0] != 0);
		do {
			std::size_t const j1 = way[j0];
			p[j0] = p[j1];
			j0 = j1;
		} while (j0 != 0);
	}

	for (std::size_t j = 1; j <= n; ++j) {
		std::size_t const i = p[j] - 1;
		std::size_t const c = j - 1;
		if (i < rows && c < cols) { result.row_to_col[i] = static_cast<int>(c); }
	}
	for (std::size_t i = 0; i < rows; ++i) {
		if (result.row_to_col[i] >= 0) { result.total += weight(i, static_cast<std::size_t>(result.row_to_col[i])); }
	}
	return result;
}

} // namespace docscore
