// docscore: document-parser evaluation toolkit
// Requirements: C++20

#pragma once

#include <algorithm>
#include <span>
#include <vector>

namespace docscore {

/// Axis-aligned rectangle in normalized page coordinates (origin top-left, y grows downward).
struct Box {
	double x1{};
	double y1{};
	double x2{};
	double y2{};

	constexpr double width() const { return std::max(0.0, x2 - x1); }
	constexpr double height() const { return std::max(0.0, y2 - y1); }
	constexpr double area() const { return width() * height(); }
	constexpr double center_y() const { return 0.5 * (y1 + y2); }
	constexpr bool valid() const { return x1 < x2 && y1 < y2; }

	friend constexpr bool operator==(Box const&, Box const&) = default;
};

constexpr double intersection_area(Box const& a, Box const& b) {
	double const w = std::min(a.x2, b.x2) - std::max(a.x1, b.x1);
	double const h = std::min(a.y2, b.y2) - std::max(a.y1, b.y1);
	return (w > 0.0 && h > 0.0) ? w * h : 0.0;
}

/// Intersection over the area of the first argument: |a ∩ b| / |a|. Zero-area `a` gives 0.
constexpr double ioa(Box const& a, Box const& b) {
	double const area = a.area();
	if (area <= 0.0) { return 0.0; }
	return intersection_area(a, b) / area;
}

constexpr double iou(Box const& a, Box const& b) {
	double const inter = intersection_area(a, b);
	double const uni = a.area() + b.area() - inter;
	return uni > 0.0 ? inter / uni : 0.0;
}

/// Smallest rectangle enclosing both.
constexpr Box bounding_union(Box const& a, Box const& b) {
	return {std::min(a.x1, b.x1), std::min(a.y1, b.y1), std::max(a.x2, b.x2), std::max(a.y2, b.y2)};
}

/// Closed-threshold comparison tolerant of the last few ulps of ratio arithmetic.
constexpr bool meets(double value, double threshold) { return value >= threshold - 1e-12; }

/// Area of the union of a set of rectangles (coordinate compression).
inline double union_area(std::span<Box const> boxes) {
	std::vector<double> xs, ys;
	for (auto const& b : boxes) {
		if (!b.valid()) { continue; }
		xs.push_back(b.x1);
		xs.push_back(b.x2);
		ys.push_back(b.y1);
		ys.push_back(b.y2);
	}
	std::sort(xs.begin(), xs.end());
	xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
	std::sort(ys.begin(), ys.end());
	ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
	double total = 0.0;
	for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
		for (std::size_t j = 0; j + 1 < ys.size(); ++j) {
			double const cx = 0.5 * (xs[i] + xs[i + 1]);
			double const cy = 0.5 * (ys[j] + ys[j + 1]);
			bool const covered = std::any_of(boxes.begin(), boxes.end(), [&](Box const& b) {
				return b.valid() && b.x1 <= cx && cx <= b.x2 && b.y1 <= cy && cy <= b.y2;
			});
			if (covered) { total += (xs[i + 1] - xs[i]) * (ys[j + 1] - ys[j]); }
		}
	}
	return total;
}

} // namespace docscore
