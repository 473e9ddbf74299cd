// docscore: document-parser evaluation toolkit
// Requirements: C++20

#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "document.hpp"
#include "geometry.hpp"
#include "model.hpp"
#include "text.hpp"

namespace docscore {

struct GroundingOptions {
	double localization_gt{0.50};	// ioa(gt, pred)
	double localization_pred{0.20}; // ioa(pred, gt)
	double attribution_candidate{0.30};
	double attribution_f1{0.80};
	double explicit_recall{0.80};
	double furniture_member{0.20}; // ioa(pred, band)
	int order_neighbors{3};
};

enum class BandSide { top, bottom };

struct FurnitureBand {
	BandSide side{BandSide::top};
	Box gt_union_box;
	std::vector<std::size_t> member_predictions; // source order
};

struct ElementVerdict {
	std::size_t element{};
	Label label{Label::text};
	bool L{};
	bool C{};
	bool E{};
	std::optional<bool> A; // set only when E
	bool pass{};
	bool furniture{};
	std::optional<std::size_t> matched_prediction;
	std::vector<std::size_t> attribution_span;
	double attribution_score{}; // F1, or recall for explicit elements
	std::vector<std::string> reasons;
};

using TokenBag = std::map<std::string, std::size_t>;

inline TokenBag token_bag(std::vector<std::string> const& tokens) {
	TokenBag bag;
	for (auto const& t : tokens) { ++bag[t]; }
	return bag;
}

inline std::size_t bag_size(TokenBag const& b) {
	std::size_t n = 0;
	for (auto const& [w, c] : b) { n += c; }
	return n;
}

/// Multiset intersection size.
inline std::size_t bag_overlap(TokenBag const& a, TokenBag const& b) {
	std::size_t n = 0;
	for (auto const& [w, c] : a) {
		if (auto it = b.find(w); it != b.end()) { n += std::min(c, it->second); }
	}
	return n;
}

inline void bag_add(TokenBag& into, TokenBag const& from) {
	for (auto const& [w, c] : from) { into[w] += c; }
}

/// Merge-aware filtering: prediction tokens explained by neighbouring ground truth are
/// dropped, except where the target itself needs them. P'(w) = max(min(P, T), P - N).
inline TokenBag merge_filter(TokenBag const& pred, TokenBag const& target, TokenBag const& neighbours) {
	TokenBag out;
	for (auto const& [w, p] : pred) {
		auto const t = target.contains(w) ? target.at(w) : 0;
		auto const n = neighbours.contains(w) ? neighbours.at(w) : 0;
		auto const keep = std::max(std::min(p, t), p > n ? p - n : 0);
		if (keep > 0) { out[w] = keep; }
	}
	return out;
}

/// Best prediction meeting both localization thresholds, by ioa(gt, pred).
inline std::optional<std::size_t> match_localization(Box const& gt, std::vector<Block> const& preds, GroundingOptions const& options = {}) {
	std::optional<std::size_t> best;
	double best_ioa = -1.0;
	for (std::size_t i = 0; i < preds.size(); ++i) {
		if (!preds[i].box) { continue; }
		double const a = ioa(gt, *preds[i].box);
		if (!meets(a, options.localization_gt) || !meets(ioa(*preds[i].box, gt), options.localization_pred)) { continue; }
		if (a > best_ioa) {
			best_ioa = a;
			best = i;
		}
	}
	return best;
}

inline bool is_furniture(Label l) { return l == Label::page_header || l == Label::page_footer; }

/// Union of the side's non-ignored furniture boxes and the predictions overlapping it.
inline std::optional<FurnitureBand> furniture_band(BandSide side, std::vector<LayoutElement> const& elements, std::vector<Block> const& preds,
												   GroundingOptions const& options = {}) {
	Label const label = side == BandSide::top ? Label::page_header : Label::page_footer;
	std::optional<Box> band;
	for (auto const& e : elements) {
		if (e.label != label || e.flags.ignore) { continue; }
		band = band ? bounding_union(*band, e.box) : e.box;
	}
	if (!band) { return std::nullopt; }
	FurnitureBand fb{side, *band, {}};
	for (std::size_t i = 0; i < preds.size(); ++i) {
		if (preds[i].box && meets(ioa(*preds[i].box, *band), options.furniture_member)) { fb.member_predictions.push_back(i); }
	}
	return fb;
}

namespace detail {

struct SpanScore {
	std::vector<std::size_t> span;
	double score{-1.0};
	double f1{};
	double recall{};
};

/// Best contiguous run of `candidates` (source order) against the element's tokens.
inline SpanScore best_attribution_span(std::size_t self, std::vector<LayoutElement> const& elements, std::vector<TokenBag> const& gt_bags,
									   std::vector<Block> const& preds, std::vector<TokenBag> const& pred_bags, std::vector<std::size_t> const& candidates,
									   bool recall_only, GroundingOptions const& options) {
	SpanScore best;
	auto const& target = gt_bags[self];
	std::size_t const t_size = bag_size(target);
	if (t_size == 0) { return best; }
	for (std::size_t i = 0; i < candidates.size(); ++i) {
		TokenBag pred, neighbours;
		std::vector<bool> counted(elements.size(), false);
		for (std::size_t j = i; j < candidates.size(); ++j) {
			auto const p = candidates[j];
			bag_add(pred, pred_bags[p]);
			for (std::size_t g = 0; g < elements.size(); ++g) {
				if (g == self || counted[g] || !preds[p].box) { continue; }
				if (meets(ioa(elements[g].box, *preds[p].box), options.attribution_candidate)) {
					counted[g] = true;
					bag_add(neighbours, gt_bags[g]);
				}
			}
			auto const filtered = merge_filter(pred, target, neighbours);
			auto const inter = static_cast<double>(bag_overlap(filtered, target));
			double const f1 = 2.0 * inter / static_cast<double>(bag_size(filtered) + t_size);
			double const recall = inter / static_cast<double>(t_size);
			double const score = recall_only ? recall : f1;
			if (score > best.score) {
				best.score = score;
				best.f1 = f1;
				best.recall = recall;
				best.span.assign(candidates.begin() + static_cast<std::ptrdiff_t>(i), candidates.begin() + static_cast<std::ptrdiff_t>(j) + 1);
			}
		}
	}
	return best;
}

inline std::string fmt(double v) {
	char buf[32];
	std::snprintf(buf, sizeof buf, "%.3f", v);
	return buf;
}

} // namespace detail

/// Attribution totals summed over pages; the ratios are micro averages.
struct AttributionTotals {
	std::size_t lap_num{};
	std::size_t lap_den{};
	std::size_t lar_num{};
	std::size_t lar_den{};

	AttributionTotals& operator+=(AttributionTotals const& o) {
		lap_num += o.lap_num;
		lap_den += o.lap_den;
		lar_num += o.lar_num;
		lar_den += o.lar_den;
		return *this;
	}
	std::optional<double> lap() const {
		if (lap_den == 0) { return std::nullopt; }
		return static_cast<double>(lap_num) / static_cast<double>(lap_den);
	}
	std::optional<double> lar() const {
		if (lar_den == 0) { return std::nullopt; }
		return static_cast<double>(lar_num) / static_cast<double>(lar_den);
	}
	std::optional<double> af1() const {
		auto const p = lap(), r = lar();
		if (!p || !r) { return std::nullopt; }
		if (*p + *r <= 0.0) { return 0.0; }
		return 2.0 * *p * *r / (*p + *r);
	}
};

/// Elements whose tokens take part in the LAP/LAR diagnostics.
inline bool attribution_gradeable(LayoutElement const& e) {
	return !e.flags.ignore && !e.flags.caption && !e.flags.formula && e.content && !comparison_tokens(*e.content).empty();
}

/// Token-weighted attribution precision and recall of one page.
inline AttributionTotals attribution_totals(std::vector<LayoutElement> const& elements, std::vector<Block> const& preds,
											GroundingOptions const& options = {}) {
	AttributionTotals t;
	std::vector<TokenBag> gt_bags, pred_bags;
	for (auto const& e : elements) { gt_bags.push_back(attribution_gradeable(e) ? token_bag(comparison_tokens(*e.content)) : TokenBag{}); }
	for (auto const& p : preds) { pred_bags.push_back(token_bag(p.tokens)); }
	auto overlaps = [&](std::size_t g, std::size_t p) {
		return preds[p].box && meets(ioa(elements[g].box, *preds[p].box), options.attribution_candidate);
	};
	for (std::size_t g = 0; g < elements.size(); ++g) {
		if (!attribution_gradeable(elements[g])) { continue; }
		TokenBag union_bag;
		for (std::size_t p = 0; p < preds.size(); ++p) {
			if (overlaps(g, p)) { bag_add(union_bag, pred_bags[p]); }
		}
		t.lar_num += bag_overlap(gt_bags[g], union_bag);
		t.lar_den += bag_size(gt_bags[g]);
	}
	for (std::size_t p = 0; p < preds.size(); ++p) {
		auto const size = bag_size(pred_bags[p]);
		if (size == 0) { continue; }
		bool any = false, regular = false;
		TokenBag union_bag;
		for (std::size_t g = 0; g < elements.size(); ++g) {
			if (!overlaps(g, p)) { continue; }
			any = true;
			if (!attribution_gradeable(elements[g])) { continue; }
			regular = regular || !elements[g].flags.explicit_content;
			bag_add(union_bag, gt_bags[g]);
		}
		if (any && !regular) { continue; } // only explicit or ungraded regions underneath
		t.lap_num += bag_overlap(pred_bags[p], union_bag);
		t.lap_den += size;
	}
	return t;
}

/// Local order agreement: each eligible element is compared with its nearest eligible
/// neighbours in ground-truth order (ties: previous first); it passes when every pair keeps
/// its relative order in the prediction. Elements sharing one prediction agree.
inline double reading_order_score(std::vector<std::pair<int, std::size_t>> gt_order_and_position, int neighbors = 3) {
	auto& v = gt_order_and_position;
	if (v.size() < 2) { return 1.0; }
	std::stable_sort(v.begin(), v.end(), [](auto const& a, auto const& b) { return a.first < b.first; });
	auto const n = static_cast<long>(v.size());
	std::size_t passed = 0;
	for (long i = 0; i < n; ++i) {
		bool ok = true;
		int checked = 0;
		for (long d = 1; checked < neighbors && (i - d >= 0 || i + d < n); ++d) {
			for (long j : {i - d, i + d}) {
				if (j < 0 || j >= n || checked >= neighbors) { continue; }
				++checked;
				auto const pi = v[static_cast<std::size_t>(i)].second, pj = v[static_cast<std::size_t>(j)].second;
				if (pi != pj && ((j < i) != (pj < pi))) { ok = false; }
			}
		}
		passed += ok ? 1 : 0;
	}
	return static_cast<double>(passed) / static_cast<double>(n);
}

struct GroundingPageScore {
	double epr{};
	std::size_t n{};
	std::size_t passed{};
	double localization_rate{};
	double classification_rate{};
	double reading_order{1.0};
	std::vector<ElementVerdict> verdicts; // non-ignored elements, in element order
	std::vector<FurnitureBand> bands;
	AttributionTotals attribution;
};

/// Element Pass Rate: Pass = L·C·((1-E) + E·A) averaged over non-ignored elements.
inline GroundingPageScore score_grounding(std::vector<LayoutElement> const& elements, std::vector<Block> const& preds, GroundingOptions const& options = {}) {
	GroundingPageScore out;
	std::vector<TokenBag> gt_bags, pred_bags;
	for (auto const& e : elements) { gt_bags.push_back(e.content ? token_bag(comparison_tokens(*e.content)) : TokenBag{}); }
	for (auto const& p : preds) { pred_bags.push_back(token_bag(p.tokens)); }

	std::map<BandSide, FurnitureBand> bands;
	for (auto side : {BandSide::top, BandSide::bottom}) {
		if (auto b = furniture_band(side, elements, preds, options)) {
			bands.emplace(side, *b);
			out.bands.push_back(std::move(*b));
		}
	}

	for (std::size_t g = 0; g < elements.size(); ++g) {
		auto const& e = elements[g];
		if (e.flags.ignore) { continue; }
		ElementVerdict v;
		v.element = g;
		v.label = e.label;
		v.E = e.attribution_applicable() && !gt_bags[g].empty();
		std::vector<std::size_t> candidates;

		if (is_furniture(e.label)) {
			v.furniture = true;
			auto const& band = bands.at(e.label == Label::page_header ? BandSide::top : BandSide::bottom);
			auto const& members = band.member_predictions;
			if (!members.empty()) {
				Box u = *preds[members.front()].box;
				for (auto m : members) { u = bounding_union(u, *preds[m].box); }
				v.L = meets(ioa(band.gt_union_box, u), options.localization_gt) && meets(ioa(u, band.gt_union_box), options.localization_pred);
			}
			if (v.L) {
				auto rep = members.front();
				double best = -1.0;
				for (auto m : members) {
					if (double const a = ioa(e.box, *preds[m].box); a > best) {
						best = a;
						rep = m;
					}
				}
				if (best <= 0.0) {
					for (auto m : members) {
						if (double const a = ioa(band.gt_union_box, *preds[m].box); a > best) {
							best = a;
							rep = m;
						}
					}
				}
				v.matched_prediction = rep;
			}
			candidates = members;
			if (!v.L) { v.reasons.push_back(members.empty() ? "no prediction in furniture band" : "furniture band union misses thresholds"); }
		} else {
			v.matched_prediction = match_localization(e.box, preds, options);
			v.L = v.matched_prediction.has_value();
			for (std::size_t p = 0; p < preds.size(); ++p) {
				if (preds[p].box && meets(ioa(e.box, *preds[p].box), options.attribution_candidate)) { candidates.push_back(p); }
			}
			if (!v.L) { v.reasons.push_back("no prediction meets both IoA thresholds"); }
		}

		if (v.matched_prediction) {
			auto const pl = preds[*v.matched_prediction].label;
			v.C = pl != Label::unmapped && pl == e.label;
			if (!v.C) { v.reasons.push_back("label " + std::string(to_string(pl)) + " != " + std::string(to_string(e.label))); }
		}

		if (v.E) {
			bool const recall_only = e.flags.explicit_content;
			auto const span = detail::best_attribution_span(g, elements, gt_bags, preds, pred_bags, candidates, recall_only, options);
			double const need = recall_only ? options.explicit_recall : options.attribution_f1;
			v.attribution_score = std::max(0.0, span.score);
			v.A = span.score >= 0.0 && meets(span.score, need);
			v.attribution_span = span.span;
			if (!*v.A) {
				v.reasons.push_back(candidates.empty() ? "no attribution candidate"
													   : std::string(recall_only ? "token recall " : "token F1 ") + detail::fmt(v.attribution_score) + " below threshold");
			}
		}
		v.pass = v.L && v.C && (!v.E || v.A.value_or(false));
		out.verdicts.push_back(std::move(v));
	}

	out.n = out.verdicts.size();
	if (out.n == 0) { throw DataError("layout page has no scorable elements"); }
	std::size_t l = 0, c = 0;
	std::vector<std::pair<int, std::size_t>> order;
	for (auto const& v : out.verdicts) {
		out.passed += v.pass ? 1 : 0;
		l += v.L ? 1 : 0;
		c += v.C ? 1 : 0;
		auto const& e = elements[v.element];
		if (v.L && (!v.E || v.A.value_or(false)) && e.order_index && v.matched_prediction) { order.emplace_back(*e.order_index, *v.matched_prediction); }
	}
	auto const n = static_cast<double>(out.n);
	out.epr = static_cast<double>(out.passed) / n;
	out.localization_rate = static_cast<double>(l) / n;
	out.classification_rate = static_cast<double>(c) / n;
	out.reading_order = reading_order_score(std::move(order), options.order_neighbors);
	out.attribution = attribution_totals(elements, preds, options);
	return out;
}

inline GroundingPageScore score_grounding(GroundTruthPage const& page, ParsedDocument const& doc, GroundingOptions const& options = {}) {
	if (page.elements.empty()) { throw DataError(page.page_id, "elements", "no layout elements"); }
	return score_grounding(page.elements, doc.blocks, options);
}

/// One image of a detection evaluation: ground truth and predicted blocks.
struct DetectionImage {
	std::vector<LayoutElement> const* elements{};
	std::vector<Block> const* predictions{};
};

inline constexpr int map_thresholds = 10;

inline double map_threshold(int k) { return (10.0 + k) / 20.0; }

/// COCO-style mAP@[.50:.95]: per class, detections ranked by confidence (or by area when any
/// confidence is missing) are greedily matched by IoU; AP uses 101-point interpolation and is
/// averaged over thresholds, then over the classes present in the ground truth. Ignored
/// ground truth absorbs matching detections without scoring them. Unmapped predictions are
/// dropped. Absent when no image has scorable ground truth.
inline std::optional<double> coco_map(std::span<DetectionImage const> images) {
	bool all_confident = true;
	std::vector<Label> classes;
	for (auto const& img : images) {
		for (auto const& p : *img.predictions) {
			if (p.box && p.label != Label::unmapped && !p.confidence) { all_confident = false; }
		}
		for (auto const& e : *img.elements) {
			if (!e.flags.ignore && std::find(classes.begin(), classes.end(), e.label) == classes.end()) { classes.push_back(e.label); }
		}
	}
	if (classes.empty()) { return std::nullopt; }
	std::sort(classes.begin(), classes.end());

	struct Det {
		std::size_t image;
		std::size_t index;
		double key;
	};
	double total = 0.0;
	for (auto cls : classes) {
		std::vector<Det> dets;
		std::size_t npos = 0;
		for (std::size_t i = 0; i < images.size(); ++i) {
			auto const& preds = *images[i].predictions;
			for (std::size_t p = 0; p < preds.size(); ++p) {
				if (!preds[p].box || preds[p].label != cls) { continue; }
				dets.push_back({i, p, all_confident ? *preds[p].confidence : preds[p].box->area()});
			}
			for (auto const& e : *images[i].elements) { npos += (!e.flags.ignore && e.label == cls) ? 1 : 0; }
		}
		std::stable_sort(dets.begin(), dets.end(), [](Det const& a, Det const& b) { return a.key > b.key; });

		double ap_sum = 0.0;
		for (int k = 0; k < map_thresholds; ++k) {
			double const t = map_threshold(k);
			std::vector<std::vector<bool>> used(images.size());
			for (std::size_t i = 0; i < images.size(); ++i) { used[i].assign(images[i].elements->size(), false); }
			std::vector<double> precision, recall;
			std::size_t tp = 0, fp = 0;
			for (auto const& d : dets) {
				auto const& elements = *images[d.image].elements;
				auto const& box = *(*images[d.image].predictions)[d.index].box;
				std::optional<std::size_t> best;
				double best_iou = -1.0;
				bool absorbed = false;
				for (std::size_t g = 0; g < elements.size(); ++g) {
					if (elements[g].label != cls) { continue; }
					double const o = iou(elements[g].box, box);
					if (!meets(o, t)) { continue; }
					if (elements[g].flags.ignore) {
						absorbed = true;
					} else if (!used[d.image][g] && o > best_iou) {
						best_iou = o;
						best = g;
					}
				}
				if (best) {
					used[d.image][*best] = true;
					++tp;
				} else if (absorbed) {
					continue;
				} else {
					++fp;
				}
				precision.push_back(static_cast<double>(tp) / static_cast<double>(tp + fp));
				recall.push_back(static_cast<double>(tp) / static_cast<double>(npos));
			}
			for (std::size_t i = precision.size(); i-- > 1;) { precision[i - 1] = std::max(precision[i - 1], precision[i]); }
			double ap = 0.0;
			for (int r = 0; r <= 100; ++r) {
				double const level = r / 100.0;
				auto it = std::find_if(recall.begin(), recall.end(), [&](double x) { return meets(x, level); });
				if (it != recall.end()) { ap += precision[static_cast<std::size_t>(it - recall.begin())]; }
			}
			ap_sum += ap / 101.0;
		}
		total += ap_sum / map_thresholds;
	}
	return total / static_cast<double>(classes.size());
}

inline std::optional<double> coco_map(std::vector<LayoutElement> const& elements, std::vector<Block> const& preds) {
	DetectionImage const img{&elements, &preds};
	return coco_map(std::span<DetectionImage const>(&img, 1));
}

} // namespace docscore
