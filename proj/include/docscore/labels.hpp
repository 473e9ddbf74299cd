// docscore: document-parser evaluation toolkit
// Requirements: C++20

#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>

#include "model.hpp"
#include "text.hpp"

namespace docscore {

/// Provider label -> common label table. Keys are matched case-insensitively with
/// '_' and ' ' treated as '-'.
class LabelMap {
  public:
	LabelMap() = default;

	static std::string key(std::string_view provider_label) {
		auto k = detail::to_lower_ascii(detail::trim_view(provider_label));
		for (auto& c : k) {
			if (c == '_' || c == ' ') { c = '-'; }
		}
		return k;
	}

	/// Mapping for the eleven-category layout vocabulary used by common VLM parsing prompts,
	/// plus frequent synonyms emitted by specialized parsers.
	static LabelMap defaults() {
		LabelMap m;
		static constexpr std::pair<std::string_view, Label> entries[] = {
			{"text", Label::text},
			{"table", Label::table},
			{"picture", Label::picture},
			{"page-header", Label::page_header},
			{"page-footer", Label::page_footer},
			{"caption", Label::text},
			{"footnote", Label::text},
			{"formula", Label::text},
			{"list-item", Label::text},
			{"section-header", Label::text},
			{"title", Label::text},
			{"paragraph", Label::text},
			{"heading", Label::text},
			{"header", Label::page_header},
			{"footer", Label::page_footer},
			{"page-number", Label::page_footer},
			{"list", Label::text},
			{"equation", Label::text},
			{"code", Label::text},
			{"key-value", Label::text},
			{"figure", Label::picture},
			{"image", Label::picture},
			{"chart", Label::picture},
			{"logo", Label::picture},
		};
		for (auto const& [k, v] : entries) { m.set(k, v); }
		return m;
	}

	void set(std::string_view provider_label, Label common) { map_[key(provider_label)] = common; }

	/// Total: unknown labels collapse to Label::unmapped.
	Label collapse(std::string_view provider_label) const {
		if (auto it = map_.find(key(provider_label)); it != map_.end()) { return it->second; }
		return Label::unmapped;
	}

	/// Reads `provider = Common` lines ('#' starts a comment, ':' also accepted as separator).
	void merge_from_stream(std::istream& in, std::string const& origin = "label map") {
		std::string line;
		int lineno = 0;
		while (std::getline(in, line)) {
			++lineno;
			auto view = std::string_view(line);
			if (auto hash = view.find('#'); hash != std::string_view::npos) { view = view.substr(0, hash); }
			view = detail::trim_view(view);
			if (view.empty()) { continue; }
			auto sep = view.find('=');
			if (sep == std::string_view::npos) { sep = view.find(':'); }
			if (sep == std::string_view::npos) {
				throw DataError(origin + ":" + std::to_string(lineno) + ": expected 'provider = Common'");
			}
			auto const lhs = detail::trim_view(view.substr(0, sep));
			auto const rhs = detail::trim_view(view.substr(sep + 1));
			auto const common = collapse_common(rhs);
			if (!common) {
				throw DataError(origin + ":" + std::to_string(lineno) + ": unknown common label '" + std::string(rhs) + "'");
			}
			set(lhs, *common);
		}
	}

	void merge_from_file(std::string const& path) {
		std::ifstream in(path);
		if (!in) { throw DataError("cannot read label map '" + path + "'"); }
		merge_from_stream(in, path);
	}

	std::map<std::string, Label> const& entries() const { return map_; }

  private:
	static std::optional<Label> collapse_common(std::string_view name) {
		auto const k = key(name);
		for (auto const& [label, n] : label_names) {
			if (key(n) == k) { return label; }
		}
		return std::nullopt;
	}

	std::map<std::string, Label> map_;
};

inline Label collapse_label(std::string_view provider_label, LabelMap const& mapping) {
	return mapping.collapse(provider_label);
}

} // namespace docscore
