// docscore: document-parser evaluation toolkit
// Requirements: C++20, ICU (common library)

#pragma once

#include <string>
#include <string_view>

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

namespace docscore::unicode {

inline std::u32string to_u32(std::string_view s) {
	std::u32string out;
	out.reserve(s.size());
	std::size_t i = 0;
	while (i < s.size()) {
		auto const c = static_cast<unsigned char>(s[i]);
		char32_t cp = 0xFFFD;
		std::size_t len = 1;
		if (c < 0x80) {
			cp = c;
		} else if ((c >> 5) == 0x6 && i + 1 < s.size()) {
			cp = ((c & 0x1Fu) << 6) | (static_cast<unsigned char>(s[i + 1]) & 0x3Fu);
			len = 2;
		} else if ((c >> 4) == 0xE && i + 2 < s.size()) {
			cp = ((c & 0x0Fu) << 12) | ((static_cast<unsigned char>(s[i + 1]) & 0x3Fu) << 6) |
				 (static_cast<unsigned char>(s[i + 2]) & 0x3Fu);
			len = 3;
		} else if ((c >> 3) == 0x1E && i + 3 < s.size()) {
			cp = ((c & 0x07u) << 18) | ((static_cast<unsigned char>(s[i + 1]) & 0x3Fu) << 12) |
				 ((static_cast<unsigned char>(s[i + 2]) & 0x3Fu) << 6) | (static_cast<unsigned char>(s[i + 3]) & 0x3Fu);
			len = 4;
		}
		out.push_back(cp);
		i += len;
	}
	return out;
}

inline void append_utf8(std::string& out, char32_t cp) {
	if (cp < 0x80) {
		out.push_back(static_cast<char>(cp));
	} else if (cp < 0x800) {
		out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
		out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
	} else if (cp < 0x10000) {
		out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
		out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
		out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
	} else {
		out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
		out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
		out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
		out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
	}
}

inline std::string to_utf8(std::u32string_view s) {
	std::string out;
	out.reserve(s.size());
	for (char32_t cp : s) { append_utf8(out, cp); }
	return out;
}

/// True when every byte sequence in `s` is well-formed UTF-8.
inline bool is_valid_utf8(std::string_view s) {
	std::size_t i = 0;
	while (i < s.size()) {
		auto const c = static_cast<unsigned char>(s[i]);
		std::size_t len = 0;
		if (c < 0x80) {
			len = 1;
		} else if ((c >> 5) == 0x6) {
			len = 2;
		} else if ((c >> 4) == 0xE) {
			len = 3;
		} else if ((c >> 3) == 0x1E) {
			len = 4;
		} else {
			return false;
		}
		if (i + len > s.size()) { return false; }
		for (std::size_t k = 1; k < len; ++k) {
			if ((static_cast<unsigned char>(s[i + k]) >> 6) != 0x2) { return false; }
		}
		i += len;
	}
	return true;
}

/// Unicode compatibility composition (NFKC).
inline std::string nfkc(std::string_view s) {
	UErrorCode status = U_ZERO_ERROR;
	auto const* norm = icu::Normalizer2::getNFKCInstance(status);
	if (U_FAILURE(status)) { return std::string(s); }
	auto const src = icu::UnicodeString::fromUTF8(icu::StringPiece(s.data(), static_cast<int32_t>(s.size())));
	auto const dst = norm->normalize(src, status);
	if (U_FAILURE(status)) { return std::string(s); }
	std::string out;
	dst.toUTF8String(out);
	return out;
}

inline std::string lower(std::string_view s) {
	auto str = icu::UnicodeString::fromUTF8(icu::StringPiece(s.data(), static_cast<int32_t>(s.size())));
	str.toLower();
	std::string out;
	str.toUTF8String(out);
	return out;
}

inline bool is_space(char32_t cp) { return u_isUWhiteSpace(static_cast<UChar32>(cp)) != 0; }
inline bool is_upper(char32_t cp) { return u_isupper(static_cast<UChar32>(cp)) != 0; }
inline bool is_alnum(char32_t cp) { return u_isalnum(static_cast<UChar32>(cp)) != 0; }
inline bool is_digit(char32_t cp) { return u_isdigit(static_cast<UChar32>(cp)) != 0; }

} // namespace docscore::unicode
