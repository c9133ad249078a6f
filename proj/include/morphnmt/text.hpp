#pragma once

#include "morphnmt/common.hpp"

#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace morphnmt {

// A tokenized sentence. Tokens are UTF-8, non-empty, and contain no
// whitespace or control characters.
struct Sentence {
  std::vector<std::string> tokens;

  bool empty() const { return tokens.empty(); }
  std::size_t size() const { return tokens.size(); }
  bool operator==(const Sentence&) const = default;
};

namespace utf8 {

// Decodes one code point starting at `pos`. Returns the code point and
// advances `pos`, or nullopt on malformed input (pos untouched).
inline std::optional<char32_t> decode_at(std::string_view s, std::size_t& pos) {
  if (pos >= s.size()) return std::nullopt;
  const unsigned char b0 = static_cast<unsigned char>(s[pos]);
  std::size_t len;
  char32_t cp;
  if (b0 < 0x80) {
    len = 1;
    cp = b0;
  } else if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    return std::nullopt;
  }
  if (pos + len > s.size()) return std::nullopt;
  for (std::size_t i = 1; i < len; ++i) {
    const unsigned char b = static_cast<unsigned char>(s[pos + i]);
    if ((b & 0xC0) != 0x80) return std::nullopt;
    cp = (cp << 6) | (b & 0x3F);
  }
  // Reject overlong encodings and surrogate range.
  static constexpr char32_t kMin[5] = {0, 0, 0x80, 0x800, 0x10000};
  if (cp < kMin[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF))
    return std::nullopt;
  pos += len;
  return cp;
}

inline void append(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

// Offset of the first malformed byte, or npos if the input is valid UTF-8.
inline std::size_t first_invalid(std::string_view s) {
  std::size_t pos = 0;
  while (pos < s.size()) {
    if (!decode_at(s, pos)) return pos;
  }
  return std::string_view::npos;
}

inline std::u32string to_u32(std::string_view s) {
  std::u32string out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    auto cp = decode_at(s, pos);
    require(cp.has_value(), "invalid UTF-8 at byte " + std::to_string(pos));
    out += *cp;
  }
  return out;
}

inline std::string from_u32(const std::u32string& s) {
  std::string out;
  for (char32_t cp : s) append(out, cp);
  return out;
}

}  // namespace utf8

namespace detail {

inline bool is_control(char32_t cp) {
  return (cp < 0x20 && cp != U'\t' && cp != U'\n' && cp != U'\r') ||
         cp == 0x7F;
}

inline std::string latin1_to_utf8(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  for (unsigned char b : raw) utf8::append(out, static_cast<char32_t>(b));
  return out;
}

// Byte-frequency heuristic for undeclared non-UTF-8 input: treat it as
// Latin-1 unless the stream looks binary (NULs or mostly control bytes).
inline std::string decode_heuristic(std::string_view raw) {
  std::size_t control = 0;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const unsigned char b = static_cast<unsigned char>(raw[i]);
    if (b == 0)
      throw error("undecodable byte sequence at offset " + std::to_string(i));
    if (b < 0x20 && b != '\t' && b != '\n' && b != '\r') ++control;
  }
  if (!raw.empty() && control * 10 > raw.size() * 3)
    throw error("undecodable byte sequence at offset 0");
  return latin1_to_utf8(raw);
}

}  // namespace detail

// Decodes raw bytes to UTF-8: declared label first, then strict UTF-8,
// then a byte-frequency fallback. Throws on undecodable input, naming
// the byte offset.
inline std::string decode_bytes(std::string_view raw,
                                const std::string& declared_encoding = "") {
  std::string label;
  for (char c : declared_encoding)
    label += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));

  if (label == "utf-8" || label == "utf8" || label == "ascii" ||
      label.empty()) {
    const std::size_t bad = utf8::first_invalid(raw);
    if (bad == std::string_view::npos) return std::string(raw);
    if (label == "ascii")
      throw error("undecodable byte sequence at offset " +
                  std::to_string(bad));
    return detail::decode_heuristic(raw);
  }
  if (label == "latin-1" || label == "latin1" || label == "iso-8859-1" ||
      label == "windows-1252") {
    return detail::latin1_to_utf8(raw);
  }
  throw error("unknown encoding label: " + declared_encoding);
}

namespace detail {

inline std::u32string strip_markup(const std::u32string& s) {
  std::u32string out;
  bool in_tag = false;
  for (char32_t cp : s) {
    if (cp == U'<') {
      in_tag = true;
    } else if (in_tag && cp == U'>') {
      in_tag = false;
      out += U' ';  // "foo<br>bar" must not glue
    } else if (!in_tag) {
      out += cp;
    }
  }
  return out;
}

inline bool looks_like_url(const std::u32string& tok) {
  static const std::u32string kSchemes[] = {U"http://", U"https://",
                                            U"ftp://", U"www."};
  for (const auto& p : kSchemes) {
    if (tok.size() >= p.size() && tok.compare(0, p.size(), p) == 0)
      return true;
  }
  return tok.find(U"://") != std::u32string::npos;
}

inline bool is_ws(char32_t cp) {
  return cp == U' ' || cp == U'\t' || cp == U'\n' || cp == U'\r';
}

// ASCII punctuation splits into single-character tokens; everything
// else (letters, digits, Tamil script, ...) groups.
inline bool is_punct(char32_t cp) {
  return cp < 0x80 && std::ispunct(static_cast<int>(cp));
}

}  // namespace detail

// Cleans and tokenizes one line of raw text: decode, strip markup tags
// and URLs, drop control characters, split on whitespace, then split
// punctuation into separate tokens.
inline Sentence normalize_text(std::string_view raw,
                               const std::string& declared_encoding = "") {
  const std::string decoded = decode_bytes(raw, declared_encoding);
  std::u32string text = detail::strip_markup(utf8::to_u32(decoded));

  std::u32string cleaned;
  for (char32_t cp : text) {
    if (detail::is_control(cp)) continue;
    cleaned += cp;
  }

  Sentence out;
  std::size_t i = 0;
  while (i < cleaned.size()) {
    while (i < cleaned.size() && detail::is_ws(cleaned[i])) ++i;
    std::size_t j = i;
    while (j < cleaned.size() && !detail::is_ws(cleaned[j])) ++j;
    if (j == i) break;
    std::u32string word = cleaned.substr(i, j - i);
    i = j;
    if (detail::looks_like_url(word)) continue;
    std::u32string run;
    auto flush = [&] {
      if (!run.empty()) {
        out.tokens.push_back(utf8::from_u32(run));
        run.clear();
      }
    };
    for (char32_t cp : word) {
      if (detail::is_punct(cp)) {
        flush();
        out.tokens.push_back(utf8::from_u32(std::u32string(1, cp)));
      } else {
        run += cp;
      }
    }
    flush();
  }
  return out;
}

inline std::string join_tokens(const Sentence& s) {
  std::string out;
  for (std::size_t i = 0; i < s.tokens.size(); ++i) {
    if (i) out += ' ';
    out += s.tokens[i];
  }
  return out;
}

// Parses a line of already-tokenized text (tokens separated by spaces).
inline Sentence split_tokens(std::string_view line) {
  Sentence s;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) s.tokens.emplace_back(line.substr(i, j - i));
    i = j;
  }
  return s;
}

}  // namespace morphnmt
