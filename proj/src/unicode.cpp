#include "peg/unicode.hpp"

#include <stdexcept>

namespace peg {

namespace {

[[noreturn]] void bad_utf8() { throw std::invalid_argument("invalid UTF-8 input"); }

}  // namespace

std::u32string decode_utf8(std::string_view text) {
  std::u32string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    unsigned char b0 = static_cast<unsigned char>(text[i]);
    char32_t cp = 0;
    std::size_t len = 0;
    if (b0 < 0x80) {
      cp = b0;
      len = 1;
    } else if ((b0 & 0xE0) == 0xC0) {
      cp = b0 & 0x1F;
      len = 2;
    } else if ((b0 & 0xF0) == 0xE0) {
      cp = b0 & 0x0F;
      len = 3;
    } else if ((b0 & 0xF8) == 0xF0) {
      cp = b0 & 0x07;
      len = 4;
    } else {
      bad_utf8();
    }
    if (i + len > text.size()) bad_utf8();
    for (std::size_t k = 1; k < len; ++k) {
      unsigned char b = static_cast<unsigned char>(text[i + k]);
      if ((b & 0xC0) != 0x80) bad_utf8();
      cp = (cp << 6) | (b & 0x3F);
    }
    // Reject overlong forms, surrogates and out-of-range values.
    if (len == 2 && cp < 0x80) bad_utf8();
    if (len == 3 && cp < 0x800) bad_utf8();
    if (len == 4 && cp < 0x10000) bad_utf8();
    if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) bad_utf8();
    out.push_back(cp);
    i += len;
  }
  return out;
}

std::string encode_utf8(char32_t c) {
  std::string out;
  if (c < 0x80) {
    out.push_back(static_cast<char>(c));
  } else if (c < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (c >> 6)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  } else if (c < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (c >> 12)));
    out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (c >> 18)));
    out.push_back(static_cast<char>(0x80 | ((c >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  }
  return out;
}

std::string encode_utf8(std::u32string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char32_t c : text) out += encode_utf8(c);
  return out;
}

namespace {

void escape_into(std::string& out, char32_t c) {
  switch (c) {
    case U'\n': out += "\\n"; return;
    case U'\t': out += "\\t"; return;
    case U'\r': out += "\\r"; return;
    case U'\\': out += "\\\\"; return;
    case U'"': out += "\\\""; return;
    default: break;
  }
  if (c < 0x20) {
    static const char* hex = "0123456789abcdef";
    out += "\\x";
    out.push_back(hex[(c >> 4) & 0xF]);
    out.push_back(hex[c & 0xF]);
    return;
  }
  out += encode_utf8(c);
}

}  // namespace

std::string quote_char(char32_t c) {
  std::string out = "\"";
  escape_into(out, c);
  out.push_back('"');
  return out;
}

std::string quote_string(std::u32string_view text) {
  std::string out = "\"";
  for (char32_t c : text) escape_into(out, c);
  out.push_back('"');
  return out;
}

std::string quote_string(std::string_view utf8) { return quote_string(decode_utf8(utf8)); }

}  // namespace peg
