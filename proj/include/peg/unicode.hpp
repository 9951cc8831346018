#pragma once

#include <string>
#include <string_view>

namespace peg {

// Inputs and grammar files are UTF-8 on the outside; internally every string
// is a sequence of Unicode scalar values and positions index scalars.
std::u32string decode_utf8(std::string_view text);  // throws std::invalid_argument
std::string encode_utf8(std::u32string_view text);
std::string encode_utf8(char32_t c);

// "a" / "\n" / "\x1b" -- quoted single character, grammar-file escapes.
std::string quote_char(char32_t c);
// Same escaping, whole string in one pair of quotes.
std::string quote_string(std::u32string_view text);
std::string quote_string(std::string_view utf8);

}  // namespace peg
