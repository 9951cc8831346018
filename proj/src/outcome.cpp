#include "peg/outcome.hpp"

#include "peg/unicode.hpp"

namespace peg {

std::string_view to_string(OutcomeKind k) {
  switch (k) {
    case OutcomeKind::Success:
      return "success";
    case OutcomeKind::Fail:
      return "fail";
    case OutcomeKind::Error:
      return "error";
  }
  return "?";
}

std::u32string_view rest_of(std::u32string_view input, const Outcome& o) {
  return input.substr(o.pos <= input.size() ? o.pos : input.size());
}

std::u32string_view consumed_of(std::u32string_view input, const Outcome& o) {
  return input.substr(0, o.pos <= input.size() ? o.pos : input.size());
}

std::string rest_utf8(std::string_view utf8_input, const Outcome& o) {
  return encode_utf8(rest_of(decode_utf8(utf8_input), o));
}

std::string consumed_utf8(std::string_view utf8_input, const Outcome& o) {
  return encode_utf8(consumed_of(decode_utf8(utf8_input), o));
}

}  // namespace peg
