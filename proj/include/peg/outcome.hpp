#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace peg {

// Three-valued parse result. `pos` is the scalar index where the result
// resolved; the unconsumed suffix is input[pos..].
enum class OutcomeKind { Success, Fail, Error };

struct Outcome {
  OutcomeKind kind = OutcomeKind::Fail;
  std::size_t pos = 0;

  bool success() const { return kind == OutcomeKind::Success; }
  bool fail() const { return kind == OutcomeKind::Fail; }
  bool error() const { return kind == OutcomeKind::Error; }

  bool operator==(const Outcome&) const = default;
};

std::string_view to_string(OutcomeKind k);

std::u32string_view rest_of(std::u32string_view input, const Outcome& o);
std::u32string_view consumed_of(std::u32string_view input, const Outcome& o);

// Convenience for UTF-8 callers; `pos` counts scalars, not bytes.
std::string rest_utf8(std::string_view utf8_input, const Outcome& o);
std::string consumed_utf8(std::string_view utf8_input, const Outcome& o);

}  // namespace peg
