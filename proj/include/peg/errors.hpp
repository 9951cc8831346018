#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace peg {

// Engine-level failures. These are never folded into parse outcomes: Fail and
// Error are semantic results, an exception means the run itself broke down.
struct engine_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct budget_exceeded : engine_error {
  using engine_error::engine_error;
};

// Raised by the big-step evaluator: cut is defined only in the frame machine.
struct unsupported_cut : engine_error {
  using engine_error::engine_error;
};

// Raised by the symbolic engine on operators outside the core fragment.
struct unsupported_construct : engine_error {
  using engine_error::engine_error;
};

struct no_deletable_symbols : engine_error {
  using engine_error::engine_error;
};

struct parse_error : std::runtime_error {
  parse_error(const std::string& message, std::size_t line, std::size_t column)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line(line),
        column(column) {}

  std::size_t line;
  std::size_t column;
};

}  // namespace peg
