#pragma once

#include <cstdint>

#include "peg/grammar.hpp"
#include "peg/outcome.hpp"

namespace peg {

// Guard against non-terminating evaluations slipping past the conservative
// well-formedness checker. Exhaustion raises budget_exceeded; it is a
// distinct engine error, never a Fail/Error outcome.
struct EvalBudget {
  std::uint64_t max_steps = 10'000'000;
};

// Reference interpreter: one structurally recursive case per natural-
// semantics rule, covering the core operators plus throw/catch/try. Derived
// operators are evaluated by their defining equations, so outcomes agree with
// evaluating the desugared expression. Cut is machine-level and rejected here
// (unsupported_cut).
Outcome eval(const Grammar& g, const Expr& e, std::u32string_view input, EvalBudget budget = {});
Outcome eval(const Grammar& g, const Expr& e, std::string_view utf8_input, EvalBudget budget = {});

// x is in the language iff the start expression succeeds on x; a prefix match
// counts as acceptance.
bool accepts(const Grammar& g, std::u32string_view input, EvalBudget budget = {});
bool accepts(const Grammar& g, std::string_view utf8_input, EvalBudget budget = {});

}  // namespace peg
