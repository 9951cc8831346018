#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "peg/bigstep.hpp"
#include "peg/errors.hpp"
#include "peg/grammar.hpp"

namespace peg {

// A constraint is a canonical character set: tt is the unconstrained set, ff
// the inconsistent one. Conjunction is set intersection, so the equational
// laws (absorption, identity, idempotency, subsumption, disjointness) hold
// definitionally.
using Constraint = CharSet;
using ConstrainedString = std::vector<Constraint>;

Constraint conj(const Constraint& c, const Constraint& d);
ConstrainedString pointwise_conj(const ConstrainedString& a, const ConstrainedString& b);
bool consistent(const ConstrainedString& s);  // no position collapsed to ff

// x "matches" s: every character lies in the constraint at its position.
bool instance_of(std::u32string_view x, const ConstrainedString& s);

// Terminal state of a symbolic run over an input of fixed length n:
// |consumed| + |remaining| == n.
struct SymOutcome {
  bool ok = true;
  ConstrainedString consumed;
  ConstrainedString remaining;

  bool operator==(const SymOutcome&) const = default;
};

std::string to_string(const Constraint& c);
std::string to_string(const SymOutcome& o);  // "<consumed> :: <remaining>"

struct SearchOptions {
  std::optional<std::size_t> limit{};  // cap on ok-outcomes
  std::uint64_t path_budget = 500'000;
  bool include_fail = false;
  bool state_dedup = true;  // drop revisited states; never loses solutions
};

struct solution_cap_exceeded : engine_error {
  explicit solution_cap_exceeded(std::vector<SymOutcome> partial_results)
      : engine_error("symbolic search hit the solution cap"),
        partial(std::move(partial_results)) {}

  std::vector<SymOutcome> partial;
};

// Breadth-first exploration of the machine over tt^n. Branching happens only
// at terminals (consume with c /\ t, or fail recording c /\ ~t); inconsistent
// children are pruned. Returns the deduplicated ok-outcomes in discovery
// order (plus fail-outcomes on request). Only the core operators are
// supported; anything else raises unsupported_construct.
std::vector<SymOutcome> search(const Grammar& g, const Expr& e, std::size_t length,
                               const SearchOptions& options = {});

struct Enumeration {
  std::vector<std::string> strings;  // lexicographic, UTF-8
  bool truncated = false;
};

// All strings over `alphabet` that instantiate consumed::remaining, up to
// `cap` (alphabet must be non-empty and finite).
Enumeration enumerate_instances(const SymOutcome& outcome, const CharSet& alphabet,
                                std::size_t cap = 100'000);

struct UtpViolation {
  std::string first;
  std::string second;
  std::size_t length;
  std::string witness;  // an input whose prefix both tokens accept
};

struct UtpReport {
  std::vector<UtpViolation> violations;
  bool clean() const { return violations.empty(); }
};

// Bounded unique-token-prefix check: for every ordered pair of distinct
// lexical nonterminals, searches both at every length <= max_len and reports
// outcome pairs whose constraints admit a common instance. A clean report is
// evidence up to the bound, not a proof.
UtpReport utp_check(const Grammar& g, std::size_t max_len, const SearchOptions& options = {});

}  // namespace peg
