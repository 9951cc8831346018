#pragma once

#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "peg/expr.hpp"

namespace peg {

// Named rules plus a start expression. `lexical` is the subset of rule names
// that describe tokens; it drives the unique-token-prefix checker. Values are
// immutable once built, so a Grammar can be shared across evaluations.
struct Grammar {
  std::unordered_map<std::string, Expr> rules;
  std::vector<std::string> rule_order;  // definition order, for reports
  std::set<std::string> lexical;
  Expr start;
  std::optional<std::u32string> alphabet;  // %alphabet directive, if present

  const Expr* find_rule(const std::string& name) const;
  void add_rule(std::string name, Expr body);
};

// Rewrites derived operators into the core syntax:
//   &e -> !!e     e? -> e / eps     e+ -> e e*     check(e) -> e / throw
// and string literals into chains of single-character terminals. Idempotent.
Expr desugar(const Expr& e);
Grammar desugar(const Grammar& g);

struct CheckIssue {
  std::string rule;    // offending rule name, or "%start"
  std::string reason;  // tag: left-recursion | nullable-star | undefined-nonterminal | ill-placed-cut
  std::string detail;
};

struct WellFormednessReport {
  std::vector<CheckIssue> issues;
  bool ok() const { return issues.empty(); }
};

struct PlacementReport {
  std::vector<CheckIssue> issues;
  bool ok() const { return issues.empty(); }
};

// Conservative syntactic nullability, computed as a fixpoint over the rules.
std::unordered_map<std::string, bool> nullable_rules(const Grammar& g);
bool nullable(const Expr& e, const std::unordered_map<std::string, bool>& rule_nullable);

// Rejects left-recursive rules (reachable-through-nullable-prefix cycles) and
// stars over nullable bodies. A grammar passing both checks terminates on
// every input under both evaluators.
WellFormednessReport check_wellformed(const Grammar& g);

// Cuts are accepted only as elements of a sequence chain that forms the first
// alternative of a choice or the body of a star.
PlacementReport check_cut_placement(const Grammar& g);

}  // namespace peg
