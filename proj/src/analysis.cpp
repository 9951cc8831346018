#include <algorithm>
#include <functional>

#include "peg/grammar.hpp"

namespace peg {

bool nullable(const Expr& e, const std::unordered_map<std::string, bool>& rule_nullable) {
  if (!e) return true;
  switch (e->kind) {
    case ExprKind::Empty:
    case ExprKind::Not:
    case ExprKind::And:
    case ExprKind::Star:
    case ExprKind::Cut:
    case ExprKind::Throw:  // never consumes; Error aborts any enclosing loop
    case ExprKind::Opt:
      return true;
    case ExprKind::Term:
      return false;
    case ExprKind::Lit:
      return e->text.empty();
    case ExprKind::Seq:
      return nullable(e->a, rule_nullable) && nullable(e->b, rule_nullable);
    case ExprKind::Choice:
      return nullable(e->a, rule_nullable) || nullable(e->b, rule_nullable);
    case ExprKind::Plus:
    case ExprKind::Catch:
    case ExprKind::Try:
      return nullable(e->a, rule_nullable);
    case ExprKind::Check:
      return true;  // check(e) = e / throw, and throw is nullable
    case ExprKind::NonTerm: {
      auto it = rule_nullable.find(e->text);
      return it != rule_nullable.end() && it->second;
    }
  }
  return true;
}

std::unordered_map<std::string, bool> nullable_rules(const Grammar& g) {
  std::unordered_map<std::string, bool> table;
  for (const auto& [name, body] : g.rules) table[name] = false;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [name, body] : g.rules) {
      if (!table[name] && nullable(body, table)) {
        table[name] = true;
        changed = true;
      }
    }
  }
  return table;
}

namespace {

// Nonterminals an expression may invoke before consuming any input.
void head_nonterms(const Expr& e, const std::unordered_map<std::string, bool>& nul,
                   std::set<std::string>& out) {
  if (!e) return;
  switch (e->kind) {
    case ExprKind::NonTerm:
      out.insert(e->text);
      break;
    case ExprKind::Seq:
      head_nonterms(e->a, nul, out);
      if (nullable(e->a, nul)) head_nonterms(e->b, nul, out);
      break;
    case ExprKind::Choice:
      head_nonterms(e->a, nul, out);
      head_nonterms(e->b, nul, out);
      break;
    case ExprKind::Star:
    case ExprKind::Not:
    case ExprKind::And:
    case ExprKind::Opt:
    case ExprKind::Plus:
    case ExprKind::Catch:
    case ExprKind::Try:
    case ExprKind::Check:
      head_nonterms(e->a, nul, out);
      break;
    default:
      break;
  }
}

void collect_refs(const Expr& e, std::set<std::string>& out) {
  if (!e) return;
  if (e->kind == ExprKind::NonTerm) out.insert(e->text);
  collect_refs(e->a, out);
  collect_refs(e->b, out);
}

void find_nullable_stars(const std::string& rule, const Expr& e,
                         const std::unordered_map<std::string, bool>& nul,
                         std::vector<CheckIssue>& issues) {
  if (!e) return;
  if ((e->kind == ExprKind::Star || e->kind == ExprKind::Plus) && nullable(e->a, nul)) {
    issues.push_back({rule, "nullable-star", to_string(Expr(e))});
  }
  find_nullable_stars(rule, e->a, nul, issues);
  find_nullable_stars(rule, e->b, nul, issues);
}

}  // namespace

WellFormednessReport check_wellformed(const Grammar& g) {
  WellFormednessReport report;

  // Undefined references first; the remaining checks assume a total rule map.
  std::set<std::string> refs;
  for (const auto& [name, body] : g.rules) collect_refs(body, refs);
  collect_refs(g.start, refs);
  for (const auto& name : refs) {
    if (!g.find_rule(name)) {
      report.issues.push_back({name, "undefined-nonterminal", "referenced but never defined"});
    }
  }
  if (!report.ok()) return report;

  auto nul = nullable_rules(g);

  // Left recursion: a cycle in the may-start-with relation means a
  // nonterminal can re-enter itself with no input consumed.
  std::unordered_map<std::string, std::set<std::string>> heads;
  for (const auto& [name, body] : g.rules) head_nonterms(body, nul, heads[name]);

  std::unordered_map<std::string, int> state;  // 0 new, 1 on stack, 2 done
  std::vector<std::string> stack;
  std::set<std::string> reported;
  std::function<void(const std::string&)> visit = [&](const std::string& n) {
    state[n] = 1;
    stack.push_back(n);
    for (const auto& next : heads[n]) {
      if (state[next] == 1) {
        auto it = std::find(stack.begin(), stack.end(), next);
        std::string cycle;
        for (; it != stack.end(); ++it) cycle += *it + " -> ";
        cycle += next;
        if (reported.insert(next).second) {
          report.issues.push_back({next, "left-recursion", cycle});
        }
      } else if (state[next] == 0) {
        visit(next);
      }
    }
    stack.pop_back();
    state[n] = 2;
  };
  for (const auto& name : g.rule_order) {
    if (state[name] == 0) visit(name);
  }

  for (const auto& name : g.rule_order) {
    find_nullable_stars(name, *g.find_rule(name), nul, report.issues);
  }
  find_nullable_stars("%start", g.start, nul, report.issues);
  return report;
}

namespace {

// `allowed` holds while we are walking elements of a sequence chain that is
// the first alternative of a choice or a star body.
void check_cuts(const std::string& rule, const Expr& e, bool allowed,
                std::vector<CheckIssue>& issues) {
  if (!e) return;
  switch (e->kind) {
    case ExprKind::Cut:
      if (!allowed) {
        issues.push_back({rule, "ill-placed-cut",
                          "cut outside the first alternative of a choice or a star body"});
      }
      break;
    case ExprKind::Seq:
      check_cuts(rule, e->a, allowed, issues);
      check_cuts(rule, e->b, allowed, issues);
      break;
    case ExprKind::Choice:
      check_cuts(rule, e->a, true, issues);
      check_cuts(rule, e->b, false, issues);
      break;
    case ExprKind::Star:
      check_cuts(rule, e->a, true, issues);
      break;
    default:
      // Predicate, catch and try bodies reset the context: a cut may not
      // cross such a frame on its way to the enclosing choice/star.
      check_cuts(rule, e->a, false, issues);
      check_cuts(rule, e->b, false, issues);
      break;
  }
}

}  // namespace

PlacementReport check_cut_placement(const Grammar& g) {
  PlacementReport report;
  for (const auto& name : g.rule_order) {
    check_cuts(name, *g.find_rule(name), false, report.issues);
  }
  check_cuts("%start", g.start, false, report.issues);
  return report;
}

}  // namespace peg
