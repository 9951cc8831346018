#include "peg/symbolic.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <unordered_set>

#include "peg/unicode.hpp"

namespace peg {

Constraint conj(const Constraint& c, const Constraint& d) { return c.intersect(d); }

ConstrainedString pointwise_conj(const ConstrainedString& a, const ConstrainedString& b) {
  assert(a.size() == b.size());
  ConstrainedString out;
  out.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(conj(a[i], b[i]));
  return out;
}

bool consistent(const ConstrainedString& s) {
  for (const Constraint& c : s) {
    if (c.empty()) return false;
  }
  return true;
}

bool instance_of(std::u32string_view x, const ConstrainedString& s) {
  if (x.size() != s.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!s[i].contains(x[i])) return false;
  }
  return true;
}

std::string to_string(const Constraint& c) {
  if (c.empty()) return "ff";
  if (c.universal()) return "tt";
  const auto& classes = named_char_classes();
  if (c.finite()) {
    if (c.size() == 1) return quote_char(c.base().front());
    for (const auto& [name, set] : classes) {
      if (c == set) return name;
    }
    std::string out = "{";
    for (char32_t ch : c.base()) out += encode_utf8(ch);
    out += "}";
    return out;
  }
  // Co-finite: decompose the excluded set into negated atoms, single
  // characters first, then named classes, the way the worked examples print.
  CharSet excluded = c.complement();
  std::vector<std::string> atoms;
  std::vector<std::string> class_atoms;
  for (const auto& [name, set] : classes) {
    if (!set.finite() || set.empty()) continue;
    if (set.subset_of(excluded)) {
      class_atoms.push_back("~" + name);
      excluded = excluded.intersect(set.complement());
    }
  }
  for (char32_t ch : excluded.base()) atoms.push_back("~" + quote_char(ch));
  atoms.insert(atoms.end(), class_atoms.begin(), class_atoms.end());
  if (atoms.size() == 1) return atoms.front();
  std::string out = "(";
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (i) out += " /\\ ";
    out += atoms[i];
  }
  out += ")";
  return out;
}

namespace {

std::string join_constraints(const ConstrainedString& s) {
  if (s.empty()) return "eps";
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += " . ";
    out += to_string(s[i]);
  }
  return out;
}

}  // namespace

std::string to_string(const SymOutcome& o) {
  return join_constraints(o.consumed) + " :: " + join_constraints(o.remaining);
}

namespace {

enum class SFrameKind : std::uint8_t { Seq, Choice, Star, Neg };

struct SFrame {
  SFrameKind kind;
  const ExprNode* expr;
  std::uint32_t saved;
};

// Unlike the concrete machine, the constrained string is shared state: every
// constraint learned along a branch (including failing ones) strengthens it
// in place, which is exactly the conj-on-backtrack rule because a branch only
// ever touches positions at or beyond its saved position.
struct SState {
  bool resolved = false;
  bool ok = false;
  const ExprNode* expr = nullptr;
  std::uint32_t pos = 0;
  std::vector<SFrame> stack;
  ConstrainedString cs;
  std::uint64_t steps = 0;
};

void append_key(std::string& key, std::uint64_t v) {
  key.append(reinterpret_cast<const char*>(&v), sizeof(v));
}

std::string state_key(const SState& s) {
  std::string key;
  key.reserve(64 + s.cs.size() * 8);
  append_key(key, s.resolved ? (s.ok ? 1 : 2) : 0);
  append_key(key, reinterpret_cast<std::uintptr_t>(s.expr));
  append_key(key, s.pos);
  for (const SFrame& f : s.stack) {
    append_key(key, static_cast<std::uint64_t>(f.kind) << 32 | f.saved);
    append_key(key, reinterpret_cast<std::uintptr_t>(f.expr));
  }
  key.push_back('|');
  for (const Constraint& c : s.cs) {
    append_key(key, c.negated() ? ~std::uint64_t{0} : c.base().size());
    for (char32_t ch : c.base()) append_key(key, ch);
  }
  return key;
}

void validate_core(const Grammar& g, const Expr& e) {
  std::unordered_set<const ExprNode*> seen;
  std::vector<const ExprNode*> work{e.get()};
  std::unordered_set<std::string> rules_done;
  while (!work.empty()) {
    const ExprNode* n = work.back();
    work.pop_back();
    if (!n || !seen.insert(n).second) continue;
    switch (n->kind) {
      case ExprKind::Empty:
      case ExprKind::Term:
        break;
      case ExprKind::NonTerm: {
        if (rules_done.insert(n->text).second) {
          const Expr* body = g.find_rule(n->text);
          if (!body) throw engine_error("undefined nonterminal: " + n->text);
          work.push_back(body->get());
        }
        break;
      }
      case ExprKind::Seq:
      case ExprKind::Choice:
      case ExprKind::Star:
      case ExprKind::Not:
        work.push_back(n->a.get());
        if (n->b) work.push_back(n->b.get());
        break;
      default:
        // Aliasing constructor: print without taking ownership of the node.
        throw unsupported_construct("symbolic search supports core operators only, found: " +
                                    to_string(Expr(Expr{}, n)));
    }
  }
}

struct SymOutcomeKeyHash {
  std::size_t operator()(const std::string& k) const { return std::hash<std::string>{}(k); }
};

std::string outcome_key(const SymOutcome& o) {
  std::string key;
  append_key(key, o.ok ? 1 : 0);
  append_key(key, o.consumed.size());
  for (const auto& cs : {o.consumed, o.remaining}) {
    for (const Constraint& c : cs) {
      append_key(key, c.negated() ? ~std::uint64_t{0} : c.base().size());
      for (char32_t ch : c.base()) append_key(key, ch);
    }
  }
  return key;
}

}  // namespace

std::vector<SymOutcome> search(const Grammar& g, const Expr& e, std::size_t length,
                               const SearchOptions& options) {
  validate_core(g, e);

  std::deque<SState> queue;
  std::unordered_set<std::string> visited;
  std::unordered_set<std::string> result_keys;
  std::vector<SymOutcome> results;
  std::size_t ok_count = 0;

  SState init;
  init.expr = e.get();
  init.cs.assign(length, CharSet::all());
  queue.push_back(std::move(init));

  auto enqueue = [&](SState&& s) {
    if (s.steps > options.path_budget) {
      throw budget_exceeded("symbolic search path budget exceeded");
    }
    if (options.state_dedup) {
      if (!visited.insert(state_key(s)).second) return;
    }
    queue.push_back(std::move(s));
  };

  auto record = [&](const SState& s) {
    SymOutcome out;
    out.ok = s.ok;
    out.consumed.assign(s.cs.begin(), s.cs.begin() + s.pos);
    out.remaining.assign(s.cs.begin() + s.pos, s.cs.end());
    if (!result_keys.insert(outcome_key(out)).second) return;
    if (out.ok) {
      if (options.limit && ok_count >= *options.limit) {
        std::vector<SymOutcome> partial = results;
        throw solution_cap_exceeded(std::move(partial));
      }
      ++ok_count;
      results.push_back(std::move(out));
    } else if (options.include_fail) {
      results.push_back(std::move(out));
    }
  };

  while (!queue.empty()) {
    SState s = std::move(queue.front());
    queue.pop_front();

    if (s.resolved && s.stack.empty()) {
      record(s);
      continue;
    }

    if (!s.resolved) {
      const ExprNode* n = s.expr;
      switch (n->kind) {
        case ExprKind::Empty:
          s.resolved = true;
          s.ok = true;
          s.steps++;
          enqueue(std::move(s));
          break;
        case ExprKind::Term: {
          if (s.pos >= s.cs.size()) {
            s.resolved = true;
            s.ok = false;
            s.steps++;
            enqueue(std::move(s));
            break;
          }
          // Branch point: ok(x, ins(c /\ t, y)) or fail((c /\ ~t).x, y).
          Constraint hit = conj(s.cs[s.pos], n->term.domain);
          Constraint miss = conj(s.cs[s.pos], n->term.domain.complement());
          if (!hit.empty()) {
            SState child = s;
            child.cs[child.pos] = hit;
            child.resolved = true;
            child.ok = true;
            child.pos++;
            child.steps++;
            enqueue(std::move(child));
          }
          if (!miss.empty()) {
            SState child = std::move(s);
            child.cs[child.pos] = miss;
            child.resolved = true;
            child.ok = false;
            child.steps++;
            enqueue(std::move(child));
          }
          break;
        }
        case ExprKind::NonTerm:
          s.expr = g.find_rule(n->text)->get();
          s.steps++;
          enqueue(std::move(s));
          break;
        case ExprKind::Seq:
          s.stack.push_back({SFrameKind::Seq, n->b.get(), s.pos});
          s.expr = n->a.get();
          s.steps++;
          enqueue(std::move(s));
          break;
        case ExprKind::Choice:
          s.stack.push_back({SFrameKind::Choice, n->b.get(), s.pos});
          s.expr = n->a.get();
          s.steps++;
          enqueue(std::move(s));
          break;
        case ExprKind::Star:
          s.stack.push_back({SFrameKind::Star, n->a.get(), s.pos});
          s.expr = n->a.get();
          s.steps++;
          enqueue(std::move(s));
          break;
        case ExprKind::Not:
          s.stack.push_back({SFrameKind::Neg, nullptr, s.pos});
          s.expr = n->a.get();
          s.steps++;
          enqueue(std::move(s));
          break;
        default:
          throw unsupported_construct("symbolic search supports core operators only");
      }
      continue;
    }

    // Resolution: pop the top frame. Learned constraints stay in place, so a
    // backtracking alternative re-runs on the strengthened string.
    SFrame f = s.stack.back();
    s.stack.pop_back();
    s.steps++;
    switch (f.kind) {
      case SFrameKind::Seq:
        if (s.ok) {
          s.resolved = false;
          s.expr = f.expr;
        }
        enqueue(std::move(s));
        break;
      case SFrameKind::Choice:
        if (!s.ok) {
          s.resolved = false;
          s.expr = f.expr;
          s.pos = f.saved;
        }
        enqueue(std::move(s));
        break;
      case SFrameKind::Star:
        if (s.ok) {
          s.resolved = false;
          s.stack.push_back({SFrameKind::Star, f.expr, s.pos});
          s.expr = f.expr;
        } else {
          s.ok = true;
          s.pos = f.saved;
        }
        enqueue(std::move(s));
        break;
      case SFrameKind::Neg:
        s.ok = !s.ok;
        s.pos = f.saved;
        enqueue(std::move(s));
        break;
    }
  }
  return results;
}

Enumeration enumerate_instances(const SymOutcome& outcome, const CharSet& alphabet,
                                std::size_t cap) {
  if (!alphabet.finite() || alphabet.empty()) {
    throw engine_error("enumeration requires a non-empty finite alphabet");
  }
  Enumeration result;
  std::vector<std::vector<char32_t>> domains;
  for (const auto& part : {outcome.consumed, outcome.remaining}) {
    for (const Constraint& c : part) {
      std::vector<char32_t> chars = c.intersect(alphabet).base();
      if (chars.empty()) return result;  // no instances
      domains.push_back(std::move(chars));
    }
  }

  std::u32string current(domains.size(), U'\0');
  std::vector<std::size_t> idx(domains.size(), 0);
  for (;;) {
    for (std::size_t i = 0; i < domains.size(); ++i) current[i] = domains[i][idx[i]];
    if (result.strings.size() >= cap) {
      result.truncated = true;
      return result;
    }
    result.strings.push_back(encode_utf8(current));
    // Odometer over the sorted domains keeps the output lexicographic.
    std::size_t i = domains.size();
    while (i-- > 0) {
      if (++idx[i] < domains[i].size()) break;
      idx[i] = 0;
      if (i == 0) return result;
    }
    if (domains.empty()) return result;
  }
}

namespace {

char32_t pick_char(const CharSet& c) {
  if (c.finite()) return c.base().front();
  for (char32_t ch = 0x20; ch < 0x250; ++ch) {
    if (c.contains(ch)) return ch;
  }
  return 0xFFFD;
}

}  // namespace

UtpReport utp_check(const Grammar& g, std::size_t max_len, const SearchOptions& options) {
  UtpReport report;
  std::vector<std::string> tokens(g.lexical.begin(), g.lexical.end());

  for (std::size_t n = 1; n <= max_len; ++n) {
    std::unordered_map<std::string, std::vector<SymOutcome>> outcomes;
    for (const auto& name : tokens) {
      outcomes[name] = search(g, nonterm(name), n, options);
    }
    for (const auto& a : tokens) {
      for (const auto& b : tokens) {
        if (a == b) continue;
        for (const SymOutcome& oa : outcomes[a]) {
          if (oa.consumed.empty()) continue;  // the first token must consume
          for (const SymOutcome& ob : outcomes[b]) {
            ConstrainedString full_a = oa.consumed;
            full_a.insert(full_a.end(), oa.remaining.begin(), oa.remaining.end());
            ConstrainedString full_b = ob.consumed;
            full_b.insert(full_b.end(), ob.remaining.begin(), ob.remaining.end());
            ConstrainedString both = pointwise_conj(full_a, full_b);
            if (!consistent(both)) continue;
            std::u32string witness;
            for (const Constraint& c : both) witness.push_back(pick_char(c));
            report.violations.push_back({a, b, n, encode_utf8(witness)});
          }
        }
      }
    }
  }
  return report;
}

}  // namespace peg
