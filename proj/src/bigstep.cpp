#include "peg/bigstep.hpp"

#include "peg/errors.hpp"
#include "peg/unicode.hpp"

namespace peg {

namespace {

struct EvalContext {
  const Grammar& grammar;
  std::u32string_view input;
  std::uint64_t remaining;

  void charge() {
    if (remaining == 0) throw budget_exceeded("big-step evaluation budget exceeded");
    --remaining;
  }
};

Outcome succeed(std::size_t pos) { return {OutcomeKind::Success, pos}; }
Outcome fail(std::size_t pos) { return {OutcomeKind::Fail, pos}; }
Outcome error(std::size_t pos) { return {OutcomeKind::Error, pos}; }

Outcome ev(EvalContext& ctx, const ExprNode* e, std::size_t pos) {
  ctx.charge();
  switch (e->kind) {
    case ExprKind::Empty:  // empty
      return succeed(pos);

    case ExprKind::Term:  // term.1-3
      if (pos < ctx.input.size() && match_terminal(e->term, ctx.input[pos])) {
        return succeed(pos + 1);
      }
      return fail(pos);

    case ExprKind::NonTerm: {  // var
      const Expr* body = ctx.grammar.find_rule(e->text);
      if (!body) throw engine_error("undefined nonterminal: " + e->text);
      return ev(ctx, body->get(), pos);
    }

    case ExprKind::Seq: {  // seq.1-3
      Outcome left = ev(ctx, e->a.get(), pos);
      if (!left.success()) return left;
      return ev(ctx, e->b.get(), left.pos);
    }

    case ExprKind::Choice: {  // ord.1-3
      Outcome first = ev(ctx, e->a.get(), pos);
      if (first.fail()) return ev(ctx, e->b.get(), pos);
      return first;
    }

    case ExprKind::Star: {  // rep.1-3
      std::size_t cur = pos;
      for (;;) {
        Outcome r = ev(ctx, e->a.get(), cur);
        if (r.fail()) return succeed(cur);
        if (r.error()) return r;
        cur = r.pos;
        ctx.charge();  // one application of rep.2 per iteration
      }
    }

    case ExprKind::Not: {  // not.1-3; an error from the body is masked
      Outcome r = ev(ctx, e->a.get(), pos);
      return r.success() ? fail(pos) : succeed(pos);
    }

    case ExprKind::Throw:  // throw
      return error(pos);

    case ExprKind::Catch: {  // catch.1-3
      Outcome r = ev(ctx, e->a.get(), pos);
      if (r.error()) return fail(r.pos);
      return r;
    }

    case ExprKind::Try: {  // try.1-3
      Outcome r = ev(ctx, e->a.get(), pos);
      if (r.fail()) return error(r.pos);
      return r;
    }

    case ExprKind::Cut:
      throw unsupported_cut("cut has no big-step rule; use the frame machine");

    // Derived operators, interpreted by their defining equations. Keeping
    // these cases separate from desugar() lets the test suite compare the two
    // routes against each other.
    case ExprKind::And: {  // &e = !!e
      Outcome r = ev(ctx, e->a.get(), pos);
      return r.success() ? succeed(pos) : fail(pos);
    }

    case ExprKind::Opt: {  // e? = e / eps
      Outcome r = ev(ctx, e->a.get(), pos);
      if (r.fail()) return succeed(pos);
      return r;
    }

    case ExprKind::Plus: {  // e+ = e e*
      Outcome first = ev(ctx, e->a.get(), pos);
      if (!first.success()) return first;
      std::size_t cur = first.pos;
      for (;;) {
        Outcome r = ev(ctx, e->a.get(), cur);
        if (r.fail()) return succeed(cur);
        if (r.error()) return r;
        cur = r.pos;
        ctx.charge();
      }
    }

    case ExprKind::Check: {  // check(e) = e / throw
      Outcome r = ev(ctx, e->a.get(), pos);
      if (r.fail()) return error(pos);
      return r;
    }

    case ExprKind::Lit: {
      std::u32string chars = decode_utf8(e->text);
      std::size_t cur = pos;
      for (char32_t c : chars) {
        if (cur >= ctx.input.size() || ctx.input[cur] != c) return fail(cur);
        ++cur;
      }
      return succeed(cur);
    }
  }
  throw engine_error("unhandled expression kind");
}

}  // namespace

Outcome eval(const Grammar& g, const Expr& e, std::u32string_view input, EvalBudget budget) {
  EvalContext ctx{g, input, budget.max_steps};
  return ev(ctx, e.get(), 0);
}

Outcome eval(const Grammar& g, const Expr& e, std::string_view utf8_input, EvalBudget budget) {
  std::u32string input = decode_utf8(utf8_input);
  return eval(g, e, input, budget);
}

bool accepts(const Grammar& g, std::u32string_view input, EvalBudget budget) {
  return eval(g, g.start, input, budget).success();
}

bool accepts(const Grammar& g, std::string_view utf8_input, EvalBudget budget) {
  std::u32string input = decode_utf8(utf8_input);
  return accepts(g, input, budget);
}

}  // namespace peg
