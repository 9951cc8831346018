#include "peg/machine.hpp"

#include <cassert>

#include "peg/errors.hpp"
#include "peg/unicode.hpp"

namespace peg {

Machine::Machine(const Grammar& g, const Expr& e, std::u32string_view input, MachineConfig cfg)
    : grammar_(&g), root_(e), input_(input), cfg_(cfg), expr_(root_.get()) {}

Outcome Machine::outcome() const {
  assert(done());
  return {kind_, pos_};
}

void Machine::push(FrameKind kind, const ExprNode* expr, std::size_t saved) {
  assert(saved <= pos_);
  stack_.push_back({kind, expr, saved});
  if (stack_.size() > metrics_.max_stack_depth) metrics_.max_stack_depth = stack_.size();
}

void Machine::charge(bool entry) {
  if (metrics_.total_steps >= cfg_.budget) {
    throw budget_exceeded("machine step budget exceeded");
  }
  ++metrics_.total_steps;
  if (entry) ++metrics_.entry_steps;
}

void Machine::emit(std::string_view rule) {
  last_rule_ = rule;
  if (trace_) trace_(TraceRecord{metrics_.total_steps, rule, pos_, stack_.size()});
}

void Machine::step() {
  assert(!done());
  if (!resolved_) {
    dispatch();
  } else {
    resolve_frame();
  }
}

void Machine::dispatch() {
  const ExprNode* e = expr_;
  charge(/*entry=*/true);
  switch (e->kind) {
    case ExprKind::Empty:
      resolved_ = true;
      kind_ = OutcomeKind::Success;
      emit("empty");
      return;

    case ExprKind::Term:
      if (pos_ >= input_.size()) {
        resolved_ = true;
        kind_ = OutcomeKind::Fail;
        emit("Terminal3");
      } else if (match_terminal(e->term, input_[pos_])) {
        resolved_ = true;
        kind_ = OutcomeKind::Success;
        ++pos_;
        emit("Terminal12");
      } else {
        resolved_ = true;
        kind_ = OutcomeKind::Fail;
        emit("Terminal12");
      }
      return;

    case ExprKind::NonTerm: {
      const Expr* body = grammar_->find_rule(e->text);
      if (!body) throw engine_error("undefined nonterminal: " + e->text);
      expr_ = body->get();
      emit("NTerm");
      return;
    }

    case ExprKind::Seq:
      push(FrameKind::Seq, e->b.get(), pos_);
      expr_ = e->a.get();
      emit("Sequence");
      return;

    case ExprKind::Choice:
      push(FrameKind::Choice, e->b.get(), pos_);
      expr_ = e->a.get();
      emit("Choice");
      return;

    case ExprKind::Star:
      push(FrameKind::Star, e->a.get(), pos_);
      expr_ = e->a.get();
      emit("Star");
      return;

    case ExprKind::Not:
      push(FrameKind::Neg, nullptr, pos_);
      expr_ = e->a.get();
      emit("Negative");
      return;

    case ExprKind::Throw:
      resolved_ = true;
      kind_ = OutcomeKind::Error;
      emit("throw");
      return;

    case ExprKind::Catch:
      push(FrameKind::Catch, nullptr, pos_);
      expr_ = e->a.get();
      emit("Catch");
      return;

    case ExprKind::Try:
      // [simpl]: CHOICE(TRY(S), S') = TRY(S), iterated through nested
      // choices. A choice frame directly above the try can never be resumed,
      // since try resolves to success or error only.
      if (cfg_.simplify) {
        while (!stack_.empty() && stack_.back().kind == FrameKind::Choice) stack_.pop_back();
      }
      push(FrameKind::Try, nullptr, pos_);
      expr_ = e->a.get();
      emit("Try");
      return;

    case ExprKind::Cut:
      emit(apply_cut());
      return;

    default:
      throw engine_error("machine requires a desugared expression, found: " + to_string(root_));
  }
}

// A cut binds to the nearest enclosing choice or star frame. The placement
// checker guarantees only sequence frames sit in between.
std::string_view Machine::apply_cut() {
  for (std::size_t i = stack_.size(); i-- > 0;) {
    Frame& f = stack_[i];
    switch (f.kind) {
      case FrameKind::Choice:
        stack_.erase(stack_.begin() + static_cast<std::ptrdiff_t>(i));
        resolved_ = true;
        kind_ = OutcomeKind::Success;
        return "Choice^";
      case FrameKind::Star:
        f.kind = FrameKind::StarCommit;
        resolved_ = true;
        kind_ = OutcomeKind::Success;
        return "Star^";
      case FrameKind::StarCommit:
        // Iteration already committed; a further cut has nothing to discard.
        resolved_ = true;
        kind_ = OutcomeKind::Success;
        return "Star^";
      case FrameKind::Seq:
        continue;
      default:
        throw engine_error("cut separated from its choice/star by a predicate frame");
    }
  }
  throw engine_error("cut with no enclosing choice or star");
}

void Machine::resolve_frame() {
  charge(/*entry=*/false);
  Frame f = stack_.back();
  stack_.pop_back();
  switch (f.kind) {
    case FrameKind::Seq:
      if (kind_ == OutcomeKind::Success) {
        resolved_ = false;
        expr_ = f.expr;
        emit("Seq1");
      } else {
        emit(kind_ == OutcomeKind::Fail ? "Seq2" : "SeqE");
      }
      return;

    case FrameKind::Choice:
      if (kind_ == OutcomeKind::Success) {
        emit("Choice1");
      } else if (kind_ == OutcomeKind::Fail) {
        resolved_ = false;
        expr_ = f.expr;
        pos_ = f.saved;
        emit("Choice2");
      } else {
        emit("ChoiceE");
      }
      return;

    case FrameKind::Star:
      if (kind_ == OutcomeKind::Success) {
        resolved_ = false;
        push(FrameKind::Star, f.expr, pos_);
        expr_ = f.expr;
        emit("Star2");
      } else if (kind_ == OutcomeKind::Fail) {
        kind_ = OutcomeKind::Success;
        pos_ = f.saved;
        emit("Star1");
      } else {
        emit("StarE");
      }
      return;

    case FrameKind::StarCommit:
      if (kind_ == OutcomeKind::Success) {
        // Committed iteration done; the repetition restarts uncommitted.
        resolved_ = false;
        push(FrameKind::Star, f.expr, pos_);
        expr_ = f.expr;
      }
      // fail and error both propagate: STAR^(fail, S) => fail.
      emit("Star^");
      return;

    case FrameKind::Neg:
      if (kind_ == OutcomeKind::Success) {
        kind_ = OutcomeKind::Fail;
        pos_ = f.saved;
        emit("Neg2");
      } else if (kind_ == OutcomeKind::Fail) {
        kind_ = OutcomeKind::Success;
        pos_ = f.saved;
        emit("Neg1");
      } else {
        kind_ = OutcomeKind::Success;
        pos_ = f.saved;
        emit("NegE");
      }
      return;

    case FrameKind::Catch:
      if (kind_ == OutcomeKind::Success) {
        emit("Catch1");
      } else if (kind_ == OutcomeKind::Fail) {
        emit("Catch2");
      } else {
        kind_ = OutcomeKind::Fail;
        emit("Catch3");
      }
      return;

    case FrameKind::Try:
      if (kind_ == OutcomeKind::Success) {
        emit("Try1");
      } else if (kind_ == OutcomeKind::Fail) {
        kind_ = OutcomeKind::Error;
        emit("Try2");
      } else {
        emit("Try3");
      }
      return;
  }
}

RunResult run(const Grammar& g, const Expr& e, std::u32string_view input, MachineConfig cfg,
              TraceSink trace) {
  Machine m(g, e, input, cfg);
  if (trace) m.set_trace(std::move(trace));
  while (!m.done()) m.step();
  return {m.outcome(), m.metrics()};
}

RunResult run(const Grammar& g, const Expr& e, std::string_view utf8_input, MachineConfig cfg,
              TraceSink trace) {
  std::u32string input = decode_utf8(utf8_input);
  return run(g, e, input, cfg, std::move(trace));
}

}  // namespace peg
