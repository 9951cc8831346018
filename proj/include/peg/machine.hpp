#pragma once

#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

#include "peg/grammar.hpp"
#include "peg/outcome.hpp"

namespace peg {

struct MachineConfig {
  bool simplify = true;  // enable choice-frame pruning above try
  std::uint64_t budget = 100'000'000;
};

struct StepMetrics {
  std::uint64_t entry_steps = 0;  // expression-dispatch transitions
  std::uint64_t total_steps = 0;  // all transitions
  std::size_t max_stack_depth = 0;

  bool operator==(const StepMetrics&) const = default;
};

// One record per transition; `rule` carries the label of the rewrite rule the
// transition implements (Terminal12, Choice2, Try2, ...).
struct TraceRecord {
  std::uint64_t index;
  std::string_view rule;
  std::size_t pos;
  std::size_t depth;
};

using TraceSink = std::function<void(const TraceRecord&)>;

// Deterministic small-step evaluator. The control is either an expression
// under evaluation or a resolved outcome; the stack of frames encodes the
// frozen second arguments of the semantic operators, so exactly one
// transition applies to any non-terminal state.
class Machine {
 public:
  // The grammar, expression and input must outlive the machine. The grammar
  // is expected to be desugared and to pass both static checks.
  Machine(const Grammar& g, const Expr& e, std::u32string_view input, MachineConfig cfg = {});

  bool done() const { return resolved_ && stack_.empty(); }
  void step();  // pre: !done(); throws budget_exceeded when the budget hits

  Outcome outcome() const;  // pre: done()
  const StepMetrics& metrics() const { return metrics_; }
  std::size_t stack_depth() const { return stack_.size(); }
  void set_trace(TraceSink sink) { trace_ = std::move(sink); }

 private:
  enum class FrameKind : std::uint8_t { Seq, Choice, Star, StarCommit, Neg, Catch, Try };

  struct Frame {
    FrameKind kind;
    const ExprNode* expr;  // Seq: next; Choice: alternative; Star/StarCommit: body
    std::size_t saved;     // input position to return to on backtrack
  };

  void dispatch();
  void resolve_frame();
  std::string_view apply_cut();
  void push(FrameKind kind, const ExprNode* expr, std::size_t saved);
  void charge(bool entry);
  void emit(std::string_view rule);

  const Grammar* grammar_;
  Expr root_;  // keeps the start expression alive
  std::u32string_view input_;
  MachineConfig cfg_;

  bool resolved_ = false;
  OutcomeKind kind_ = OutcomeKind::Fail;
  const ExprNode* expr_ = nullptr;
  std::size_t pos_ = 0;
  std::vector<Frame> stack_;
  StepMetrics metrics_;
  TraceSink trace_;
  std::string_view last_rule_;
};

struct RunResult {
  Outcome outcome;
  StepMetrics metrics;
};

RunResult run(const Grammar& g, const Expr& e, std::u32string_view input, MachineConfig cfg = {},
              TraceSink trace = {});
RunResult run(const Grammar& g, const Expr& e, std::string_view utf8_input, MachineConfig cfg = {},
              TraceSink trace = {});

}  // namespace peg
