// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// criterion fails. Bounds and tolerances are hard-coded alongside each check.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "peg/bigstep.hpp"
#include "peg/errors.hpp"
#include "peg/grammar_parser.hpp"
#include "peg/harness.hpp"
#include "peg/machine.hpp"
#include "peg/symbolic.hpp"
#include "peg/unicode.hpp"
#include "support/random_grammar.hpp"

using namespace peg;
using Clock = std::chrono::steady_clock;

namespace {

struct Criterion {
  bool passed = true;
  std::ostringstream log;

  void require(bool condition, const std::string& what) {
    if (!condition) {
      passed = false;
      log << "    FAILED: " << what << "\n";
    }
  }
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<std::u32string> all_strings(std::u32string_view alphabet, std::size_t max_len) {
  std::vector<std::u32string> out{U""};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (char32_t c : alphabet) out.push_back(out[i] + c);
    }
    begin = end;
  }
  return out;
}

// Shared between criteria 2 and 6: the adequacy sweep also compares the two
// simplify modes.
struct AdequacyStats {
  std::size_t runs = 0;
  bool outcomes_match_bigstep = true;
  bool outcomes_match_across_modes = true;
  bool depth_le = true;
};

AdequacyStats adequacy_stats;

// ---------------------------------------------------------------------------

void criterion_1(Criterion& c) {
  auto start = Clock::now();

  Grammar gab;
  gab.add_rule("A", term(U'a'));
  gab.add_rule("B", term(U'b'));
  gab.start = seq(nonterm("A"), nonterm("B"));
  auto r = run(gab, gab.start, std::string_view("abc"));
  c.require(r.outcome.success() && rest_utf8("abc", r.outcome) == "c",
            "A B on \"abc\" must succeed with rest \"c\"");
  c.require(eval(gab, gab.start, std::string_view("abc")) == r.outcome,
            "big-step agrees on A B over \"abc\"");

  Grammar ga;
  ga.add_rule("A", term(U'a'));
  ga.start = seq(nonterm("A"), term(U'b'));
  auto steps = run(ga, ga.start, std::string_view("ab"));
  c.require(steps.outcome.success() && steps.metrics.entry_steps == 4,
            "A.\"b\" on \"ab\" takes exactly 4 entry steps, got " +
                std::to_string(steps.metrics.entry_steps));

  Grammar g;
  auto plain_star = run(g, star(seq(term(U'a'), term(U'b'))), std::string_view("abac"));
  c.require(plain_star.outcome.success() && rest_utf8("abac", plain_star.outcome) == "ac",
            "(\"a\" \"b\")* on \"abac\" succeeds returning \"ac\"");
  auto cut_star = run(g, star(seq(term(U'a'), cut(), term(U'b'))), std::string_view("abac"));
  c.require(cut_star.outcome.fail(), "(\"a\" ^ \"b\")* on \"abac\" fails");

  Expr confined = catch_expr(choice(throw_expr(), empty()));
  Expr split = choice(catch_expr(throw_expr()), catch_expr(empty()));
  std::mt19937_64 rng(20260811);
  for (int i = 0; i < 20; ++i) {
    std::u32string input;
    std::size_t len = bounded_rand(rng, 10);
    for (std::size_t k = 0; k < len; ++k) {
      input.push_back(static_cast<char32_t>(U' ' + bounded_rand(rng, 94)));
    }
    c.require(run(g, confined, input).outcome.fail(), "catch(throw/eps) fails on every input");
    c.require(run(g, split, input).outcome.success(),
              "catch(throw)/catch(eps) succeeds on every input");
  }

  double elapsed = seconds_since(start);
  c.require(elapsed < 1.0, "runtime bound 1 s exceeded: " + std::to_string(elapsed));
}

void criterion_2(Criterion& c) {
  auto start = Clock::now();
  const std::size_t grammar_count = 200;
  testgen::Gen gen(61803, {.max_depth = 4, .max_rules = 4, .allow_control = true});
  auto inputs = all_strings(U"abc", 5);
  std::size_t mismatches = 0;
  for (std::size_t i = 0; i < grammar_count; ++i) {
    Grammar g = gen.grammar();
    for (const auto& input : inputs) {
      Outcome reference = eval(g, g.start, input, EvalBudget{1'000'000});
      MachineConfig on, off;
      on.simplify = true;
      off.simplify = false;
      auto with = run(g, g.start, input, on);
      auto without = run(g, g.start, input, off);
      adequacy_stats.runs++;
      if (!(with.outcome == reference && without.outcome == reference)) {
        ++mismatches;
        adequacy_stats.outcomes_match_bigstep = false;
      }
      if (!(with.outcome == without.outcome)) {
        adequacy_stats.outcomes_match_across_modes = false;
      }
      if (with.metrics.max_stack_depth > without.metrics.max_stack_depth) {
        adequacy_stats.depth_le = false;
      }
    }
  }
  c.require(mismatches == 0,
            "bigstep/machine disagreement on " + std::to_string(mismatches) + " runs");
  double elapsed = seconds_since(start);
  c.require(elapsed < 60.0, "runtime bound 60 s exceeded: " + std::to_string(elapsed));
  c.log << "    " << grammar_count << " grammars x " << inputs.size()
        << " inputs, both simplify modes, " << std::fixed << elapsed << " s\n";
}

void criterion_3(Criterion& c) {
  Grammar g = desugar(load_grammar(GRAMMARS_DIR "/anbncn.peg"));
  auto instance = [](int k) {
    std::string s;
    s.append(k, 'a');
    s.append(k, 'b');
    s.append(k, 'c');
    return s;
  };
  for (int k = 1; k <= 200; ++k) {
    std::string input = instance(k);
    auto r = run(g, g.start, std::string_view(input));
    if (!(r.outcome.success() && r.outcome.pos == input.size())) {
      c.require(false, "a^k b^k c^k rejected at k=" + std::to_string(k));
      break;
    }
  }

  MutationSpec spec;
  spec.deletable = U"abc";
  spec.max_deletions = 1;  // one deletion always unbalances the counts
  spec.seed = 424242;
  spec.variants = 100;
  std::size_t rejected = 0;
  for (const auto& mutant : mutate(instance(50), spec)) {
    if (!run(g, g.start, std::string_view(mutant)).outcome.success()) ++rejected;
  }
  c.require(rejected == 100, "only " + std::to_string(rejected) + "/100 mutations rejected");

  std::string big = instance(1000);
  std::u32string big32 = decode_utf8(big);
  auto start = Clock::now();
  auto r = run(g, g.start, big32);
  double elapsed = seconds_since(start);
  c.require(r.outcome.success() && r.outcome.pos == big32.size(), "k=1000 instance must parse");
  c.require(elapsed < 1.0, "k=1000 runtime bound 1 s exceeded: " + std::to_string(elapsed));
  c.log << "    k=1000 parsed in " << std::fixed << elapsed << " s\n";
}

void criterion_4(Criterion& c) {
  auto start = Clock::now();
  Grammar g;
  const CharSet digits = CharSet::range(U'0', U'9');

  auto count_ok = [&](const Expr& e, std::size_t n) {
    std::size_t count = 0;
    for (const auto& o : search(g, e, n)) count += o.ok ? 1 : 0;
    return count;
  };

  c.require(count_ok(seq(term(Terminal::char_class("[0-9]", digits)), term(U'a')), 3) == 1,
            "[0-9] 'a' at n=3 must have exactly 1 ok outcome");
  c.require(count_ok(seq(neg(term(U'a')), term(U'b'), choice(term(U'c'), term(U'd'))), 3) == 2,
            "!a b (c/d) at n=3 must have exactly 2 ok outcomes");
  for (std::size_t n = 1; n <= 4; ++n) {
    c.require(count_ok(seq(neg(term(U'a')), term(U'a')), n) == 0, "!a a must have no solution");
  }

  Grammar number = desugar(load_grammar(GRAMMARS_DIR "/number.peg"));
  auto outcomes = search(number, number.start, 3);
  std::size_t ok_count = 0;
  for (const auto& o : outcomes) ok_count += o.ok ? 1 : 0;
  c.require(ok_count == 7, "NUMBER at n=3 must have exactly 7 ok outcomes, got " +
                               std::to_string(ok_count));

  CharSet alphabet = CharSet::of(U"01.a");
  std::set<std::pair<std::string, std::size_t>> from_search;
  for (const auto& o : outcomes) {
    if (!o.ok) continue;
    for (const auto& s : enumerate_instances(o, alphabet).strings) {
      from_search.emplace(s, o.consumed.size());
    }
  }
  std::set<std::pair<std::string, std::size_t>> from_oracle;
  for (const auto& sample : brute_force_language(number, alphabet, 3)) {
    if (sample.outcome.success()) from_oracle.emplace(sample.text, sample.outcome.pos);
  }
  c.require(from_search == from_oracle,
            "NUMBER instance sets must equal the brute-force accepted set");

  double elapsed = seconds_since(start);
  c.require(elapsed < 10.0, "runtime bound 10 s exceeded: " + std::to_string(elapsed));
}

void criterion_5(Criterion& c) {
  auto start = Clock::now();
  testgen::Gen gen(271828,
                   {.max_depth = 3, .max_rules = 3, .allow_control = false, .core_only = true});
  CharSet alphabet = CharSet::of(U"abc");
  std::size_t disagreements = 0;
  for (int i = 0; i < 50; ++i) {
    Grammar g = gen.grammar();
    for (std::size_t n = 0; n <= 5; ++n) {
      std::set<std::pair<std::string, std::size_t>> from_search;
      for (const auto& o : search(g, g.start, n)) {
        if (!o.ok) continue;
        for (const auto& s : enumerate_instances(o, alphabet).strings) {
          from_search.emplace(s, o.consumed.size());
        }
      }
      std::set<std::pair<std::string, std::size_t>> from_oracle;
      for (const auto& sample : brute_force_language(g, alphabet, n)) {
        if (sample.outcome.success()) from_oracle.emplace(sample.text, sample.outcome.pos);
      }
      if (from_search != from_oracle) ++disagreements;
    }
  }
  c.require(disagreements == 0,
            "symbolic/oracle disagreement in " + std::to_string(disagreements) + " runs");
  double elapsed = seconds_since(start);
  c.require(elapsed < 300.0, "runtime bound 5 min exceeded: " + std::to_string(elapsed));
  c.log << "    50 grammars, n <= 5, " << std::fixed << elapsed << " s\n";
}

void criterion_6(Criterion& c) {
  // Suite 2 ran every input in both simplify modes; reuse those stats.
  c.require(adequacy_stats.runs > 0, "criterion 2 must run first");
  c.require(adequacy_stats.outcomes_match_across_modes,
            "pruning changed an outcome in the adequacy sweep");
  c.require(adequacy_stats.depth_le, "pruning increased a stack depth in the adequacy sweep");

  // Suites 1 and 3 re-run in both modes.
  Grammar g;
  Grammar anbncn = desugar(load_grammar(GRAMMARS_DIR "/anbncn.peg"));
  std::vector<std::pair<Expr, std::string>> cases = {
      {star(seq(term(U'a'), term(U'b'))), "abac"},
      {catch_expr(choice(throw_expr(), empty())), "zz"},
      {choice(catch_expr(throw_expr()), catch_expr(empty())), "zz"},
      {anbncn.start, "aabbcc"},
      {anbncn.start, "aabbc"},
      {anbncn.start, std::string(30, 'a') + std::string(30, 'b') + std::string(30, 'c')},
  };
  for (const auto& [expr, input] : cases) {
    const Grammar& which = expr == anbncn.start ? anbncn : g;
    MachineConfig on, off;
    on.simplify = true;
    off.simplify = false;
    auto with = run(which, expr, std::string_view(input), on);
    auto without = run(which, expr, std::string_view(input), off);
    c.require(with.outcome == without.outcome, "outcome changed by pruning on " + input);
    c.require(with.metrics.max_stack_depth <= without.metrics.max_stack_depth,
              "depth grew under pruning on " + input);
  }

  // Witness family: try(..) under k nested choices, k = 2..6.
  for (int k = 2; k <= 6; ++k) {
    Expr e = try_expr(seq(term(U'a'), term(U'b')));
    for (int i = 0; i < k; ++i) e = choice(e, term(U'c'));
    MachineConfig on, off;
    on.simplify = true;
    off.simplify = false;
    auto with = run(g, e, std::string_view("ab"), on);
    auto without = run(g, e, std::string_view("ab"), off);
    c.require(with.outcome == without.outcome, "witness outcome changed by pruning");
    c.require(with.metrics.max_stack_depth < without.metrics.max_stack_depth,
              "pruning not strictly better at k=" + std::to_string(k));
  }
}

void criterion_7(Criterion& c) {
  Grammar plain = desugar(load_grammar(GRAMMARS_DIR "/mini_json.peg"));
  Grammar annotated = desugar(load_grammar(GRAMMARS_DIR "/mini_json_try.peg"));

  std::ifstream seed(GRAMMARS_DIR "/corpus/seed.json", std::ios::binary);
  std::ostringstream buffer;
  buffer << seed.rdbuf();
  std::string valid = buffer.str();
  c.require(!valid.empty(), "seed corpus file must exist");

  MutationSpec spec;
  spec.deletable = U"]}:,";
  spec.max_deletions = 10;
  spec.seed = 7;
  spec.variants = 10;
  Corpus corpus = {{"seed", valid}};
  int i = 0;
  for (auto& m : mutate(valid, spec)) corpus.emplace_back("mut" + std::to_string(i++), m);

  DiffReport report = diff_grammars(plain, annotated, corpus);
  c.require(report.all_agree(), "annotated grammar changed acceptance on the corpus");
  c.require(report.invalid_count == 10, "all 10 mutants must be invalid, got " +
                                            std::to_string(report.invalid_count));
  c.require(report.valid_count == 1, "the seed file must be valid");
  c.require(report.invalid_reduction() > 0.0, "no entry-step reduction on invalid inputs");
  double valid_increase = -report.valid_reduction();
  c.require(valid_increase < 0.02, "valid-input overhead must stay under 2%, got " +
                                       std::to_string(100.0 * valid_increase) + "%");
  char line[128];
  std::snprintf(line, sizeof line, "    invalid reduction %.1f%%, valid overhead %.2f%%\n",
                100.0 * report.invalid_reduction(), 100.0 * valid_increase);
  c.log << line;
}

void criterion_8(Criterion& c) {
  testgen::Gen gen(314159, {.max_depth = 3, .max_rules = 1, .terminals = U"ab",
                            .allow_control = true});
  Grammar g;
  auto inputs = all_strings(U"ab", 4);
  std::size_t disagreements = 0;
  for (int i = 0; i < 100; ++i) {
    Expr e = gen.expr();
    Expr e2 = gen.expr();
    for (const auto& input : inputs) {
      bool base = eval(g, e, input).success();
      // catch(try(e)) ~ e (cancellation)
      if (eval(g, catch_expr(try_expr(e)), input).success() != base) ++disagreements;
      // catch(e) catch(e') ~ catch(e e')
      bool lhs = eval(g, seq(catch_expr(e), catch_expr(e2)), input).success();
      bool rhs = eval(g, catch_expr(seq(e, e2)), input).success();
      if (lhs != rhs) ++disagreements;
      // catch(!e) ~ !catch(e)
      if (eval(g, catch_expr(neg(e)), input).success() !=
          eval(g, neg(catch_expr(e)), input).success()) {
        ++disagreements;
      }
    }
  }
  c.require(disagreements == 0,
            "equivalence law violated " + std::to_string(disagreements) + " times");
}

}  // namespace

int main() {
  struct Entry {
    int number;
    const char* title;
    std::function<void(Criterion&)> fn;
  };
  std::vector<Entry> entries = {
      {1, "worked-example goldens", criterion_1},
      {2, "adequacy: bigstep vs machine on 200 random grammars", criterion_2},
      {3, "a^n b^n c^n family, mutations, k=1000 under 1 s", criterion_3},
      {4, "symbolic goldens (exact counts)", criterion_4},
      {5, "symbolic search vs brute-force oracle equivalence", criterion_5},
      {6, "pruning soundness and economy", criterion_6},
      {7, "directional cut effect on the mini-JSON corpus", criterion_7},
      {8, "catch/try equivalence laws", criterion_8},
  };

  bool all_passed = true;
  for (auto& entry : entries) {
    Criterion c;
    auto start = Clock::now();
    try {
      entry.fn(c);
    } catch (const std::exception& e) {
      c.passed = false;
      c.log << "    exception: " << e.what() << "\n";
    }
    double elapsed = seconds_since(start);
    char line[160];
    std::snprintf(line, sizeof line, "[%s] criterion %d: %s (%.2fs)",
                  c.passed ? "PASS" : "FAIL", entry.number, entry.title, elapsed);
    std::cout << line << "\n" << c.log.str();
    all_passed = all_passed && c.passed;
  }
  std::cout << (all_passed ? "acceptance: all criteria passed" : "acceptance: FAILURES above")
            << "\n";
  return all_passed ? 0 : 1;
}
