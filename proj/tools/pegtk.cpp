// pegtk - PEG engine and analysis toolkit: parse, generate, benchmark,
// mutate, diff and check grammars.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "peg/bigstep.hpp"
#include "peg/errors.hpp"
#include "peg/grammar_parser.hpp"
#include "peg/harness.hpp"
#include "peg/machine.hpp"
#include "peg/symbolic.hpp"
#include "peg/unicode.hpp"

namespace fs = std::filesystem;

namespace {

// Exit codes: 0 success, 1 fail (or findings), 2 error outcome, 3 usage,
// 4 grammar problems, 5 budget, 6 internal.
constexpr int kExitSuccess = 0;
constexpr int kExitFail = 1;
constexpr int kExitError = 2;
constexpr int kExitUsage = 3;
constexpr int kExitGrammar = 4;
constexpr int kExitBudget = 5;
constexpr int kExitInternal = 6;

struct grammar_rejected : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void report_issues(const std::string& path, const std::vector<peg::CheckIssue>& issues) {
  for (const auto& issue : issues) {
    std::cerr << path << ": " << issue.reason << " in rule '" << issue.rule << "'";
    if (!issue.detail.empty()) std::cerr << ": " << issue.detail;
    std::cerr << "\n";
  }
}

// Parse, desugar and statically check a grammar file.
peg::Grammar load_checked(const std::string& path, bool check = true) {
  peg::Grammar g = peg::desugar(peg::load_grammar(path));
  if (check) {
    auto wf = peg::check_wellformed(g);
    auto place = peg::check_cut_placement(g);
    if (!wf.ok() || !place.ok()) {
      report_issues(path, wf.issues);
      report_issues(path, place.issues);
      throw grammar_rejected("grammar rejected by static checks: " + path);
    }
  }
  return g;
}

peg::Corpus read_corpus(const std::string& dir) {
  peg::Corpus corpus;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& f : files) corpus.emplace_back(f.filename().string(), read_file(f.string()));
  if (corpus.empty()) throw std::runtime_error("empty corpus directory: " + dir);
  return corpus;
}

int outcome_exit(peg::OutcomeKind kind) {
  switch (kind) {
    case peg::OutcomeKind::Success:
      return kExitSuccess;
    case peg::OutcomeKind::Fail:
      return kExitFail;
    case peg::OutcomeKind::Error:
      return kExitError;
  }
  return kExitInternal;
}

// ---------------------------------------------------------------------------

struct ParseArgs {
  std::string grammar_path;
  std::string input_file;
  std::string text;
  bool have_text = false;
  bool bigstep = false;
  bool machine = false;
  bool no_simplify = false;
  bool trace = false;
  bool full = false;
  bool no_check = false;
  bool jsonl = false;
  std::uint64_t budget = 100'000'000;
};

int cmd_parse(const ParseArgs& args) {
  peg::Grammar g = load_checked(args.grammar_path, !args.no_check);
  std::string text = args.have_text ? args.text : read_file(args.input_file);
  std::u32string input = peg::decode_utf8(text);

  peg::Expr start = g.start;
  if (args.full) start = peg::seq(start, peg::neg(peg::term(peg::Terminal::any())));

  peg::Outcome outcome;
  peg::StepMetrics metrics;
  bool with_metrics = !args.bigstep;
  if (args.bigstep) {
    outcome = peg::eval(g, start, input, peg::EvalBudget{args.budget});
  } else {
    peg::MachineConfig cfg;
    cfg.simplify = !args.no_simplify;
    cfg.budget = args.budget;
    peg::TraceSink sink;
    if (args.trace) {
      sink = [](const peg::TraceRecord& r) {
        std::cout << "trace " << r.index << " " << r.rule << " pos=" << r.pos
                  << " depth=" << r.depth << "\n";
      };
    }
    auto result = peg::run(g, start, input, cfg, sink);
    outcome = result.outcome;
    metrics = result.metrics;
  }

  std::string consumed = peg::encode_utf8(peg::consumed_of(input, outcome));
  std::string rest = peg::encode_utf8(peg::rest_of(input, outcome));
  if (args.jsonl) {
    nlohmann::ordered_json row;
    row["outcome"] = std::string(peg::to_string(outcome.kind));
    row["consumed"] = consumed;
    row["rest"] = rest;
    if (with_metrics) {
      row["entry_steps"] = metrics.entry_steps;
      row["total_steps"] = metrics.total_steps;
      row["max_depth"] = metrics.max_stack_depth;
    }
    std::cout << row.dump() << "\n";
  } else {
    std::cout << "outcome: " << peg::to_string(outcome.kind) << "\n";
    std::cout << "consumed: " << peg::quote_string(consumed) << "\n";
    std::cout << "rest: " << peg::quote_string(rest) << "\n";
    if (with_metrics) {
      std::cout << "entry_steps=" << metrics.entry_steps << " total_steps=" << metrics.total_steps
                << " max_depth=" << metrics.max_stack_depth << "\n";
    }
  }
  return outcome_exit(outcome.kind);
}

struct GenArgs {
  std::string grammar_path;
  std::size_t max_len = 0;
  std::string alphabet;
  std::size_t limit = 0;
  bool have_limit = false;
  bool show_fail = false;
};

int cmd_gen(const GenArgs& args) {
  peg::Grammar g = load_checked(args.grammar_path);

  std::u32string alphabet_chars;
  if (!args.alphabet.empty()) {
    alphabet_chars = peg::decode_utf8(args.alphabet);
  } else if (g.alphabet) {
    alphabet_chars = *g.alphabet;
  }

  for (std::size_t n = 1; n <= args.max_len; ++n) {
    peg::SearchOptions options;
    options.include_fail = args.show_fail;
    if (args.have_limit) options.limit = args.limit;
    std::vector<peg::SymOutcome> outcomes;
    bool capped = false;
    try {
      outcomes = peg::search(g, g.start, n, options);
    } catch (const peg::solution_cap_exceeded& cap) {
      outcomes = cap.partial;
      capped = true;
    }
    std::size_t ok_count = 0;
    for (const auto& o : outcomes) ok_count += o.ok ? 1 : 0;
    std::cout << "length " << n << ": " << ok_count << (ok_count == 1 ? " solution" : " solutions")
              << (capped ? " (solution cap reached)" : "") << "\n";
    for (const auto& o : outcomes) {
      std::cout << "  ";
      if (args.show_fail) std::cout << (o.ok ? "ok   " : "fail ");
      std::cout << peg::to_string(o) << "\n";
      if (o.ok && !alphabet_chars.empty()) {
        auto instances =
            peg::enumerate_instances(o, peg::CharSet::of(alphabet_chars), 64);
        for (const auto& s : instances.strings) {
          std::cout << "       " << peg::quote_string(s) << "\n";
        }
        if (instances.truncated) std::cout << "       ...\n";
      }
    }
  }
  return kExitSuccess;
}

struct BenchArgs {
  std::string grammar_path;
  std::string corpus_dir;
  bool no_simplify = false;
  std::string jsonl_out;
  std::uint64_t budget = 100'000'000;
};

int cmd_bench(const BenchArgs& args) {
  peg::Grammar g = load_checked(args.grammar_path);
  peg::Corpus corpus = read_corpus(args.corpus_dir);
  peg::MachineConfig cfg;
  cfg.simplify = !args.no_simplify;
  cfg.budget = args.budget;
  auto records = peg::bench_batch(fs::path(args.grammar_path).filename().string(), g, corpus, cfg);
  if (!args.jsonl_out.empty()) {
    std::ofstream out(args.jsonl_out);
    if (!out) throw std::runtime_error("cannot open output file: " + args.jsonl_out);
    peg::write_jsonl(out, records);
  } else {
    peg::write_jsonl(std::cout, records);
  }
  return kExitSuccess;
}

struct DiffArgs {
  std::string plain_path;
  std::string annotated_path;
  std::string corpus_dir;
  std::uint64_t budget = 100'000'000;
};

int cmd_diff(const DiffArgs& args) {
  peg::Grammar plain = load_checked(args.plain_path);
  peg::Grammar annotated = load_checked(args.annotated_path);
  peg::Corpus corpus = read_corpus(args.corpus_dir);
  peg::MachineConfig cfg;
  cfg.budget = args.budget;
  peg::DiffReport report = peg::diff_grammars(plain, annotated, corpus, cfg);

  for (const auto& row : report.rows) {
    std::cout << row.file << ": plain=" << row.plain_outcome
              << " annotated=" << row.annotated_outcome
              << " agree=" << (row.agree ? "yes" : "NO") << " plain_entry=" << row.plain_entry
              << " annotated_entry=" << row.annotated_entry << "\n";
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "aggregate: rejected n=%zu reduction=%.1f%% | accepted n=%zu reduction=%.1f%%",
                report.invalid_count, 100.0 * report.invalid_reduction(), report.valid_count,
                100.0 * report.valid_reduction());
  std::cout << buf << "\n";
  if (!report.all_agree()) {
    std::cerr << "acceptance disagreement: the annotation changed the language\n";
    return kExitFail;
  }
  return kExitSuccess;
}

struct MutateArgs {
  std::string file;
  std::string symbols = "]}:,";
  int max_del = 10;
  std::uint64_t seed = 0;
  int variants = 10;
  std::string out_dir;
};

int cmd_mutate(const MutateArgs& args) {
  std::string text = read_file(args.file);
  peg::MutationSpec spec;
  spec.deletable = peg::decode_utf8(args.symbols);
  spec.max_deletions = args.max_del;
  spec.seed = args.seed;
  spec.variants = args.variants;
  std::vector<std::string> variants = peg::mutate(text, spec);
  if (!args.out_dir.empty()) {
    fs::create_directories(args.out_dir);
    std::string base = fs::path(args.file).filename().string();
    for (std::size_t i = 0; i < variants.size(); ++i) {
      fs::path out_path = fs::path(args.out_dir) / (base + ".mut" + std::to_string(i));
      std::ofstream out(out_path, std::ios::binary);
      out << variants[i];
      std::cout << out_path.string() << "\n";
    }
  } else {
    for (std::size_t i = 0; i < variants.size(); ++i) {
      std::cout << "--- variant " << i << "\n" << variants[i] << "\n";
    }
  }
  return kExitSuccess;
}

struct CheckArgs {
  std::string grammar_path;
  std::size_t utp = 0;
  bool have_utp = false;
};

int cmd_check(const CheckArgs& args) {
  peg::Grammar g = peg::desugar(peg::load_grammar(args.grammar_path));
  auto wf = peg::check_wellformed(g);
  auto place = peg::check_cut_placement(g);
  report_issues(args.grammar_path, wf.issues);
  report_issues(args.grammar_path, place.issues);
  bool bad = !wf.ok() || !place.ok();
  if (!bad) std::cout << "well-formedness: ok\ncut placement: ok\n";

  if (args.have_utp && !bad) {
    if (g.lexical.empty()) {
      std::cerr << "utp: grammar declares no %token nonterminals\n";
      return kExitUsage;
    }
    peg::UtpReport report = peg::utp_check(g, args.utp);
    if (report.clean()) {
      std::cout << "unique token prefix: no violation up to length " << args.utp << "\n";
    } else {
      for (const auto& v : report.violations) {
        std::cout << "utp violation: " << v.first << " and " << v.second << " share a prefix of "
                  << peg::quote_string(v.witness) << " (length " << v.length << ")\n";
      }
      bad = true;
    }
  }
  return bad ? kExitFail : kExitSuccess;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PEG engine and analysis toolkit"};
  app.require_subcommand(1);

  ParseArgs parse_args;
  auto* parse_cmd = app.add_subcommand("parse", "Run a grammar over an input");
  parse_cmd->add_option("grammar", parse_args.grammar_path, "Grammar file")->required();
  auto* input_opt = parse_cmd->add_option("-i,--input", parse_args.input_file, "Input file");
  auto* text_opt = parse_cmd->add_option("-t,--text", parse_args.text, "Input literal");
  parse_cmd->add_flag("--bigstep", parse_args.bigstep, "Use the big-step reference interpreter");
  parse_cmd->add_flag("--machine", parse_args.machine, "Use the frame machine (default)");
  parse_cmd->add_flag("--no-simplify", parse_args.no_simplify, "Disable choice-frame pruning");
  parse_cmd->add_flag("--trace", parse_args.trace, "Log one line per machine transition");
  parse_cmd->add_flag("--full", parse_args.full, "Require full input consumption (wraps start with ![.])");
  parse_cmd->add_flag("--no-check", parse_args.no_check, "Skip the static checks");
  parse_cmd->add_flag("--jsonl", parse_args.jsonl, "Machine-readable output");
  parse_cmd->add_option("--budget", parse_args.budget, "Step budget");
  input_opt->excludes(text_opt);

  GenArgs gen_args;
  auto* gen_cmd = app.add_subcommand("gen", "Enumerate symbolic outcomes up to a length");
  gen_cmd->add_option("grammar", gen_args.grammar_path, "Grammar file")->required();
  gen_cmd->add_option("--max-len", gen_args.max_len, "Maximum string length")->required();
  gen_cmd->add_option("--alphabet", gen_args.alphabet, "Alphabet for concrete instances");
  auto* limit_opt = gen_cmd->add_option("--limit", gen_args.limit, "Solution cap per length");
  gen_cmd->add_flag("--show-fail", gen_args.show_fail, "Also print failing outcomes");

  BenchArgs bench_args;
  auto* bench_cmd = app.add_subcommand("bench", "Batch step-count benchmark over a corpus");
  bench_cmd->add_option("grammar", bench_args.grammar_path, "Grammar file")->required();
  bench_cmd->add_option("corpus", bench_args.corpus_dir, "Corpus directory")->required();
  bench_cmd->add_flag("--no-simplify", bench_args.no_simplify, "Disable choice-frame pruning");
  bench_cmd->add_option("--jsonl", bench_args.jsonl_out, "Write JSON lines to this file");
  bench_cmd->add_option("--budget", bench_args.budget, "Step budget per input");

  DiffArgs diff_args;
  auto* diff_cmd = app.add_subcommand("diff", "Compare two grammars over a corpus");
  diff_cmd->add_option("plain", diff_args.plain_path, "Baseline grammar")->required();
  diff_cmd->add_option("annotated", diff_args.annotated_path, "Annotated grammar")->required();
  diff_cmd->add_option("corpus", diff_args.corpus_dir, "Corpus directory")->required();
  diff_cmd->add_option("--budget", diff_args.budget, "Step budget per input");

  MutateArgs mutate_args;
  auto* mutate_cmd = app.add_subcommand("mutate", "Derive invalid inputs by symbol deletion");
  mutate_cmd->add_option("file", mutate_args.file, "Input file")->required();
  mutate_cmd->add_option("--symbols", mutate_args.symbols, "Deletable characters");
  mutate_cmd->add_option("--max-del", mutate_args.max_del, "Maximum deletions per variant")
      ->check(CLI::PositiveNumber);
  mutate_cmd->add_option("--seed", mutate_args.seed, "PRNG seed");
  mutate_cmd->add_option("--variants", mutate_args.variants, "Number of variants")
      ->check(CLI::PositiveNumber);
  mutate_cmd->add_option("--out-dir", mutate_args.out_dir, "Write variants into this directory");

  CheckArgs check_args;
  auto* check_cmd = app.add_subcommand("check", "Static checks and bounded UTP verification");
  check_cmd->add_option("grammar", check_args.grammar_path, "Grammar file")->required();
  auto* utp_opt = check_cmd->add_option("--utp", check_args.utp, "Unique-token-prefix bound");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? kExitSuccess : kExitUsage;
  }

  parse_args.have_text = text_opt->count() > 0;
  gen_args.have_limit = limit_opt->count() > 0;
  check_args.have_utp = utp_opt->count() > 0;
  if (parse_cmd->parsed() && !parse_args.have_text && parse_args.input_file.empty()) {
    std::cerr << "parse: provide --input or --text\n";
    return kExitUsage;
  }

  try {
    if (parse_cmd->parsed()) return cmd_parse(parse_args);
    if (gen_cmd->parsed()) return cmd_gen(gen_args);
    if (bench_cmd->parsed()) return cmd_bench(bench_args);
    if (diff_cmd->parsed()) return cmd_diff(diff_args);
    if (mutate_cmd->parsed()) return cmd_mutate(mutate_args);
    if (check_cmd->parsed()) return cmd_check(check_args);
  } catch (const peg::parse_error& e) {
    std::cerr << "grammar error: " << e.what() << "\n";
    return kExitGrammar;
  } catch (const grammar_rejected& e) {
    std::cerr << e.what() << "\n";
    return kExitGrammar;
  } catch (const peg::budget_exceeded& e) {
    std::cerr << e.what() << "\n";
    return kExitBudget;
  } catch (const peg::unsupported_construct& e) {
    std::cerr << "grammar not supported here: " << e.what() << "\n";
    return kExitGrammar;
  } catch (const peg::no_deletable_symbols& e) {
    std::cerr << e.what() << "\n";
    return kExitFail;
  } catch (const std::invalid_argument& e) {
    std::cerr << "bad input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}
