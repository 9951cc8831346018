#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "peg/bigstep.hpp"
#include "peg/machine.hpp"

namespace peg {

// Draw from [0, bound) using the raw mt19937_64 stream and a multiply-shift
// reduction. std::uniform_int_distribution is implementation-defined, this is
// seed-stable across platforms.
std::uint64_t bounded_rand(std::mt19937_64& rng, std::uint64_t bound);

struct MutationSpec {
  std::u32string deletable;  // characters eligible for deletion
  int max_deletions = 10;
  std::uint64_t seed = 0;
  int variants = 10;
};

// Produces `variants` strings, each with 1..max_deletions occurrences of
// deletable characters removed (positions sampled without replacement).
// Deterministic per (text, spec). Throws no_deletable_symbols if the text
// contains none of the listed characters.
std::vector<std::string> mutate(std::string_view text, const MutationSpec& spec);

struct BenchRecord {
  std::string file;
  std::string grammar;
  std::string outcome;  // success | fail | error | budget
  std::uint64_t entry_steps = 0;
  std::uint64_t total_steps = 0;
  std::size_t max_depth = 0;
  double ms = 0.0;
};

using Corpus = std::vector<std::pair<std::string, std::string>>;  // (id, text)

// One machine run per input; a per-record budget overrun is recorded as
// outcome "budget", not raised.
std::vector<BenchRecord> bench_batch(const std::string& grammar_id, const Grammar& g,
                                     const Corpus& corpus, const MachineConfig& cfg = {});

// One JSON object per line (keys: file, grammar, outcome, entry_steps,
// total_steps, max_depth, ms); optionally a summary line with
// "aggregate": true.
void write_jsonl(std::ostream& out, const std::vector<BenchRecord>& records,
                 bool with_aggregate = true);

struct DiffRow {
  std::string file;
  std::string plain_outcome;
  std::string annotated_outcome;
  bool agree = true;  // annotated Error counts as a rejection
  std::uint64_t plain_entry = 0;
  std::uint64_t annotated_entry = 0;
};

struct DiffReport {
  std::vector<DiffRow> rows;
  std::uint64_t plain_invalid_entry = 0;
  std::uint64_t annotated_invalid_entry = 0;
  std::uint64_t plain_valid_entry = 0;
  std::uint64_t annotated_valid_entry = 0;
  std::size_t invalid_count = 0;
  std::size_t valid_count = 0;

  bool all_agree() const;
  // 1.0 - annotated/plain over the inputs the plain grammar rejects/accepts.
  double invalid_reduction() const;
  double valid_reduction() const;
};

DiffReport diff_grammars(const Grammar& plain, const Grammar& annotated, const Corpus& corpus,
                         const MachineConfig& cfg = {});

struct LanguageSample {
  std::string text;
  Outcome outcome;
};

// Big-step outcome for every string of length n (or every length <= n) over
// the alphabet, in lexicographic order. Guards |alphabet|^n against `cap`.
std::vector<LanguageSample> brute_force_language(const Grammar& g, const CharSet& alphabet,
                                                 std::size_t n, bool up_to = false,
                                                 std::size_t cap = 2'000'000,
                                                 EvalBudget budget = {});

}  // namespace peg
