#include "peg/harness.hpp"

#include <algorithm>
#include <chrono>
#include <ostream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "peg/errors.hpp"
#include "peg/unicode.hpp"

namespace peg {

std::uint64_t bounded_rand(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == 0) return 0;
  unsigned __int128 wide = static_cast<unsigned __int128>(rng()) * bound;
  return static_cast<std::uint64_t>(wide >> 64);
}

std::vector<std::string> mutate(std::string_view text, const MutationSpec& spec) {
  if (spec.variants < 1) throw std::invalid_argument("mutate: variants must be >= 1");
  if (spec.max_deletions < 1) throw std::invalid_argument("mutate: max_deletions must be >= 1");
  if (text.empty()) throw std::invalid_argument("mutate: text must be non-empty");

  std::u32string chars = decode_utf8(text);
  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < chars.size(); ++i) {
    if (spec.deletable.find(chars[i]) != std::u32string::npos) candidates.push_back(i);
  }
  if (candidates.empty()) {
    throw no_deletable_symbols("input contains none of the deletable symbols");
  }

  std::mt19937_64 rng(spec.seed);
  std::vector<std::string> out;
  out.reserve(static_cast<std::size_t>(spec.variants));
  for (int v = 0; v < spec.variants; ++v) {
    std::uint64_t upper =
        std::min<std::uint64_t>(static_cast<std::uint64_t>(spec.max_deletions), candidates.size());
    std::size_t k = static_cast<std::size_t>(1 + bounded_rand(rng, upper));
    // Partial Fisher-Yates: the first k entries are a sample without
    // replacement.
    std::vector<std::size_t> pool = candidates;
    for (std::size_t j = 0; j < k; ++j) {
      std::size_t swap_with = j + static_cast<std::size_t>(bounded_rand(rng, pool.size() - j));
      std::swap(pool[j], pool[swap_with]);
    }
    std::vector<std::size_t> chosen(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k));
    std::sort(chosen.rbegin(), chosen.rend());
    std::u32string mutated = chars;
    for (std::size_t index : chosen) mutated.erase(mutated.begin() + static_cast<std::ptrdiff_t>(index));
    out.push_back(encode_utf8(mutated));
  }
  return out;
}

namespace {

BenchRecord run_one(const std::string& file_id, const std::string& grammar_id, const Grammar& g,
                    const std::string& text, const MachineConfig& cfg) {
  BenchRecord rec;
  rec.file = file_id;
  rec.grammar = grammar_id;
  std::u32string input = decode_utf8(text);
  Machine m(g, g.start, input, cfg);
  auto t0 = std::chrono::steady_clock::now();
  try {
    while (!m.done()) m.step();
    rec.outcome = std::string(to_string(m.outcome().kind));
  } catch (const budget_exceeded&) {
    rec.outcome = "budget";
  }
  auto t1 = std::chrono::steady_clock::now();
  rec.entry_steps = m.metrics().entry_steps;
  rec.total_steps = m.metrics().total_steps;
  rec.max_depth = m.metrics().max_stack_depth;
  rec.ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  return rec;
}

}  // namespace

std::vector<BenchRecord> bench_batch(const std::string& grammar_id, const Grammar& g,
                                     const Corpus& corpus, const MachineConfig& cfg) {
  std::vector<BenchRecord> out;
  out.reserve(corpus.size());
  for (const auto& [id, text] : corpus) out.push_back(run_one(id, grammar_id, g, text, cfg));
  return out;
}

void write_jsonl(std::ostream& out, const std::vector<BenchRecord>& records, bool with_aggregate) {
  nlohmann::ordered_json agg;
  std::uint64_t entry = 0, total = 0;
  std::size_t depth = 0;
  double ms = 0.0;
  for (const BenchRecord& r : records) {
    nlohmann::ordered_json row;
    row["file"] = r.file;
    row["grammar"] = r.grammar;
    row["outcome"] = r.outcome;
    row["entry_steps"] = r.entry_steps;
    row["total_steps"] = r.total_steps;
    row["max_depth"] = r.max_depth;
    row["ms"] = r.ms;
    out << row.dump() << "\n";
    entry += r.entry_steps;
    total += r.total_steps;
    depth = std::max(depth, r.max_depth);
    ms += r.ms;
  }
  if (with_aggregate) {
    agg["aggregate"] = true;
    agg["files"] = records.size();
    agg["entry_steps"] = entry;
    agg["total_steps"] = total;
    agg["max_depth"] = depth;
    agg["ms"] = ms;
    out << agg.dump() << "\n";
  }
}

bool DiffReport::all_agree() const {
  return std::all_of(rows.begin(), rows.end(), [](const DiffRow& r) { return r.agree; });
}

double DiffReport::invalid_reduction() const {
  if (plain_invalid_entry == 0) return 0.0;
  return 1.0 - static_cast<double>(annotated_invalid_entry) /
                   static_cast<double>(plain_invalid_entry);
}

double DiffReport::valid_reduction() const {
  if (plain_valid_entry == 0) return 0.0;
  return 1.0 -
         static_cast<double>(annotated_valid_entry) / static_cast<double>(plain_valid_entry);
}

DiffReport diff_grammars(const Grammar& plain, const Grammar& annotated, const Corpus& corpus,
                         const MachineConfig& cfg) {
  DiffReport report;
  for (const auto& [id, text] : corpus) {
    BenchRecord p = run_one(id, "plain", plain, text, cfg);
    BenchRecord a = run_one(id, "annotated", annotated, text, cfg);
    DiffRow row;
    row.file = id;
    row.plain_outcome = p.outcome;
    row.annotated_outcome = a.outcome;
    // An annotated error counts as a rejection when comparing languages.
    bool plain_accepts = p.outcome == "success";
    bool annotated_accepts = a.outcome == "success";
    row.agree = plain_accepts == annotated_accepts;
    row.plain_entry = p.entry_steps;
    row.annotated_entry = a.entry_steps;
    report.rows.push_back(row);
    if (plain_accepts) {
      report.valid_count++;
      report.plain_valid_entry += p.entry_steps;
      report.annotated_valid_entry += a.entry_steps;
    } else {
      report.invalid_count++;
      report.plain_invalid_entry += p.entry_steps;
      report.annotated_invalid_entry += a.entry_steps;
    }
  }
  return report;
}

std::vector<LanguageSample> brute_force_language(const Grammar& g, const CharSet& alphabet,
                                                 std::size_t n, bool up_to, std::size_t cap,
                                                 EvalBudget budget) {
  if (!alphabet.finite() || alphabet.empty()) {
    throw engine_error("brute force requires a non-empty finite alphabet");
  }
  const std::vector<char32_t>& chars = alphabet.base();
  double total = 0;
  for (std::size_t len = up_to ? 0 : n; len <= n; ++len) {
    double count = 1;
    for (std::size_t i = 0; i < len; ++i) count *= static_cast<double>(chars.size());
    total += count;
  }
  if (total > static_cast<double>(cap)) {
    throw engine_error("brute force cap exceeded");
  }

  std::vector<LanguageSample> out;
  std::u32string current;
  for (std::size_t len = up_to ? 0 : n; len <= n; ++len) {
    current.assign(len, chars.front());
    std::vector<std::size_t> idx(len, 0);
    for (;;) {
      for (std::size_t i = 0; i < len; ++i) current[i] = chars[idx[i]];
      out.push_back({encode_utf8(current), eval(g, g.start, current, budget)});
      std::size_t i = len;
      bool wrapped = true;
      while (i-- > 0) {
        if (++idx[i] < chars.size()) {
          wrapped = false;
          break;
        }
        idx[i] = 0;
      }
      if (wrapped) break;
    }
  }
  return out;
}

}  // namespace peg
