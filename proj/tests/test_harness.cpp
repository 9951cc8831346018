#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <sstream>

#include "peg/errors.hpp"
#include "peg/grammar_parser.hpp"
#include "peg/harness.hpp"
#include "peg/unicode.hpp"

using namespace peg;

namespace {

std::map<char32_t, int> char_histogram(std::string_view utf8) {
  std::map<char32_t, int> hist;
  for (char32_t c : decode_utf8(utf8)) hist[c]++;
  return hist;
}

}  // namespace

TEST_CASE("mutate: deterministic, bounded deletions of listed symbols only") {
  MutationSpec spec;
  spec.deletable = U":}";
  spec.max_deletions = 1;
  spec.seed = 7;
  spec.variants = 2;
  auto v1 = mutate("{a:1}", spec);
  auto v2 = mutate("{a:1}", spec);
  CHECK(v1 == v2);
  REQUIRE(v1.size() == 2);
  auto base = char_histogram("{a:1}");
  for (const auto& variant : v1) {
    auto hist = char_histogram(variant);
    int removed = 0;
    for (const auto& [c, n] : base) {
      CHECK(hist[c] <= n);
      int delta = n - hist[c];
      if (delta) CHECK(spec.deletable.find(c) != std::u32string::npos);
      removed += delta;
    }
    CHECK(removed == 1);
  }
}

TEST_CASE("mutate: never deletes zero symbols") {
  MutationSpec spec;
  spec.deletable = U"]},:";
  spec.max_deletions = 10;
  spec.variants = 50;
  spec.seed = 99;
  std::string text = "[{\"a\":1},{\"b\":2},{\"c\":3}]";
  for (const auto& variant : mutate(text, spec)) {
    CHECK(variant.size() < text.size());
    CHECK(variant.size() >= text.size() - 10);
  }
}

TEST_CASE("mutate: no deletable symbols is an error") {
  MutationSpec spec;
  spec.deletable = U";";
  CHECK_THROWS_AS(mutate("aaa", spec), no_deletable_symbols);
}

TEST_CASE("bench_batch golden and determinism") {
  Grammar g;
  g.add_rule("A", term(U'a'));
  g.start = seq(nonterm("A"), term(U'b'));

  auto empty_records = bench_batch("g", g, {});
  CHECK(empty_records.empty());

  Corpus corpus = {{"one", "ab"}, {"two", "ab"}, {"three", "ab"}};
  auto records = bench_batch("g", g, corpus);
  REQUIRE(records.size() == 3);
  std::uint64_t total = 0;
  for (const auto& r : records) {
    CHECK(r.outcome == "success");
    CHECK(r.entry_steps == 4);
    total += r.entry_steps;
  }
  CHECK(total == 3 * records[0].entry_steps);
}

TEST_CASE("bench_batch records budget overruns per input") {
  Grammar g;
  g.add_rule("A", star(term(U'a')));
  g.start = nonterm("A");
  MachineConfig cfg;
  cfg.budget = 5;
  auto records = bench_batch("g", g, {{"long", "aaaaaaaaaaaaaaaa"}}, cfg);
  REQUIRE(records.size() == 1);
  CHECK(records[0].outcome == "budget");
}

TEST_CASE("jsonl output carries the stable keys and an aggregate line") {
  Grammar g;
  g.add_rule("A", term(U'a'));
  g.start = nonterm("A");
  auto records = bench_batch("g", g, {{"f", "a"}});
  std::ostringstream out;
  write_jsonl(out, records);
  std::string text = out.str();
  CHECK(text.find("\"file\":\"f\"") != std::string::npos);
  CHECK(text.find("\"grammar\":\"g\"") != std::string::npos);
  CHECK(text.find("\"outcome\":\"success\"") != std::string::npos);
  CHECK(text.find("\"entry_steps\":") != std::string::npos);
  CHECK(text.find("\"total_steps\":") != std::string::npos);
  CHECK(text.find("\"max_depth\":") != std::string::npos);
  CHECK(text.find("\"ms\":") != std::string::npos);
  CHECK(text.find("\"aggregate\":true") != std::string::npos);
}

TEST_CASE("diff of a grammar against itself is all-zero") {
  Grammar g = desugar(load_grammar(GRAMMARS_DIR "/mini_json.peg"));
  Corpus corpus = {{"v", "{\"a\":1}"}, {"i", "{\"a\":}"}};
  DiffReport report = diff_grammars(g, g, corpus);
  CHECK(report.all_agree());
  for (const auto& row : report.rows) CHECK(row.plain_entry == row.annotated_entry);
  CHECK(report.invalid_reduction() == doctest::Approx(0.0));
  CHECK(report.valid_reduction() == doctest::Approx(0.0));
}

TEST_CASE("diff flags language changes from careless cuts") {
  // a e1 / a e2 versus a ^ e1 / a e2: the cut discards the second alternative
  // on any input starting with a, so "ac" is lost.
  Grammar plain, annotated;
  plain.start = choice(seq(term(U'a'), term(U'b')), seq(term(U'a'), term(U'c')));
  annotated.start = choice(seq(term(U'a'), cut(), term(U'b')), seq(term(U'a'), term(U'c')));
  DiffReport report = diff_grammars(plain, annotated, {{"lost", "ac"}});
  CHECK_FALSE(report.all_agree());
}

TEST_CASE("diff on the bundled mini-JSON pair shows the directional effect") {
  Grammar plain = desugar(load_grammar(GRAMMARS_DIR "/mini_json.peg"));
  Grammar annotated = desugar(load_grammar(GRAMMARS_DIR "/mini_json_try.peg"));

  std::ifstream seed(GRAMMARS_DIR "/corpus/seed.json", std::ios::binary);
  REQUIRE(seed.good());
  std::ostringstream buffer;
  buffer << seed.rdbuf();
  std::string valid = buffer.str();

  MutationSpec spec;
  spec.deletable = U"]}:,";
  spec.max_deletions = 10;
  spec.seed = 7;
  spec.variants = 10;
  Corpus corpus;
  int i = 0;
  for (auto& m : mutate(valid, spec)) corpus.emplace_back("mut" + std::to_string(i++), m);
  DiffReport report = diff_grammars(plain, annotated, corpus);
  CHECK(report.all_agree());
  CHECK(report.invalid_count == corpus.size());
  CHECK(report.invalid_reduction() > 0.0);
}

TEST_CASE("brute force language goldens") {
  Grammar g1;
  g1.start = empty();
  auto r1 = brute_force_language(g1, CharSet::of(U"a"), 1);
  REQUIRE(r1.size() == 1);
  CHECK(r1[0].text == "a");
  CHECK(r1[0].outcome == Outcome{OutcomeKind::Success, 0});

  Grammar g2;
  g2.start = term(U'a');
  auto r2 = brute_force_language(g2, CharSet::of(U"ab"), 1);
  REQUIRE(r2.size() == 2);
  CHECK(r2[0].text == "a");
  CHECK(r2[0].outcome == Outcome{OutcomeKind::Success, 1});
  CHECK(r2[1].text == "b");
  CHECK(r2[1].outcome == Outcome{OutcomeKind::Fail, 0});
}

TEST_CASE("brute force cap") {
  Grammar g;
  g.start = empty();
  CHECK_THROWS_AS(brute_force_language(g, CharSet::of(U"abc"), 10, false, 1000), engine_error);
}

TEST_CASE("a^n b^n c^n at n=6 accepts exactly aabbcc") {
  Grammar g = desugar(load_grammar(GRAMMARS_DIR "/anbncn.peg"));
  std::set<std::string> accepted;
  for (const auto& s : brute_force_language(g, CharSet::of(U"abc"), 6)) {
    if (s.outcome.success()) accepted.insert(s.text);
  }
  CHECK(accepted == std::set<std::string>{"aabbcc"});
}
