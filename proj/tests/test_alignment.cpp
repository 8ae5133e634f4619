#include <doctest.h>

#include <random>

#include "ntwfsm/alignment.hpp"
#include "ntwfsm/oracles.hpp"
#include "ntwfsm/search.hpp"
#include "test_support.hpp"

using namespace ntwfsm;

namespace {

const SymbolString E(1, kAlignedEpsilon);

std::vector<SymbolString> all_words(std::u32string_view alphabet, std::size_t max_length) {
  std::vector<SymbolString> words{U""};
  for (std::size_t k = 0; k < words.size(); ++k)
    if (words[k].size() < max_length)
      for (Symbol c : alphabet) words.push_back(words[k] + c);
  return words;
}

// Weight of an alignment recomputed from the aligned strings.
std::int64_t alignment_cost(const Alignment& al, const AlignerSpec& spec) {
  std::int64_t w = 0;
  for (std::size_t i = 0; i < al.a.size(); ++i) {
    if (al.a[i] == spec.marker)
      w += spec.insertion_cost;
    else if (al.b[i] == spec.marker)
      w += spec.deletion_cost;
    else
      w += spec.match_cost;
  }
  return w;
}

}  // namespace

TEST_CASE("build_aligner") {
  const auto m = build_aligner({});
  CHECK(m.num_states() == 1);
  CHECK(m.transitions().size() == 3);
  CHECK(m.arity() == 5);
  const auto f = build_aligner({.forbid_insert_then_delete = true});
  CHECK(f.num_states() == 2);

  try {
    build_aligner({.marker = U'x', .alphabet = U"xy"});
    FAIL("expected MarkerInAlphabet");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MarkerInAlphabet);
  }
  CHECK_THROWS_AS(build_aligner({.insertion_cost = -1}), Error);
}

TEST_CASE("align_pair examples") {
  const auto s = align_pair(U"swum", U"swim");
  CHECK(s.weight == 2);
  const bool first = s.a == U"sw" + E + U"um" && s.b == U"swi" + E + U"m";
  const bool second = s.a == U"swu" + E + U"m" && s.b == U"sw" + E + U"im";
  CHECK((first || second));

  const auto g = align_pair(U"gemacht", U"machen");
  CHECK(g.weight == 5);
  CHECK(strip_markers(g.a) == U"gemacht");
  CHECK(strip_markers(g.b) == U"machen");

  const auto e = align_pair(U"", U"x");
  CHECK(e.weight == 1);
  CHECK(e.a == E);
  CHECK(e.b == U"x");
  CHECK(e.ops == "I");

  CHECK_THROWS_AS(align_pair(U"a" + E, U"a"), Error);
}

TEST_CASE("gemacht-- over --mach-en has weight 5") {
  Alignment printed{U"gemacht" + E + E, E + E + U"mach" + E + U"en", "", 0};
  CHECK(alignment_cost(printed, {}) == 5);
  CHECK(strip_markers(printed.a) == U"gemacht");
  CHECK(strip_markers(printed.b) == U"machen");
}

TEST_CASE("strip_markers") {
  CHECK(strip_markers(U"sw" + E + U"um") == U"swum");
  CHECK(strip_markers(U"") == U"");
  CHECK(strip_markers(E + E) == U"");
  CHECK(strip_markers(U"a-b", U'-') == U"ab");
}

TEST_CASE("aligner weight equals the edit distance") {
  std::mt19937_64 rng(500);
  const auto aligner = build_aligner({});
  for (int i = 0; i < 500; ++i) {
    const auto a = testing::random_word(rng, U"abcd", 12);
    const auto b = testing::random_word(rng, U"abcd", 12);
    const auto al = align_pair(aligner, {}, a, b);
    CHECK(al.weight == edit_distance_matrix(a, b).distance);
    CHECK(al.a.size() == al.b.size());
    CHECK(al.ops.size() == al.a.size());
    CHECK(strip_markers(al.a) == a);
    CHECK(strip_markers(al.b) == b);
    CHECK(alignment_cost(al, {}) == al.weight);
    for (std::size_t k = 0; k < al.ops.size(); ++k) {
      if (al.ops[k] == 'K') CHECK(al.a[k] == al.b[k]);
      if (al.ops[k] == 'D') CHECK(al.b[k] == kAlignedEpsilon);
      if (al.ops[k] == 'I') CHECK(al.a[k] == kAlignedEpsilon);
    }
  }
}

TEST_CASE("custom costs") {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<std::int64_t> cost(0, 5);
  for (int i = 0; i < 100; ++i) {
    AlignerSpec spec;
    spec.insertion_cost = cost(rng);
    spec.deletion_cost = cost(rng);
    spec.match_cost = cost(rng);
    const auto a = testing::random_word(rng, U"ab", 6);
    const auto b = testing::random_word(rng, U"ab", 6);
    EditCosts c;
    c.insertion = spec.insertion_cost;
    c.deletion = spec.deletion_cost;
    c.match = spec.match_cost;
    CHECK(align_pair(a, b, spec).weight == edit_distance_matrix(a, b, c).distance);
  }
}

TEST_CASE("forbid insert-then-delete") {
  AlignerSpec spec;
  spec.forbid_insert_then_delete = true;
  const auto forbid = build_aligner(spec);

  const auto s = align_pair(forbid, spec, U"swum", U"swim");
  CHECK(s.a == U"swu" + E + U"m");
  CHECK(s.b == U"sw" + E + U"im");
  CHECK(s.weight == 2);

  const auto words = all_words(U"xy", 3);
  for (const auto& a : words)
    for (const auto& b : words) {
      const auto labels = testing::enumerate_accepting_labels(forbid, {a, b}, {0, 1});
      CHECK_FALSE(labels.empty());
      for (const auto& tapes : labels) CHECK(tapes[4].find(U"ID") == SymbolString::npos);
      const auto best = align_pair(forbid, spec, a, b);
      CHECK(best.ops.find("ID") == std::string::npos);
      CHECK(best.weight >= align_pair(a, b).weight);
    }
}

TEST_CASE("custom marker") {
  AlignerSpec spec;
  spec.marker = U'-';
  const auto al = align_pair(U"swum", U"swim", spec);
  CHECK(strip_markers(al.a, U'-') == U"swum");
  CHECK_THROWS_AS(align_pair(U"a-", U"a", spec), Error);
}
