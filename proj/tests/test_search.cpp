#include <doctest.h>

#include <random>

#include "ntwfsm/alignment.hpp"
#include "ntwfsm/machine_io.hpp"
#include "ntwfsm/oracle_check.hpp"
#include "ntwfsm/oracles.hpp"
#include "ntwfsm/search.hpp"
#include "test_support.hpp"

using namespace ntwfsm;

namespace {

const SymbolString E(1, kAlignedEpsilon);

Label lit1(std::u32string_view s) { return Label{LabelElement::lit(s)}; }

Machine<TropicalMin> ab_acceptor() {
  Machine<TropicalMin> m(1);
  m.add_states(3);
  m.set_initial(0, 0);
  m.set_final(2, 0);
  m.add_transition(0, 1, lit1(U"a"), 1);
  m.add_transition(1, 2, lit1(U"b"), 2);
  return m;
}

// A -> B -> ... chain of epsilon moves over `n` states, then one 'a'.
Machine<TropicalMin> epsilon_chain(std::size_t n) {
  Machine<TropicalMin> m(1, true);
  m.add_states(n + 1);
  m.set_initial(0, 0);
  m.set_final(static_cast<StateId>(n), 0);
  for (StateId q = 0; q + 1 < n; ++q) m.add_transition(q, q + 1, Label{LabelElement::epsilon()}, 1);
  m.add_transition(static_cast<StateId>(n - 1), static_cast<StateId>(n), lit1(U"a"), 0);
  return m;
}

std::optional<std::int64_t> oracle_weight(const RandomCase& c) {
  const auto g = intersect_with_tuple(c.machine, c.input, c.input_tapes);
  const auto d = dijkstra(g).distance;
  if (d == TropicalMin::zero()) return std::nullopt;
  return d;
}

}  // namespace

TEST_CASE("pointer_precedes") {
  CHECK(pointer_precedes({{0, 0}}, {{1, 0}}));
  CHECK_FALSE(pointer_precedes({{1, 0}}, {{0, 1}}));
  CHECK_FALSE(pointer_precedes({{2, 3}}, {{2, 3}}));
  CHECK_THROWS_AS(pointer_precedes({{0}}, {{0, 1}}), Error);

  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::uint32_t> d(0, 4);
  for (int i = 0; i < 1000; ++i) {
    PointerVector a{{d(rng), d(rng), d(rng)}}, b{{d(rng), d(rng), d(rng)}};
    if (pointer_precedes(a, b)) CHECK(a.key() < b.key());
  }
}

TEST_CASE("match_transition") {
  const StringTuple s{U"swum", U"swim"};
  const TapeList tapes{0, 1};
  const Label same{LabelElement::wildcard(1), LabelElement::wildcard(1)};

  auto m = match_transition(same, s, {{0, 0}}, tapes);
  REQUIRE(m);
  CHECK(m->next == PointerVector{{1, 1}});
  REQUIRE(m->bindings.size() == 1);
  CHECK(m->bindings[0] == Binding{1, U's'});
  CHECK_FALSE(m->eps_move);

  CHECK_FALSE(match_transition(same, s, {{2, 2}}, tapes));

  const Label none{LabelElement::epsilon(), LabelElement::epsilon()};
  m = match_transition(none, s, {{1, 2}}, tapes);
  REQUIRE(m);
  CHECK(m->eps_move);
  CHECK(m->next == PointerVector{{1, 2}});

  const Label factor{LabelElement::lit(U"wu"), LabelElement::wildcard(2)};
  m = match_transition(factor, s, {{1, 3}}, tapes);
  REQUIRE(m);
  CHECK(m->next == PointerVector{{3, 4}});
  CHECK_FALSE(match_transition(factor, s, {{1, 4}}, tapes));
}

TEST_CASE("fsm_viterbi examples") {
  const auto aligner = build_aligner({});
  SUBCASE("swum swim") {
    const auto p = fsm_viterbi(aligner, {U"swum", U"swim"}, {0, 1});
    REQUIRE(p);
    CHECK(p->weight == 2);
  }
  SUBCASE("empty words") {
    const auto p = fsm_viterbi(aligner, {U"", U""}, {0, 1});
    REQUIRE(p);
    CHECK(p->weight == 0);
    CHECK(p->transitions.empty());
  }
  SUBCASE("gemacht machen") {
    const auto p = fsm_viterbi(aligner, {U"gemacht", U"machen"}, {0, 1});
    REQUIRE(p);
    CHECK(p->weight == 5);
  }
  SUBCASE("size mismatch") { CHECK_THROWS_AS(fsm_viterbi(aligner, {U"a"}, {0, 1}), Error); }
}

TEST_CASE("fsa_viterbi examples") {
  const auto m = ab_acceptor();
  const auto p = fsa_viterbi(m, U"ab");
  REQUIRE(p);
  CHECK(p->weight == 3);
  CHECK(p->transitions == std::vector<TransitionId>{0, 1});
  CHECK_FALSE(fsa_viterbi(m, U"a"));
  CHECK_FALSE(fsa_viterbi(m, U"ba"));
  CHECK_FALSE(fsa_viterbi(m, U""));
}

TEST_CASE("epsilon moves") {
  SUBCASE("chain") {
    for (std::size_t n : {1u, 2u, 5u, 20u}) {
      const auto p = fsa_viterbi(epsilon_chain(n), U"a");
      REQUIRE(p);
      CHECK(p->weight == static_cast<std::int64_t>(n - 1));
      CHECK(p->transitions.size() == n);
    }
  }
  SUBCASE("self loop") {
    auto m = epsilon_chain(2);
    m.add_transition(0, 0, Label{LabelElement::epsilon()}, 0);
    try {
      fsa_viterbi(m, U"a");
      FAIL("expected EpsilonCycle");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::EpsilonCycle);
    }
  }
  SUBCASE("longer cycle") {
    auto m = epsilon_chain(3);
    m.add_transition(1, 0, Label{LabelElement::epsilon()}, 5);
    CHECK_THROWS_AS(fsa_viterbi(m, U"a"), Error);
  }
  SUBCASE("not allowed outside eps-mode") {
    auto m = epsilon_chain(3);
    m.set_eps_mode(false);
    try {
      fsa_viterbi(m, U"a");
      FAIL("expected ForbiddenEpsilonTransition");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ForbiddenEpsilonTransition);
    }
  }
  SUBCASE("empty input uses epsilon moves only") {
    auto m = epsilon_chain(3);
    m.set_final(2, 4);
    const auto p = fsa_viterbi(m, U"");
    REQUIRE(p);
    CHECK(p->weight == 6);
  }
  SUBCASE("agrees with epsilon removal") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> w(0, 9), coin(0, 3);
    for (int trial = 0; trial < 100; ++trial) {
      Machine<TropicalMin> m(1, true);
      const std::size_t n = 2 + trial % 5;
      m.add_states(n);
      m.set_initial(0, w(rng));
      if (coin(rng) == 0) m.set_initial(1, w(rng));
      for (StateId q = 0; q < n; ++q)
        if (coin(rng) < 2) m.set_final(q, w(rng));
      std::uniform_int_distribution<StateId> st(0, static_cast<StateId>(n - 1));
      for (int k = 0; k < 12; ++k) {
        StateId a = st(rng), b = st(rng);
        if (coin(rng) == 0) {
          if (a == b) continue;
          if (a > b) std::swap(a, b);  // forward only, so no epsilon cycles
          m.add_transition(a, b, Label{LabelElement::epsilon()}, w(rng));
        } else {
          m.add_transition(a, b, lit1(coin(rng) < 2 ? U"a" : U"b"), w(rng));
        }
      }
      const auto plain = testing::remove_epsilons(m);
      for (int i = 0; i < 10; ++i) {
        const auto s = testing::random_word(rng, U"ab", 5);
        const auto p = fsa_viterbi(m, s);
        const auto q = fsa_viterbi(plain, s);
        REQUIRE(p.has_value() == q.has_value());
        if (p) CHECK(p->weight == q->weight);
      }
    }
  }
}

TEST_CASE("best_transduction") {
  SUBCASE("identity") {
    Machine<TropicalMin> m(2);
    m.add_state();
    m.set_initial(0, 0);
    m.set_final(0, 0);
    m.add_transition(0, 0, Label{LabelElement::wildcard(1), LabelElement::wildcard(1)}, 0);
    const auto r = best_transduction(m, {U"hello"}, {0});
    REQUIRE(r);
    CHECK(r->outputs == std::vector<SymbolString>{U"hello"});
  }
  SUBCASE("aligner outputs") {
    const auto r = best_transduction(build_aligner({}), {U"swum", U"swim"}, {0, 1});
    REQUIRE(r);
    REQUIRE(r->outputs.size() == 3);
    const bool first = r->outputs[0] == U"sw" + E + U"um" && r->outputs[1] == U"swi" + E + U"m";
    const bool second = r->outputs[0] == U"swu" + E + U"m" && r->outputs[1] == U"sw" + E + U"im";
    CHECK((first || second));
    CHECK(r->weight == 2);
  }
  SUBCASE("gemacht machen") {
    const auto r = best_transduction(build_aligner({}), {U"gemacht", U"machen"}, {0, 1});
    REQUIRE(r);
    CHECK(r->outputs[0] == U"gemacht" + E + E);
    CHECK(r->outputs[1] == E + E + U"mach" + E + U"en");
  }
  SUBCASE("outputs on tapes before the input") {
    Machine<TropicalMin> m(3);
    m.add_state();
    m.set_initial(0, 0);
    m.set_final(0, 0);
    m.add_transition(0, 0, Label{LabelElement::lit(U"x"), LabelElement::wildcard(1), LabelElement::lit(U"yz")}, 1);
    const auto r = best_transduction(m, {U"ab"}, {1});
    REQUIRE(r);
    CHECK(r->outputs == std::vector<SymbolString>{U"xx", U"yzyz"});
    CHECK(r->weight == 2);
  }
}

TEST_CASE("search invariants on random cases") {
  for (std::uint64_t i = 0; i < 300; ++i) {
    const auto c = generate_case(42, i);
    SearchTrace trace;
    const auto p = fsm_viterbi(c.machine, c.input, c.input_tapes, {HeapKind::Binary, &trace});
    CHECK(trace.precedence_violations == 0);
    CHECK(trace.late_updates == 0);
    CHECK(trace.worsening_updates == 0);
    CHECK(trace.max_nodes_per_set <= c.machine.num_states());
    std::size_t bound = 1;
    for (const auto& s : c.input) bound *= s.size() + 1;
    CHECK(trace.node_sets <= bound);
    for (std::size_t k = 1; k < trace.extractions.size(); ++k)
      CHECK(trace.extractions[k - 1].key() <= trace.extractions[k].key());

    const auto expected = oracle_weight(c);
    REQUIRE(p.has_value() == expected.has_value());
    if (!p) continue;
    CHECK(p->weight == *expected);
    CHECK(c.machine.is_initial(p->start));
    CHECK(c.machine.is_final(p->end));
    const auto w = p->transitions.empty() ? path_weight(c.machine, p->start)
                                          : path_weight(c.machine, std::span<const TransitionId>(p->transitions));
    CHECK(w == p->weight);
    if (!p->transitions.empty()) {
      CHECK(c.machine.transition(p->transitions.front()).source == p->start);
      CHECK(c.machine.transition(p->transitions.back()).target == p->end);
    }
    CHECK(testing::path_reads(c.machine, p->transitions, c.input, c.input_tapes));
    for (std::size_t k = 0; k < c.input_tapes.size(); ++k) CHECK(p->tapes[c.input_tapes[k]] == c.input[k]);

    const auto fib = fsm_viterbi(c.machine, c.input, c.input_tapes, {HeapKind::Fibonacci, nullptr});
    REQUIRE(fib);
    CHECK(fib->weight == p->weight);
  }
}

TEST_CASE("brute force on small machines") {
  RandomMachineConfig cfg;
  cfg.max_states = 3;
  cfg.max_transitions = 8;
  cfg.max_input_length = 3;
  for (std::uint64_t i = 0; i < 200; ++i) {
    const auto c = generate_case(7, i, cfg);
    // Enumeration needs every transition to consume input.
    bool consuming = true;
    const auto mask = input_tape_mask(c.machine.arity(), c.input_tapes);
    for (const auto& t : c.machine.transitions()) consuming = consuming && !is_epsilon_move(t.label, mask);
    if (!consuming) continue;
    const auto all = testing::enumerate_accepting_weights(c.machine, c.input, c.input_tapes);
    const auto p = fsm_viterbi(c.machine, c.input, c.input_tapes);
    REQUIRE(p.has_value() == !all.empty());
    if (p) CHECK(p->weight == all.front());
  }
}

TEST_CASE("min and max are dual under negation") {
  for (std::uint64_t i = 0; i < 100; ++i) {
    const auto c = generate_case(8, i);
    Machine<TropicalMax> neg(c.machine.arity(), c.machine.eps_mode());
    neg.add_states(c.machine.num_states());
    auto flip = [](std::int64_t w) { return w == TropicalMin::zero() ? TropicalMax::zero() : -w; };
    for (StateId q = 0; q < c.machine.num_states(); ++q) {
      neg.set_initial(q, flip(c.machine.initial(q)));
      neg.set_final(q, flip(c.machine.final_weight(q)));
    }
    for (const auto& t : c.machine.transitions()) neg.add_transition(t.source, t.target, t.label, flip(t.weight));
    const auto a = fsm_viterbi(c.machine, c.input, c.input_tapes);
    const auto b = fsm_viterbi(neg, c.input, c.input_tapes);
    REQUIRE(a.has_value() == b.has_value());
    if (a) CHECK(a->weight == -b->weight);
  }
}

TEST_CASE("ties keep file order") {
  Machine<TropicalMin> m(1);
  m.add_states(3);
  m.set_initial(0, 0);
  m.set_final(1, 0);
  m.set_final(2, 0);
  m.add_transition(0, 1, lit1(U"a"), 1);
  m.add_transition(0, 1, lit1(U"a"), 1);
  m.add_transition(0, 2, lit1(U"a"), 1);
  const auto p = fsa_viterbi(m, U"a");
  REQUIRE(p);
  CHECK(p->transitions == std::vector<TransitionId>{0});
}
