#include "ntwfsm/oracle_check.hpp"

#include <map>

#include "ntwfsm/machine_io.hpp"
#include "ntwfsm/oracles.hpp"
#include "ntwfsm/search.hpp"

namespace ntwfsm {
namespace {

using Rng = std::mt19937_64;

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool chance(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

SymbolString random_string(Rng& rng, const SymbolString& alphabet, std::size_t length) {
  SymbolString s;
  for (std::size_t i = 0; i < length; ++i) s.push_back(alphabet[uniform(rng, 0, alphabet.size() - 1)]);
  return s;
}

LabelElement random_element(Rng& rng, const RandomMachineConfig& config) {
  const std::size_t roll = uniform(rng, 0, 99);
  if (roll < 25) return LabelElement::epsilon();
  if (roll < 60) return LabelElement::lit(random_string(rng, config.alphabet, 1));
  if (roll < 75) return LabelElement::lit(random_string(rng, config.alphabet, 2));
  return LabelElement::wildcard(static_cast<VarClass>(uniform(rng, 1, 2)));
}

// Label of a random walk, or nullopt if the walk got stuck.
std::optional<StringTuple> random_walk(Rng& rng, const Machine<TropicalMin>& m, const RandomMachineConfig& config) {
  std::vector<StateId> starts;
  for (StateId q = 0; q < m.num_states(); ++q)
    if (m.is_initial(q)) starts.push_back(q);
  StateId q = starts[uniform(rng, 0, starts.size() - 1)];
  StringTuple tapes(m.arity());
  for (std::size_t step = 0; step < 8; ++step) {
    if (m.is_final(q) && chance(rng, 0.3)) return tapes;
    const auto out = m.out(q);
    if (out.empty()) break;
    const auto& t = m.transition(out[uniform(rng, 0, out.size() - 1)]);
    std::map<VarClass, Symbol> bound;
    StringTuple next = tapes;
    for (std::size_t tape = 0; tape < t.label.size(); ++tape) {
      const auto& el = t.label[tape];
      if (el.is_var()) {
        auto it = bound.try_emplace(el.var, config.alphabet[uniform(rng, 0, config.alphabet.size() - 1)]).first;
        next[tape].push_back(it->second);
      } else {
        next[tape] += el.literal;
      }
    }
    bool fits = true;
    for (const auto& s : next) fits = fits && s.size() <= config.max_input_length;
    if (!fits) break;
    tapes = std::move(next);
    q = t.target;
  }
  if (m.is_final(q)) return tapes;
  return std::nullopt;
}

}  // namespace

RandomCase generate_case(std::uint64_t seed, std::uint64_t index, const RandomMachineConfig& config) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  Rng rng(seq);

  const std::size_t arity = uniform(rng, config.min_arity, config.max_arity);
  const std::size_t states = uniform(rng, 1, config.max_states);
  const std::size_t transitions = uniform(rng, 1, config.max_transitions);
  RandomCase c{Machine<TropicalMin>(arity), {}, {}};
  auto& m = c.machine;
  m.add_states(states);
  auto weight = [&] { return static_cast<std::int64_t>(uniform(rng, 0, static_cast<std::size_t>(config.max_weight))); };

  m.set_initial(0, weight());
  m.set_final(static_cast<StateId>(uniform(rng, 0, states - 1)), weight());
  for (StateId q = 1; q < states; ++q)
    if (chance(rng, 0.3)) m.set_initial(q, weight());
  for (StateId q = 0; q < states; ++q)
    if (chance(rng, 0.35)) m.set_final(q, weight());

  for (std::size_t i = 0; i < transitions; ++i) {
    const auto src = static_cast<StateId>(uniform(rng, 0, states - 1));
    const auto dst = static_cast<StateId>(uniform(rng, 0, states - 1));
    Label label;
    bool advances = false;
    for (std::size_t tape = 0; tape < arity; ++tape) {
      label.push_back(random_element(rng, config));
      advances = advances || !label.back().is_epsilon();
    }
    if (!advances) label[uniform(rng, 0, arity - 1)] = LabelElement::lit(random_string(rng, config.alphabet, 1));
    m.add_transition(src, dst, std::move(label), weight());
  }

  for (std::size_t tape = 0; tape < arity; ++tape) c.input_tapes.push_back(tape);
  std::optional<StringTuple> walk;
  if (chance(rng, 0.7)) walk = random_walk(rng, m, config);
  if (walk) {
    c.input = std::move(*walk);
  } else {
    for (std::size_t tape = 0; tape < arity; ++tape)
      c.input.push_back(random_string(rng, config.alphabet, uniform(rng, 0, config.max_input_length)));
  }
  return c;
}

OracleCheckReport run_oracle_check(const OracleCheckConfig& config) {
  OracleCheckReport report;
  for (std::size_t i = 0; i < config.cases; ++i) {
    const RandomCase c = generate_case(config.seed, i, config.generator);
    SearchTrace trace;
    SearchOptions options;
    options.trace = &trace;
    const auto best = fsm_viterbi(c.machine, c.input, c.input_tapes, options);
    const auto oracle = dijkstra(intersect_with_tuple(c.machine, c.input, c.input_tapes));

    auto search_weight = best ? best->weight : TropicalMin::zero();
    if (config.inject_fault_at == i) search_weight = best ? search_weight + 1 : 0;

    ++report.cases;
    report.extractions += trace.extractions.size();
    report.precedence_violations += trace.precedence_violations;
    if (best) ++report.accepted;
    if (search_weight == oracle.distance) {
      ++report.passed;
    } else if (!report.first_failure) {
      report.first_failure = OracleMismatch{i, write_machine(c.machine), c.input,
                                            best || config.inject_fault_at == i ? TropicalMin::format_weight(search_weight) : "none",
                                            oracle.distance == TropicalMin::zero() ? "none" : TropicalMin::format_weight(oracle.distance)};
    }
  }
  return report;
}

}  // namespace ntwfsm
