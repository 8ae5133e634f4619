#pragma once

// Reference implementations used to cross-check the best-path search:
// intersection with the input tuple followed by classical shortest-distance,
// the edit-distance matrix, and the textbook HMM Viterbi recursion.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "ntwfsm/machine.hpp"

namespace ntwfsm {

/// Weighted graph with a distinguished source and sink. Arcs leaving the
/// source carry initial weights, arcs entering the sink final weights; all
/// other arcs stand for a matched machine transition.
template <Semiring S>
struct WeightedGraph {
  struct Arc {
    std::uint32_t from = 0;
    std::uint32_t to = 0;
    typename S::Weight weight = S::one();
    std::optional<TransitionId> transition;
  };

  std::size_t num_vertices = 0;
  std::vector<Arc> arcs;
  std::uint32_t source = 0;
  std::uint32_t sink = 0;
  /// For every vertex other than source and sink: the machine state and the
  /// reading positions it stands for.
  std::vector<std::pair<StateId, std::vector<std::uint32_t>>> vertex_info;

  std::uint32_t add_vertex() { return static_cast<std::uint32_t>(num_vertices++); }
};

template <Semiring S>
struct ShortestPath {
  typename S::Weight distance = S::zero();  // zero when the sink is unreachable
  std::vector<std::uint32_t> arcs;          // source-to-sink arc indices
};

namespace detail {

// Plain factor test, deliberately separate from the search's matcher.
inline std::optional<std::vector<std::uint32_t>> oracle_match(const Label& label, const StringTuple& s,
                                                              const std::vector<int>& input_of_tape,
                                                              const std::vector<std::uint32_t>& at) {
  std::vector<std::uint32_t> next = at;
  std::map<VarClass, Symbol> bound;
  for (std::size_t tape = 0; tape < label.size(); ++tape) {
    const int k = input_of_tape[tape];
    if (k < 0) continue;
    const SymbolString& str = s[k];
    if (label[tape].is_var()) {
      if (next[k] >= str.size()) return std::nullopt;
      const Symbol c = str[next[k]];
      auto [it, fresh] = bound.emplace(label[tape].var, c);
      if (!fresh && it->second != c) return std::nullopt;
      next[k] += 1;
    } else {
      const SymbolString& lit = label[tape].literal;
      if (str.size() - next[k] < lit.size()) return std::nullopt;
      if (str.substr(next[k], lit.size()) != lit) return std::nullopt;
      next[k] += static_cast<std::uint32_t>(lit.size());
    }
  }
  return next;
}

}  // namespace detail

/// Builds the part of machine x input-tuple that is reachable from the
/// initial states at position zero, with every matching transition (not
/// only best-prefix ones). Source-to-sink paths correspond one-to-one, with
/// equal weight, to accepting paths of the machine on `s`. Throws
/// EpsilonCycle if the result has a cycle.
template <Semiring S>
WeightedGraph<S> intersect_with_tuple(const Machine<S>& m, const StringTuple& s, const TapeList& input_tapes) {
  if (s.size() != input_tapes.size())
    throw Error(ErrorCode::DimensionMismatch, "input tuple and input tape list differ in size");
  validate(m, input_tapes, m.eps_mode());
  std::vector<int> input_of_tape(m.arity(), -1);
  for (std::size_t k = 0; k < input_tapes.size(); ++k) input_of_tape[input_tapes[k]] = static_cast<int>(k);

  WeightedGraph<S> g;
  g.source = g.add_vertex();
  g.sink = g.add_vertex();
  g.vertex_info.resize(2);

  using Key = std::pair<std::vector<std::uint32_t>, StateId>;
  std::map<Key, std::uint32_t> vertex_of;
  std::vector<std::uint32_t> stack;
  auto vertex = [&](StateId q, const std::vector<std::uint32_t>& pos) {
    auto [it, fresh] = vertex_of.try_emplace(Key{pos, q}, 0);
    if (fresh) {
      it->second = g.add_vertex();
      g.vertex_info.emplace_back(q, pos);
      stack.push_back(it->second);
    }
    return it->second;
  };

  const std::vector<std::uint32_t> origin(s.size(), 0);
  for (StateId q = 0; q < m.num_states(); ++q)
    if (m.is_initial(q)) g.arcs.push_back({g.source, vertex(q, origin), m.initial(q), std::nullopt});

  std::vector<std::uint32_t> last;
  for (const auto& str : s) last.push_back(static_cast<std::uint32_t>(str.size()));

  while (!stack.empty()) {
    const std::uint32_t v = stack.back();
    stack.pop_back();
    const auto [q, pos] = g.vertex_info[v];
    if (pos == last && m.is_final(q)) g.arcs.push_back({v, g.sink, m.final_weight(q), std::nullopt});
    for (TransitionId tid : m.out(q)) {
      const auto& t = m.transition(tid);
      auto next = detail::oracle_match(t.label, s, input_of_tape, pos);
      if (!next) continue;
      g.arcs.push_back({v, vertex(t.target, *next), t.weight, tid});
    }
  }

  // Cycle check by repeated removal of vertices without incoming arcs.
  std::vector<std::uint32_t> indegree(g.num_vertices, 0);
  std::vector<std::vector<std::uint32_t>> succ(g.num_vertices);
  for (const auto& a : g.arcs) {
    ++indegree[a.to];
    succ[a.from].push_back(a.to);
  }
  std::vector<std::uint32_t> ready;
  for (std::uint32_t v = 0; v < g.num_vertices; ++v)
    if (indegree[v] == 0) ready.push_back(v);
  std::size_t removed = 0;
  while (!ready.empty()) {
    const auto v = ready.back();
    ready.pop_back();
    ++removed;
    for (auto w : succ[v])
      if (--indegree[w] == 0) ready.push_back(w);
  }
  if (removed != g.num_vertices) throw Error(ErrorCode::EpsilonCycle, "intersection contains a cycle");
  return g;
}

/// Single-source shortest distance with a binary heap. Requires that no arc
/// weight improves a path when appended (negative weights under
/// tropical-min, probabilities above one under prob-max); throws
/// NegativeWeight otherwise.
template <Semiring S>
ShortestPath<S> dijkstra(const WeightedGraph<S>& g) {
  using Weight = typename S::Weight;
  for (const auto& a : g.arcs)
    if (S::better(a.weight, S::one())) throw Error(ErrorCode::NegativeWeight, "arc weight " + S::format_weight(a.weight));

  std::vector<std::vector<std::uint32_t>> out(g.num_vertices);
  for (std::uint32_t i = 0; i < g.arcs.size(); ++i) out[g.arcs[i].from].push_back(i);

  std::vector<std::optional<Weight>> dist(g.num_vertices);
  std::vector<std::uint32_t> via(g.num_vertices, std::numeric_limits<std::uint32_t>::max());
  std::vector<bool> settled(g.num_vertices, false);
  using Entry = std::pair<Weight, std::uint32_t>;
  auto worse = [](const Entry& a, const Entry& b) { return S::better(b.first, a.first); };
  std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> queue(worse);

  dist[g.source] = S::one();
  queue.emplace(S::one(), g.source);
  while (!queue.empty()) {
    const auto [d, v] = queue.top();
    queue.pop();
    if (settled[v]) continue;
    settled[v] = true;
    for (std::uint32_t ai : out[v]) {
      const auto& a = g.arcs[ai];
      const Weight cand = S::times(d, a.weight);
      if (cand == S::zero() || settled[a.to]) continue;
      if (!dist[a.to] || S::better(cand, *dist[a.to])) {
        dist[a.to] = cand;
        via[a.to] = ai;
        queue.emplace(cand, a.to);
      }
    }
  }

  ShortestPath<S> result;
  if (!dist[g.sink]) return result;
  result.distance = *dist[g.sink];
  for (std::uint32_t v = g.sink; v != g.source; v = g.arcs[via[v]].from) result.arcs.push_back(via[v]);
  std::reverse(result.arcs.begin(), result.arcs.end());
  return result;
}

/// Shortest distance by |V|-1 rounds of relaxation over all arcs. Throws
/// NegativeCycle if a further round still improves some vertex.
template <Semiring S>
typename S::Weight bellman_ford(const WeightedGraph<S>& g) {
  using Weight = typename S::Weight;
  std::vector<std::optional<Weight>> dist(g.num_vertices);
  dist[g.source] = S::one();
  auto round = [&] {
    bool changed = false;
    for (const auto& a : g.arcs) {
      if (!dist[a.from]) continue;
      const Weight cand = S::times(*dist[a.from], a.weight);
      if (cand == S::zero()) continue;
      if (!dist[a.to] || S::better(cand, *dist[a.to])) {
        dist[a.to] = cand;
        changed = true;
      }
    }
    return changed;
  };
  for (std::size_t i = 1; i < g.num_vertices; ++i)
    if (!round()) break;
  if (round()) throw Error(ErrorCode::NegativeCycle, "a cycle keeps improving distances");
  return dist[g.sink].value_or(S::zero());
}

// ---------------------------------------------------------------------------
// Edit distance

inline constexpr std::int64_t kInfiniteCost = std::numeric_limits<std::int64_t>::max();

struct EditCosts {
  std::int64_t insertion = 1;
  std::int64_t deletion = 1;
  std::int64_t substitution = kInfiniteCost;  // cost of a diagonal step on unequal symbols
  std::int64_t match = 0;
};

struct EditDistanceResult {
  /// x[i][j] is the cost of converting a[0..i) into b[0..j).
  std::vector<std::vector<std::int64_t>> matrix;
  std::int64_t distance = 0;
  /// One optimal alignment (empty when the distance is infinite). Ops are
  /// K (equal symbols), S (substitution), D (deletion of a symbol of a) and
  /// I (insertion of a symbol of b).
  SymbolString a_aligned;
  SymbolString b_aligned;
  std::string ops;
};

/// Fills the matrix top-down, left-to-right with
/// x[i][j] = min(x[i][j-1] + c_I, x[i-1][j] + c_D, x[i-1][j-1] + c_S/c_match)
/// and backtracks preferring diagonal, then deletion, then insertion.
EditDistanceResult edit_distance_matrix(std::u32string_view a, std::u32string_view b, const EditCosts& costs = {},
                                        Symbol marker = kAlignedEpsilon);

// ---------------------------------------------------------------------------
// Hidden Markov models

struct HmmModel {
  SymbolString alphabet;                         // output symbols, index k
  std::vector<double> initial;                   // pi_i
  std::vector<std::vector<double>> transition;   // a_ij
  std::vector<std::vector<double>> emission;     // b_ik

  std::size_t num_states() const { return initial.size(); }
};

/// Throws InvalidDistribution unless all rows are probability vectors of
/// the right size (sums within 1e-9).
void validate_hmm(const HmmModel& h);

/// One-tape prob-max machine whose best path on o has the probability of
/// the most likely state sequence for o. State 0 is a fresh start state;
/// HMM state i becomes machine state i + 1.
Machine<ProbMax> hmm_to_wfsm(const HmmModel& h);

struct HmmPath {
  std::vector<std::size_t> states;
  double probability = 0.0;
};

/// Textbook Viterbi recursion over the T x |Q| trellis; ties go to the
/// lowest state id. Throws UnknownSymbol for observations outside the
/// alphabet.
HmmPath classical_viterbi(const HmmModel& h, std::u32string_view observations);

/// Joint probability p(states, observations).
double sequence_probability(const HmmModel& h, const std::vector<std::size_t>& states,
                            std::u32string_view observations);

}  // namespace ntwfsm
