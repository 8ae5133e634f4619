#include "ntwfsm/oracles.hpp"

#include <algorithm>
#include <cmath>

namespace ntwfsm {
namespace {

std::int64_t add_cost(std::int64_t a, std::int64_t b) {
  if (a == kInfiniteCost || b == kInfiniteCost) return kInfiniteCost;
  return a + b;
}

std::size_t symbol_index(const HmmModel& h, Symbol c) {
  const auto pos = h.alphabet.find(c);
  if (pos == SymbolString::npos) throw Error(ErrorCode::UnknownSymbol, "observation '" + to_utf8(c) + "'");
  return pos;
}

void check_distribution(const std::vector<double>& row, std::size_t size, const std::string& what) {
  if (row.size() != size)
    throw Error(ErrorCode::InvalidDistribution, what + " has " + std::to_string(row.size()) + " entries, expected " +
                                                    std::to_string(size));
  double sum = 0.0;
  for (double p : row) {
    if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::InvalidDistribution, what + " has an entry outside [0,1]");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw Error(ErrorCode::InvalidDistribution, what + " does not sum to 1");
}

}  // namespace

EditDistanceResult edit_distance_matrix(std::u32string_view a, std::u32string_view b, const EditCosts& costs,
                                        Symbol marker) {
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  EditDistanceResult r;
  r.matrix.assign(n + 1, std::vector<std::int64_t>(m + 1, kInfiniteCost));
  auto& x = r.matrix;
  auto diagonal_cost = [&](std::size_t i, std::size_t j) {
    return a[i - 1] == b[j - 1] ? costs.match : costs.substitution;
  };

  x[0][0] = 0;
  for (std::size_t i = 0; i <= n; ++i) {
    for (std::size_t j = 0; j <= m; ++j) {
      if (i == 0 && j == 0) continue;
      std::int64_t best = kInfiniteCost;
      if (j > 0) best = std::min(best, add_cost(x[i][j - 1], costs.insertion));
      if (i > 0) best = std::min(best, add_cost(x[i - 1][j], costs.deletion));
      if (i > 0 && j > 0) best = std::min(best, add_cost(x[i - 1][j - 1], diagonal_cost(i, j)));
      x[i][j] = best;
    }
  }
  r.distance = x[n][m];
  if (r.distance == kInfiniteCost) return r;

  std::size_t i = n, j = m;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0 && x[i - 1][j - 1] != kInfiniteCost && add_cost(x[i - 1][j - 1], diagonal_cost(i, j)) == x[i][j]) {
      r.a_aligned.push_back(a[i - 1]);
      r.b_aligned.push_back(b[j - 1]);
      r.ops.push_back(a[i - 1] == b[j - 1] ? 'K' : 'S');
      --i;
      --j;
    } else if (i > 0 && x[i - 1][j] != kInfiniteCost && add_cost(x[i - 1][j], costs.deletion) == x[i][j]) {
      r.a_aligned.push_back(a[i - 1]);
      r.b_aligned.push_back(marker);
      r.ops.push_back('D');
      --i;
    } else {
      r.a_aligned.push_back(marker);
      r.b_aligned.push_back(b[j - 1]);
      r.ops.push_back('I');
      --j;
    }
  }
  std::reverse(r.a_aligned.begin(), r.a_aligned.end());
  std::reverse(r.b_aligned.begin(), r.b_aligned.end());
  std::reverse(r.ops.begin(), r.ops.end());
  return r;
}

void validate_hmm(const HmmModel& h) {
  const std::size_t n = h.num_states();
  if (n == 0) throw Error(ErrorCode::InvalidDistribution, "HMM has no states");
  check_distribution(h.initial, n, "initial distribution");
  if (h.transition.size() != n || h.emission.size() != n)
    throw Error(ErrorCode::InvalidDistribution, "transition or emission matrix has the wrong number of rows");
  for (std::size_t i = 0; i < n; ++i) {
    check_distribution(h.transition[i], n, "transition row " + std::to_string(i));
    check_distribution(h.emission[i], h.alphabet.size(), "emission row " + std::to_string(i));
  }
}

Machine<ProbMax> hmm_to_wfsm(const HmmModel& h) {
  validate_hmm(h);
  const std::size_t n = h.num_states();
  Machine<ProbMax> m(1);
  m.add_states(n + 1);
  m.set_initial(0, 1.0);
  for (StateId q = 0; q <= n; ++q) m.set_final(q, 1.0);
  auto label = [&](std::size_t k) { return Label{LabelElement::lit(SymbolString(1, h.alphabet[k]))}; };
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < h.alphabet.size(); ++k) {
      const double w = h.initial[j] * h.emission[j][k];
      if (w > 0.0) m.add_transition(0, static_cast<StateId>(j + 1), label(k), w);
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < h.alphabet.size(); ++k) {
        const double w = h.transition[i][j] * h.emission[j][k];
        if (w > 0.0) m.add_transition(static_cast<StateId>(i + 1), static_cast<StateId>(j + 1), label(k), w);
      }
  return m;
}

HmmPath classical_viterbi(const HmmModel& h, std::u32string_view observations) {
  validate_hmm(h);
  const std::size_t n = h.num_states();
  const std::size_t T = observations.size();
  HmmPath result;
  if (T == 0) {
    result.probability = 1.0;
    return result;
  }
  std::vector<std::size_t> obs(T);
  for (std::size_t t = 0; t < T; ++t) obs[t] = symbol_index(h, observations[t]);

  std::vector<std::vector<double>> delta(T, std::vector<double>(n, 0.0));
  std::vector<std::vector<std::size_t>> psi(T, std::vector<std::size_t>(n, 0));
  for (std::size_t j = 0; j < n; ++j) delta[0][j] = h.initial[j] * h.emission[j][obs[0]];
  for (std::size_t t = 1; t < T; ++t) {
    for (std::size_t j = 0; j < n; ++j) {
      double best = -1.0;
      std::size_t arg = 0;
      for (std::size_t i = 0; i < n; ++i) {
        const double v = delta[t - 1][i] * h.transition[i][j];
        if (v > best) {
          best = v;
          arg = i;
        }
      }
      delta[t][j] = best * h.emission[j][obs[t]];
      psi[t][j] = arg;
    }
  }

  std::size_t last = 0;
  for (std::size_t j = 1; j < n; ++j)
    if (delta[T - 1][j] > delta[T - 1][last]) last = j;
  result.probability = delta[T - 1][last];
  result.states.assign(T, 0);
  result.states[T - 1] = last;
  for (std::size_t t = T - 1; t > 0; --t) result.states[t - 1] = psi[t][result.states[t]];
  return result;
}

double sequence_probability(const HmmModel& h, const std::vector<std::size_t>& states,
                            std::u32string_view observations) {
  if (states.size() != observations.size())
    throw Error(ErrorCode::DimensionMismatch, "state and observation sequences differ in length");
  if (states.empty()) return 1.0;
  double p = h.initial.at(states[0]) * h.emission.at(states[0]).at(symbol_index(h, observations[0]));
  for (std::size_t t = 1; t < states.size(); ++t)
    p *= h.transition.at(states[t - 1]).at(states[t]) * h.emission.at(states[t]).at(symbol_index(h, observations[t]));
  return p;
}

}  // namespace ntwfsm
