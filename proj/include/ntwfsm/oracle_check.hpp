#pragma once

// Randomised cross-check of the best-path search against intersection
// followed by Dijkstra.

#include <cstdint>
#include <optional>
#include <random>
#include <string>

#include "ntwfsm/machine.hpp"

namespace ntwfsm {

struct RandomMachineConfig {
  std::size_t min_arity = 1;
  std::size_t max_arity = 3;
  std::size_t max_states = 6;
  std::size_t max_transitions = 20;
  std::size_t max_input_length = 6;
  std::int64_t max_weight = 9;
  SymbolString alphabet = U"ab";
};

struct RandomCase {
  Machine<TropicalMin> machine;
  StringTuple input;
  TapeList input_tapes;
};

/// Random machine whose tapes are all input tapes, with labels mixing
/// epsilon, one- and two-symbol literals and wildcards, and an input that
/// is usually the label of a random walk. Case `index` of stream `seed` is
/// always the same case.
RandomCase generate_case(std::uint64_t seed, std::uint64_t index, const RandomMachineConfig& config = {});

struct OracleCheckConfig {
  std::uint64_t seed = 1;
  std::size_t cases = 300;
  RandomMachineConfig generator;
  /// Test hook: perturb the search result of this case.
  std::optional<std::size_t> inject_fault_at;
};

struct OracleMismatch {
  std::size_t case_index = 0;
  std::string machine_text;
  StringTuple input;
  std::string search_weight;  // "none" when no path was found
  std::string oracle_weight;
};

struct OracleCheckReport {
  std::size_t cases = 0;
  std::size_t passed = 0;
  std::size_t accepted = 0;  // cases with an accepting path
  std::size_t extractions = 0;
  std::size_t precedence_violations = 0;
  std::optional<OracleMismatch> first_failure;

  bool ok() const { return passed == cases; }
};

OracleCheckReport run_oracle_check(const OracleCheckConfig& config);

}  // namespace ntwfsm
