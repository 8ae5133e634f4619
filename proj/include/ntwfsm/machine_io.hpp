#pragma once

// Line-oriented text format for machines:
//
//   ntwfsm n=<arity> semiring=<name> [states=<count>] [eps-mode]
//   i <state> <weight>
//   f <state> <weight>
//   t <src> <dst> <label_1> ... <label_n> <weight>
//
// Label tokens are literal strings, `<eps>` for the empty string, `?<k>` for
// a wildcard of class k, and `<aeps>` (also allowed inside a literal) for the
// aligned-epsilon symbol. A backslash escapes the next character in a
// literal; `\s`, `\t` and `\n` stand for space, tab and newline. Lines whose
// first token starts with `#` are comments.

#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "ntwfsm/machine.hpp"

namespace ntwfsm {

using AnyMachine = std::variant<Machine<TropicalMin>, Machine<TropicalMax>, Machine<ProbMax>>;

/// Parses a machine. `semiring_override` replaces the semiring named in the
/// header; weights are then read in the overriding carrier.
AnyMachine parse_machine(std::string_view text, std::optional<std::string_view> semiring_override = std::nullopt);

/// Parses a machine that must use semiring S (after any header override).
template <Semiring S>
Machine<S> parse_machine_as(std::string_view text) {
  auto any = parse_machine(text, S::name);
  return std::get<Machine<S>>(std::move(any));
}

std::string_view semiring_name(const AnyMachine& machine);

std::string format_label_element(const LabelElement& element);

template <Semiring S>
std::string write_machine(const Machine<S>& m) {
  std::string out = "ntwfsm n=" + std::to_string(m.arity()) + " semiring=" + std::string(S::name) +
                    " states=" + std::to_string(m.num_states());
  if (m.eps_mode()) out += " eps-mode";
  out += '\n';
  for (StateId q = 0; q < m.num_states(); ++q)
    if (m.is_initial(q)) out += "i " + std::to_string(q) + ' ' + S::format_weight(m.initial(q)) + '\n';
  for (StateId q = 0; q < m.num_states(); ++q)
    if (m.is_final(q)) out += "f " + std::to_string(q) + ' ' + S::format_weight(m.final_weight(q)) + '\n';
  for (const auto& t : m.transitions()) {
    out += "t " + std::to_string(t.source) + ' ' + std::to_string(t.target);
    for (const auto& el : t.label) out += ' ' + format_label_element(el);
    out += ' ' + S::format_weight(t.weight) + '\n';
  }
  return out;
}

std::string write_machine(const AnyMachine& machine);

}  // namespace ntwfsm
