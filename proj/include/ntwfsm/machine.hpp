#pragma once

// The n-tape weighted finite-state machine model.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ntwfsm/error.hpp"
#include "ntwfsm/semiring.hpp"
#include "ntwfsm/text.hpp"

namespace ntwfsm {

using StateId = std::uint32_t;
using TransitionId = std::uint32_t;
using VarClass = std::uint32_t;

/// One tape component of a transition label: either a literal factor over
/// the alphabet (empty means epsilon) or a single-symbol wildcard. Wildcards
/// with the same class on one transition must match the same symbol.
struct LabelElement {
  enum class Kind : std::uint8_t { Literal, Var };

  Kind kind = Kind::Literal;
  SymbolString literal;
  VarClass var = 0;

  static LabelElement epsilon() { return {}; }
  static LabelElement lit(std::u32string_view text) { return {Kind::Literal, SymbolString(text), 0}; }
  static LabelElement wildcard(VarClass cls) { return {Kind::Var, {}, cls}; }

  bool is_var() const { return kind == Kind::Var; }
  bool is_epsilon() const { return kind == Kind::Literal && literal.empty(); }

  friend bool operator==(const LabelElement&, const LabelElement&) = default;
};

using Label = std::vector<LabelElement>;

/// Tape indices (0-based) that are matched against input strings. Position k
/// of a StringTuple is read on tape `input_tapes[k]`.
using TapeList = std::vector<std::size_t>;
using StringTuple = std::vector<SymbolString>;

template <Semiring S>
struct Transition {
  StateId source = 0;
  StateId target = 0;
  Label label;
  typename S::Weight weight = S::one();

  friend bool operator==(const Transition&, const Transition&) = default;
};

template <Semiring S>
class Machine {
 public:
  using semiring_type = S;
  using Weight = typename S::Weight;

  explicit Machine(std::size_t arity = 1, bool eps_mode = false)
      : arity_(arity), eps_mode_(eps_mode) {}

  std::size_t arity() const { return arity_; }
  bool eps_mode() const { return eps_mode_; }
  void set_eps_mode(bool on) { eps_mode_ = on; }

  StateId add_state() {
    initial_.push_back(S::zero());
    final_.push_back(S::zero());
    out_.emplace_back();
    return static_cast<StateId>(initial_.size() - 1);
  }

  void add_states(std::size_t count) {
    for (std::size_t i = 0; i < count; ++i) add_state();
  }

  std::size_t num_states() const { return initial_.size(); }

  void set_initial(StateId q, Weight w) { initial_.at(q) = w; }
  void set_final(StateId q, Weight w) { final_.at(q) = w; }
  Weight initial(StateId q) const { return initial_.at(q); }
  Weight final_weight(StateId q) const { return final_.at(q); }
  bool is_initial(StateId q) const { return initial_.at(q) != S::zero(); }
  bool is_final(StateId q) const { return final_.at(q) != S::zero(); }

  /// Transitions are kept in insertion order, which is also the iteration
  /// order of out(q). Transitions with a dangling source are stored but not
  /// indexed; validate() reports them.
  TransitionId add_transition(Transition<S> t) {
    const auto id = static_cast<TransitionId>(transitions_.size());
    if (t.source < out_.size()) out_[t.source].push_back(id);
    transitions_.push_back(std::move(t));
    return id;
  }

  TransitionId add_transition(StateId source, StateId target, Label label, Weight weight) {
    return add_transition(Transition<S>{source, target, std::move(label), weight});
  }

  const std::vector<Transition<S>>& transitions() const { return transitions_; }
  const Transition<S>& transition(TransitionId id) const { return transitions_.at(id); }
  std::span<const TransitionId> out(StateId q) const { return out_.at(q); }

  /// Symbols occurring in literal labels.
  SymbolString alphabet() const {
    SymbolString symbols;
    for (const auto& t : transitions_)
      for (const auto& el : t.label) symbols += el.literal;
    std::sort(symbols.begin(), symbols.end());
    symbols.erase(std::unique(symbols.begin(), symbols.end()), symbols.end());
    return symbols;
  }

  friend bool operator==(const Machine& a, const Machine& b) {
    return a.arity_ == b.arity_ && a.eps_mode_ == b.eps_mode_ && a.initial_ == b.initial_ &&
           a.final_ == b.final_ && a.transitions_ == b.transitions_;
  }

 private:
  std::size_t arity_;
  bool eps_mode_;
  std::vector<Weight> initial_;
  std::vector<Weight> final_;
  std::vector<Transition<S>> transitions_;
  std::vector<std::vector<TransitionId>> out_;
};

/// Per-tape flag telling whether the tape is an input tape. Throws
/// InvalidArgument for an empty, duplicated or out-of-range tape list.
std::vector<bool> input_tape_mask(std::size_t arity, const TapeList& input_tapes);

/// True iff the label advances none of the input tapes. Wildcards always
/// consume a symbol, so this depends only on the label.
bool is_epsilon_move(const Label& label, const std::vector<bool>& input_mask);

/// Throws Error on the first violation found; see ErrorCode for the kinds.
template <Semiring S>
void validate(const Machine<S>& m, const TapeList& input_tapes, bool allow_eps) {
  const auto mask = input_tape_mask(m.arity(), input_tapes);
  const auto& ts = m.transitions();
  for (std::size_t id = 0; id < ts.size(); ++id) {
    const auto& t = ts[id];
    const std::string where = "transition " + std::to_string(id);
    if (t.source >= m.num_states() || t.target >= m.num_states())
      throw Error(ErrorCode::DanglingState, where + " refers to a missing state");
    if (t.label.size() != m.arity())
      throw Error(ErrorCode::ArityMismatch, where + " has " + std::to_string(t.label.size()) +
                                                " labels, machine arity is " + std::to_string(m.arity()));
    if (!allow_eps && is_epsilon_move(t.label, mask))
      throw Error(ErrorCode::ForbiddenEpsilonTransition, where + " reads nothing on the input tapes");
    for (std::size_t tape = 0; tape < t.label.size(); ++tape) {
      if (!t.label[tape].is_var() || mask[tape]) continue;
      const VarClass cls = t.label[tape].var;
      bool bound = false;
      for (std::size_t other = 0; other < t.label.size(); ++other)
        bound = bound || (mask[other] && t.label[other].is_var() && t.label[other].var == cls);
      if (!bound)
        throw Error(ErrorCode::UnboundOutputVar,
                    where + ": wildcard ?" + std::to_string(cls) + " is not bound by an input tape");
    }
  }
}

/// Product of the transition weights only, without initial or final weight.
template <Semiring S>
typename S::Weight inner_weight(const Machine<S>& m, std::span<const TransitionId> path) {
  auto w = S::one();
  for (std::size_t i = 0; i < path.size(); ++i) {
    const auto& t = m.transition(path[i]);
    if (i > 0 && m.transition(path[i - 1]).target != t.source)
      throw Error(ErrorCode::DisconnectedPath, "step " + std::to_string(i) + " does not continue the path");
    w = S::times(w, t.weight);
  }
  return w;
}

/// Weight of a path: initial weight of its first source, times every
/// transition weight, times the final weight of its last target.
template <Semiring S>
typename S::Weight path_weight(const Machine<S>& m, std::span<const TransitionId> path) {
  if (path.empty()) throw Error(ErrorCode::DisconnectedPath, "empty path has no anchor state; use the state overload");
  const auto inner = inner_weight(m, path);
  return S::times(S::times(m.initial(m.transition(path.front()).source), inner),
                  m.final_weight(m.transition(path.back()).target));
}

/// Weight of the length-0 path anchored at `q`.
template <Semiring S>
typename S::Weight path_weight(const Machine<S>& m, StateId q) {
  return S::times(m.initial(q), m.final_weight(q));
}

}  // namespace ntwfsm
