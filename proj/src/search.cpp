#include "ntwfsm/search.hpp"

#include <algorithm>

namespace ntwfsm {

bool pointer_precedes(const PointerVector& a, const PointerVector& b) {
  if (a.size() != b.size())
    throw Error(ErrorCode::DimensionMismatch,
                "pointers of size " + std::to_string(a.size()) + " and " + std::to_string(b.size()));
  bool differs = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.pos[i] > b.pos[i]) return false;
    differs = differs || a.pos[i] != b.pos[i];
  }
  return differs;
}

namespace detail {

LabelMatcher::LabelMatcher(std::size_t arity, const StringTuple& input, const TapeList& input_tapes)
    : input_(input), input_index_(arity, -1) {
  for (std::size_t k = 0; k < input_tapes.size(); ++k) input_index_.at(input_tapes[k]) = static_cast<int>(k);
}

bool LabelMatcher::match(const Label& label, const PointerVector& at, PointerVector& next,
                         std::vector<Binding>& bindings) const {
  next.pos = at.pos;
  bindings.clear();
  for (std::size_t tape = 0; tape < label.size(); ++tape) {
    const int k = input_index_[tape];
    if (k < 0) continue;
    const SymbolString& s = input_[k];
    std::uint32_t& p = next.pos[k];
    const LabelElement& el = label[tape];
    if (el.is_var()) {
      if (p >= s.size()) return false;
      const Symbol sym = s[p];
      auto bound = std::find_if(bindings.begin(), bindings.end(), [&](const Binding& b) { return b.var == el.var; });
      if (bound == bindings.end())
        bindings.push_back({el.var, sym});
      else if (bound->symbol != sym)
        return false;
      ++p;
    } else {
      const std::size_t len = el.literal.size();
      if (p + len > s.size() || s.compare(p, len, el.literal) != 0) return false;
      p += static_cast<std::uint32_t>(len);
    }
  }
  return true;
}

}  // namespace detail

std::optional<Match> match_transition(const Label& label, const StringTuple& s, const PointerVector& p,
                                      const TapeList& input_tapes) {
  if (p.size() != s.size() || input_tapes.size() != s.size())
    throw Error(ErrorCode::DimensionMismatch, "pointer, input tuple and input tape list differ in size");
  for (std::size_t k = 0; k < s.size(); ++k)
    if (p.pos[k] > s[k].size()) throw Error(ErrorCode::InvalidArgument, "pointer beyond end of input");
  input_tape_mask(label.size(), input_tapes);
  detail::LabelMatcher matcher(label.size(), s, input_tapes);
  Match m;
  if (!matcher.match(label, p, m.next, m.bindings)) return std::nullopt;
  m.eps_move = m.next == p;
  return m;
}

void append_projection(const Label& label, std::span<const Binding> bindings, std::vector<SymbolString>& tapes) {
  for (std::size_t tape = 0; tape < label.size(); ++tape) {
    const LabelElement& el = label[tape];
    if (!el.is_var()) {
      tapes[tape] += el.literal;
      continue;
    }
    auto bound = std::find_if(bindings.begin(), bindings.end(), [&](const Binding& b) { return b.var == el.var; });
    if (bound == bindings.end())
      throw Error(ErrorCode::UnboundOutputVar, "wildcard ?" + std::to_string(el.var) + " has no binding");
    tapes[tape].push_back(bound->symbol);
  }
}

}  // namespace ntwfsm
