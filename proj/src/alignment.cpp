#include "ntwfsm/alignment.hpp"

#include <algorithm>

#include "ntwfsm/search.hpp"

namespace ntwfsm {
namespace {

Label op_label(LabelElement in_a, LabelElement in_b, LabelElement out_a, LabelElement out_b, char32_t op) {
  return Label{std::move(in_a), std::move(in_b), std::move(out_a), std::move(out_b),
               LabelElement::lit(SymbolString(1, op))};
}

}  // namespace

Machine<TropicalMin> build_aligner(const AlignerSpec& spec) {
  if (spec.alphabet.find(spec.marker) != SymbolString::npos)
    throw Error(ErrorCode::MarkerInAlphabet, "marker '" + to_utf8(spec.marker) + "' is an alphabet symbol");
  if (spec.insertion_cost < 0 || spec.deletion_cost < 0 || spec.match_cost < 0)
    throw Error(ErrorCode::InvalidArgument, "alignment costs must be non-negative");

  const auto any = LabelElement::wildcard(1);
  const auto eps = LabelElement::epsilon();
  const auto mark = LabelElement::lit(SymbolString(1, spec.marker));
  const Label keep = op_label(any, any, any, any, U'K');
  const Label insert = op_label(eps, any, mark, any, U'I');
  const Label remove = op_label(any, eps, any, mark, U'D');

  Machine<TropicalMin> m(5);
  const StateId free = m.add_state();
  m.set_initial(free, 0);
  m.set_final(free, 0);
  if (!spec.forbid_insert_then_delete) {
    m.add_transition(free, free, keep, spec.match_cost);
    m.add_transition(free, free, remove, spec.deletion_cost);
    m.add_transition(free, free, insert, spec.insertion_cost);
    return m;
  }
  const StateId after_insert = m.add_state();
  m.set_initial(after_insert, 0);
  m.set_final(after_insert, 0);
  m.add_transition(free, free, keep, spec.match_cost);
  m.add_transition(free, free, remove, spec.deletion_cost);
  m.add_transition(free, after_insert, insert, spec.insertion_cost);
  m.add_transition(after_insert, free, keep, spec.match_cost);
  m.add_transition(after_insert, after_insert, insert, spec.insertion_cost);
  return m;
}

Alignment align_pair(const Machine<TropicalMin>& aligner, const AlignerSpec& spec, std::u32string_view a,
                     std::u32string_view b) {
  if (a.find(spec.marker) != std::u32string_view::npos || b.find(spec.marker) != std::u32string_view::npos)
    throw Error(ErrorCode::MarkerInAlphabet, "input word contains the marker '" + to_utf8(spec.marker) + "'");
  auto result = best_transduction(aligner, StringTuple{SymbolString(a), SymbolString(b)}, TapeList{0, 1});
  if (!result) throw Error(ErrorCode::InvalidArgument, "aligner does not accept the word pair");
  Alignment out;
  out.a = std::move(result->outputs[0]);
  out.b = std::move(result->outputs[1]);
  out.ops = to_utf8(result->outputs[2]);
  out.weight = result->weight;
  return out;
}

Alignment align_pair(std::u32string_view a, std::u32string_view b, const AlignerSpec& spec) {
  return align_pair(build_aligner(spec), spec, a, b);
}

SymbolString strip_markers(std::u32string_view aligned, Symbol marker) {
  SymbolString out;
  std::copy_if(aligned.begin(), aligned.end(), std::back_inserter(out), [&](Symbol c) { return c != marker; });
  return out;
}

}  // namespace ntwfsm
