#pragma once

// Word-pair alignment by two-tape best-path search on a five-tape machine:
// tapes 1 and 2 read the words, tapes 3 and 4 write them with
// aligned-epsilon markers at insertion and deletion slots, and tape 5 writes
// the edit operation (K keep, I insert, D delete).

#include <cstdint>
#include <string>

#include "ntwfsm/machine.hpp"

namespace ntwfsm {

struct AlignerSpec {
  std::int64_t insertion_cost = 1;
  std::int64_t deletion_cost = 1;
  std::int64_t match_cost = 0;
  Symbol marker = kAlignedEpsilon;
  /// Disallow an insertion immediately followed by a deletion.
  bool forbid_insert_then_delete = false;
  /// Optional declared alphabet; must not contain the marker.
  SymbolString alphabet;
};

struct Alignment {
  SymbolString a;
  SymbolString b;
  std::string ops;
  std::int64_t weight = 0;
};

/// One state with three wildcard transitions, in this order:
///   <?1,?1,?1,?1,K>/match  <?1,eps,?1,marker,D>/deletion  <eps,?1,marker,?1,I>/insertion
/// The order decides which of several equal-weight alignments is returned.
/// With forbid_insert_then_delete there is a second state, entered by I,
/// that has no D transition. Throws MarkerInAlphabet or InvalidArgument.
Machine<TropicalMin> build_aligner(const AlignerSpec& spec);

/// Aligns a and b with a machine built by build_aligner(spec).
Alignment align_pair(const Machine<TropicalMin>& aligner, const AlignerSpec& spec, std::u32string_view a,
                     std::u32string_view b);

Alignment align_pair(std::u32string_view a, std::u32string_view b, const AlignerSpec& spec = {});

SymbolString strip_markers(std::u32string_view aligned, Symbol marker = kAlignedEpsilon);

}  // namespace ntwfsm
