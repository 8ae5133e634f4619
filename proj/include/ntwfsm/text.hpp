#pragma once

#include <string>
#include <string_view>

namespace ntwfsm {

// Symbols are Unicode scalar values; strings over the alphabet are UTF-32.
using Symbol = char32_t;
using SymbolString = std::u32string;

/// The aligned-epsilon marker written `<aeps>` in machine files. It is an
/// ordinary alphabet symbol taken from the private use area.
inline constexpr Symbol kAlignedEpsilon = U'\uE000';

/// Decodes UTF-8; throws Error(InvalidArgument) on malformed input.
SymbolString from_utf8(std::string_view text);
std::string to_utf8(std::u32string_view text);
std::string to_utf8(Symbol symbol);

}  // namespace ntwfsm
