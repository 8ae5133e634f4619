#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ntwfsm {

enum class ErrorCode {
  ArityMismatch,
  DanglingState,
  ForbiddenEpsilonTransition,
  UnboundOutputVar,
  DisconnectedPath,
  SyntaxError,
  UnknownSemiring,
  EpsilonCycle,
  DimensionMismatch,
  NegativeWeight,
  NegativeCycle,
  InvalidDistribution,
  UnknownSymbol,
  MarkerInAlphabet,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

// All library failures are reported through this exception. `line()` is
// non-zero only for errors raised while parsing text.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, std::size_t line = 0)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code),
        line_(line) {}

  ErrorCode code() const noexcept { return code_; }
  std::size_t line() const noexcept { return line_; }

 private:
  ErrorCode code_;
  std::size_t line_;
};

}  // namespace ntwfsm
