#include "ntwfsm/error.hpp"

namespace ntwfsm {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::DanglingState: return "DanglingState";
    case ErrorCode::ForbiddenEpsilonTransition: return "ForbiddenEpsilonTransition";
    case ErrorCode::UnboundOutputVar: return "UnboundOutputVar";
    case ErrorCode::DisconnectedPath: return "DisconnectedPath";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnknownSemiring: return "UnknownSemiring";
    case ErrorCode::EpsilonCycle: return "EpsilonCycle";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NegativeWeight: return "NegativeWeight";
    case ErrorCode::NegativeCycle: return "NegativeCycle";
    case ErrorCode::InvalidDistribution: return "InvalidDistribution";
    case ErrorCode::UnknownSymbol: return "UnknownSymbol";
    case ErrorCode::MarkerInAlphabet: return "MarkerInAlphabet";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace ntwfsm
