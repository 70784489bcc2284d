#include "accause/error.hpp"

namespace accause {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kCycleDetected: return "CycleDetected";
    case ErrorCode::kUnknownVariable: return "UnknownVariable";
    case ErrorCode::kValueOutsideDomain: return "ValueOutsideDomain";
    case ErrorCode::kInvalidIntervention: return "InvalidIntervention";
    case ErrorCode::kCandidateTooLarge: return "CandidateTooLarge";
    case ErrorCode::kTargetNotActual: return "TargetNotActual";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kBudgetExceeded: return "BudgetExceeded";
    case ErrorCode::kCauseTooLargeForExpansion: return "CauseTooLargeForExpansion";
    case ErrorCode::kKTooLargeForSetDomains: return "KTooLargeForSetDomains";
    case ErrorCode::kSamplingExhausted: return "SamplingExhausted";
    case ErrorCode::kContextInconsistent: return "ContextInconsistent";
    case ErrorCode::kIncompatibleHeuristic: return "IncompatibleHeuristic";
    case ErrorCode::kSchema: return "Schema";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace accause
