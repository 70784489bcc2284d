#pragma once

#include <stdexcept>
#include <string>

namespace accause {

enum class ErrorCode {
  kCycleDetected,
  kUnknownVariable,
  kValueOutsideDomain,
  kInvalidIntervention,
  kCandidateTooLarge,
  kTargetNotActual,
  kInvalidConfig,
  kBudgetExceeded,
  kCauseTooLargeForExpansion,
  kKTooLargeForSetDomains,
  kSamplingExhausted,
  kContextInconsistent,
  kIncompatibleHeuristic,
  kSchema,
  kIo,
};

const char* to_string(ErrorCode code);

// Every library failure surfaces as this exception; the code drives CLI exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace accause
