#pragma once

#include <stdexcept>
#include <string>

namespace qconfine {

/// Failure categories raised by the library. Every throwing operation
/// documents which of these it can produce.
enum class ErrorCode {
  invalid_argument,
  domain_error,
  window_exhausted,
  resolution,
  accuracy,
  normalization_deficit,
  singular_density,
  divergent_integrand,
  not_double_well,
  incomplete_report,
  stale_state,
  internal,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::domain_error: return "domain-error";
    case ErrorCode::window_exhausted: return "window-exhausted";
    case ErrorCode::resolution: return "resolution";
    case ErrorCode::accuracy: return "accuracy";
    case ErrorCode::normalization_deficit: return "normalization-deficit";
    case ErrorCode::singular_density: return "singular-density";
    case ErrorCode::divergent_integrand: return "divergent-integrand";
    case ErrorCode::not_double_well: return "not-double-well";
    case ErrorCode::incomplete_report: return "incomplete-report";
    case ErrorCode::stale_state: return "stale-state";
    case ErrorCode::internal: return "internal";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline void require(bool condition, ErrorCode code, const std::string& what) {
  if (!condition) throw Error(code, what);
}

}  // namespace qconfine
