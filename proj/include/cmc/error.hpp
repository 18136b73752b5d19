#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cmc {

enum class ErrorCode {
  DomainError,
  InvalidIsometry,
  NonFinite,
  StepTooLarge,
  OutsideDomain,
  EmptyFamily,
  QuadratureFailure,
  InvalidH,
  ParamMismatch,
  NotNormalized,
  IOError,
  EmptyMesh,
};

std::string_view to_string(ErrorCode code);

/// All library failures are reported through this type; `code()` tells
/// callers (the CLI in particular) which contract was violated.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace cmc
