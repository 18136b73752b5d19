#include "cmc/error.hpp"

namespace cmc {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::InvalidIsometry: return "InvalidIsometry";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::StepTooLarge: return "StepTooLarge";
    case ErrorCode::OutsideDomain: return "OutsideDomain";
    case ErrorCode::EmptyFamily: return "EmptyFamily";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
    case ErrorCode::InvalidH: return "InvalidH";
    case ErrorCode::ParamMismatch: return "ParamMismatch";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::IOError: return "IOError";
    case ErrorCode::EmptyMesh: return "EmptyMesh";
  }
  return "Unknown";
}

}  // namespace cmc
