#pragma once

#include <stdexcept>
#include <string>

namespace holo {

enum class ErrorCode {
  PreconditionViolation,
  ShapeError,
  PoleError,
  IdentityFailure,
  Singularity,
  DomainError,
  NonConvergence,
  NonfiniteSample,
  NanInput,
  NoThreshold,
  DivisionByZero,
  RouteDisagreement,
  InsufficientPrecision,
  TypeViolation,
  SearchFailure,
  OnsetError,
  InfeasibleEverywhere,
  InconsistentG2,
  SchemaError,
};

const char* error_code_name(ErrorCode code) noexcept;

/// Exception carrying one of the toolkit's error codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::PreconditionViolation: return "PRECONDITION_VIOLATION";
    case ErrorCode::ShapeError: return "SHAPE_ERROR";
    case ErrorCode::PoleError: return "POLE_ERROR";
    case ErrorCode::IdentityFailure: return "IDENTITY_FAILURE";
    case ErrorCode::Singularity: return "SINGULARITY";
    case ErrorCode::DomainError: return "DOMAIN_ERROR";
    case ErrorCode::NonConvergence: return "NONCONVERGENCE";
    case ErrorCode::NonfiniteSample: return "NONFINITE_SAMPLE";
    case ErrorCode::NanInput: return "NAN_INPUT";
    case ErrorCode::NoThreshold: return "NO_THRESHOLD";
    case ErrorCode::DivisionByZero: return "DIVISION_BY_ZERO";
    case ErrorCode::RouteDisagreement: return "ROUTE_DISAGREEMENT";
    case ErrorCode::InsufficientPrecision: return "INSUFFICIENT_PRECISION";
    case ErrorCode::TypeViolation: return "TYPE_VIOLATION";
    case ErrorCode::SearchFailure: return "SEARCH_FAILURE";
    case ErrorCode::OnsetError: return "ONSET_ERROR";
    case ErrorCode::InfeasibleEverywhere: return "INFEASIBLE_EVERYWHERE";
    case ErrorCode::InconsistentG2: return "INCONSISTENT_G2";
    case ErrorCode::SchemaError: return "SCHEMA_ERROR";
  }
  return "UNKNOWN";
}

}  // namespace holo
