/*
 * Copyright 2026 The hajlab Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hajlab {

enum class ErrorCode {
  kInvalidInput = 1,
  kAsymmetricDistance,
  kTriangleViolation,
  kNonpositiveWeight,
  kEmptySet,
  kBadKappa,
  kDegenerateSpace,
  kBadExponent,
  kBadProblem,
  kInfeasibleGradient,
  kEmptyAnnulus,
  kBadRho,
  kBadAlpha,
  kNegativeEntry,
  kComplementEmptyBeyondN,
  kBadSpec,
  kSolverFailure,
};

std::string_view error_code_name(ErrorCode code) noexcept;

// Numerical failures map to kSolverFailure; everything else is a validation
// problem with the caller's input.
inline bool is_solver_error(ErrorCode code) noexcept {
  return code == ErrorCode::kSolverFailure;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidInput: return "InvalidInput";
    case ErrorCode::kAsymmetricDistance: return "AsymmetricDistance";
    case ErrorCode::kTriangleViolation: return "TriangleViolation";
    case ErrorCode::kNonpositiveWeight: return "NonpositiveWeight";
    case ErrorCode::kEmptySet: return "EmptySet";
    case ErrorCode::kBadKappa: return "BadKappa";
    case ErrorCode::kDegenerateSpace: return "DegenerateSpace";
    case ErrorCode::kBadExponent: return "BadExponent";
    case ErrorCode::kBadProblem: return "BadProblem";
    case ErrorCode::kInfeasibleGradient: return "InfeasibleGradient";
    case ErrorCode::kEmptyAnnulus: return "EmptyAnnulus";
    case ErrorCode::kBadRho: return "BadRho";
    case ErrorCode::kBadAlpha: return "BadAlpha";
    case ErrorCode::kNegativeEntry: return "NegativeEntry";
    case ErrorCode::kComplementEmptyBeyondN: return "ComplementEmptyBeyondN";
    case ErrorCode::kBadSpec: return "BadSpec";
    case ErrorCode::kSolverFailure: return "SolverFailure";
  }
  return "Unknown";
}

}  // namespace hajlab
