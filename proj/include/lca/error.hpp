#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lca {

enum class ErrorCode {
  InvalidArgument,
  MismatchedGroups,
  UnsupportedSubgroupForm,
  NotAnAutomorphism,
  WeightSumNotOne,
  PointOutsideGroup,
  SpectralNotSupported,
  NonCompactSubgroup,
  PhiNotReal,
  TailBoundUnavailable,
  OutsideValidity,
  WindowExhausted,
  WindowTooSmall,
  VanishingValue,
  BranchInconsistency,
  StepTooLarge,
  BaseEquationViolated,
  StepResidual,
  SupportNotSubgroup,
  CaseMismatch,
  HypothesisNotMet,
  SearchBudgetExceeded,
  BochnerFail,
  ParseError,
};

std::string_view error_name(ErrorCode code);

// All library failures are reported through this type. `witness` carries a
// serialized point or pair (element JSON) when the failure has one.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string witness = {})
      : std::runtime_error(std::string(error_name(code)) + ": " + message),
        code_(code),
        witness_(std::move(witness)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& witness() const noexcept { return witness_; }

 private:
  ErrorCode code_;
  std::string witness_;
};

}  // namespace lca
