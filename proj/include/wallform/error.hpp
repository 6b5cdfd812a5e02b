#pragma once

#include <stdexcept>
#include <string>

namespace wallform {

enum class ErrorKind {
  ParseError,
  DescriptorMismatch,
  DivisionByZero,
  NotASquare,
  FieldOverflow,
  UnsupportedField,
  DimensionMismatch,
  NotNested,
  AlternatingForm,
  NotAlternating,
  Degenerate,
  NotExtendable,
  NotAnIsometry,
  IsotropicVector,
  PreconditionViolated,
  NotInvariant,
  NotRegular,
  NotUnipotent2,
  ZeroDiagonal,
  NotInResidual,
  NotHyperbolicPair,
  NotInterchange,
  NotSymmetric,
  CharacteristicNot2,
  NotInvolution,
  ResidualNotFixed,
  NotOrthogonalBasis,
  ZeroSquare,
  CriterionFails,
  AlgebraMismatch,
  NotScalarSquare,
  UnknownTheorem,
  TooLarge,
  InternalError,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::DescriptorMismatch: return "DescriptorMismatch";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::NotASquare: return "NotASquare";
    case ErrorKind::FieldOverflow: return "FieldOverflow";
    case ErrorKind::UnsupportedField: return "UnsupportedField";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotNested: return "NotNested";
    case ErrorKind::AlternatingForm: return "AlternatingForm";
    case ErrorKind::NotAlternating: return "NotAlternating";
    case ErrorKind::Degenerate: return "Degenerate";
    case ErrorKind::NotExtendable: return "NotExtendable";
    case ErrorKind::NotAnIsometry: return "NotAnIsometry";
    case ErrorKind::IsotropicVector: return "IsotropicVector";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::NotInvariant: return "NotInvariant";
    case ErrorKind::NotRegular: return "NotRegular";
    case ErrorKind::NotUnipotent2: return "NotUnipotent2";
    case ErrorKind::ZeroDiagonal: return "ZeroDiagonal";
    case ErrorKind::NotInResidual: return "NotInResidual";
    case ErrorKind::NotHyperbolicPair: return "NotHyperbolicPair";
    case ErrorKind::NotInterchange: return "NotInterchange";
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::CharacteristicNot2: return "CharacteristicNot2";
    case ErrorKind::NotInvolution: return "NotInvolution";
    case ErrorKind::ResidualNotFixed: return "ResidualNotFixed";
    case ErrorKind::NotOrthogonalBasis: return "NotOrthogonalBasis";
    case ErrorKind::ZeroSquare: return "ZeroSquare";
    case ErrorKind::CriterionFails: return "CriterionFails";
    case ErrorKind::AlgebraMismatch: return "AlgebraMismatch";
    case ErrorKind::NotScalarSquare: return "NotScalarSquare";
    case ErrorKind::UnknownTheorem: return "UnknownTheorem";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::InternalError: return "InternalError";
  }
  return "Unknown";
}

/// Process exit code for an error kind: 2 parse, 3 precondition, 4 internal.
inline int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::ParseError: return 2;
    case ErrorKind::InternalError: return 4;
    default: return 3;
  }
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), message_(what) {}

  ErrorKind kind() const noexcept { return kind_; }
  /// The message without the kind prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorKind kind_;
  std::string message_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace wallform
