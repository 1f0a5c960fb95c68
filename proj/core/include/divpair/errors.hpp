#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace divpair {

enum class ErrorKind {
  Parse,
  InvalidArgument,
  DiagonalSingularity,
  DegreeMustBeZero,
  NotDisjoint,
  NonIntegralOffMarks,
  DegreeIntegrality,
  MismatchedContext,
  TrivialJacobian,
  IndexOutOfRange,
  ZeroExpansion,
  SupportOutsideMarks,
  ConservationViolated,
  MassShellViolated,
};

// Stable diagnostic name, e.g. "degree must be zero".
std::string_view error_name(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(error_name(kind)) +
                           (detail.empty() ? "" : ": " + detail)),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& detail = {}) {
  throw Error(kind, detail);
}

inline std::string_view error_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Parse: return "parse error";
    case ErrorKind::InvalidArgument: return "invalid argument";
    case ErrorKind::DiagonalSingularity: return "diagonal singularity";
    case ErrorKind::DegreeMustBeZero: return "degree must be zero";
    case ErrorKind::NotDisjoint: return "divisors not disjoint";
    case ErrorKind::NonIntegralOffMarks:
      return "non-integral coefficient off marked set";
    case ErrorKind::DegreeIntegrality: return "degree integrality violated";
    case ErrorKind::MismatchedContext: return "mismatched contexts";
    case ErrorKind::TrivialJacobian:
      return "genus-0 curve has trivial Jacobian";
    case ErrorKind::IndexOutOfRange: return "index out of range";
    case ErrorKind::ZeroExpansion: return "all-zero coefficients";
    case ErrorKind::SupportOutsideMarks: return "support outside marked set";
    case ErrorKind::ConservationViolated:
      return "conservation violated after rationalization";
    case ErrorKind::MassShellViolated: return "mass-shell condition violated";
  }
  return "error";
}

}  // namespace divpair
