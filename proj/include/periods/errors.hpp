#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace periods {

enum class ErrorKind {
  DimensionMismatch,
  IndexOutOfRange,
  DegreeMismatch,
  SingularMatrix,
  SubNotContained,
  RankMismatch,
  SingularPeriodMatrix,
  NotUnimodular,
  NotInvolution,
  NotAntilinear,
  WrongFixedRank,
  DegenerateFixedLattice,
  InvalidCounts,
  MalformedDocument,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::DegreeMismatch: return "DegreeMismatch";
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::SubNotContained: return "SubNotContained";
    case ErrorKind::RankMismatch: return "RankMismatch";
    case ErrorKind::SingularPeriodMatrix: return "SingularPeriodMatrix";
    case ErrorKind::NotUnimodular: return "NotUnimodular";
    case ErrorKind::NotInvolution: return "NotInvolution";
    case ErrorKind::NotAntilinear: return "NotAntilinear";
    case ErrorKind::WrongFixedRank: return "WrongFixedRank";
    case ErrorKind::DegenerateFixedLattice: return "DegenerateFixedLattice";
    case ErrorKind::InvalidCounts: return "InvalidCounts";
    case ErrorKind::MalformedDocument: return "MalformedDocument";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the ErrorKind tags;
/// what() is "<Kind>: <detail>".
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& detail) {
  throw Error(kind, detail);
}

}  // namespace periods
