#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hyperperc {

enum class ErrorKind {
  InvalidSymbol,
  PatchTooLarge,
  EmptyDual,
  TruncatedBoundary,
  UnstableClassification,
  MappingNotFound,
  InvalidSweepSpec,
  EstimatorDegenerate,
  MissingEstimates,
  InvalidInput,
  Io,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidSymbol: return "InvalidSymbol";
    case ErrorKind::PatchTooLarge: return "PatchTooLarge";
    case ErrorKind::EmptyDual: return "EmptyDual";
    case ErrorKind::TruncatedBoundary: return "TruncatedBoundary";
    case ErrorKind::UnstableClassification: return "UnstableClassification";
    case ErrorKind::MappingNotFound: return "MappingNotFound";
    case ErrorKind::InvalidSweepSpec: return "InvalidSweepSpec";
    case ErrorKind::EstimatorDegenerate: return "EstimatorDegenerate";
    case ErrorKind::MissingEstimates: return "MissingEstimates";
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above; the
/// message always starts with the kind name so it can be matched from a shell.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace hyperperc
