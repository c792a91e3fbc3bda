#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace poc {

enum class ErrorKind {
  ShapeMismatch,
  RowSumViolation,
  JointSumViolation,
  CompatibilityViolation,
  EntryOutOfRange,
  IndexOutOfRange,
  SyntaxError,
  DuplicateTreatment,
  EvidenceConflict,
  MultipleEvidence,
  FamilyMismatch,
  DimensionTooSmall,
  ZeroDenominator,
  DimensionCapExceeded,
  Infeasible,
  Unbounded,
  RejectionBudgetExceeded,
  InvalidConfig,
  IoError,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::RowSumViolation: return "RowSumViolation";
    case ErrorKind::JointSumViolation: return "JointSumViolation";
    case ErrorKind::CompatibilityViolation: return "CompatibilityViolation";
    case ErrorKind::EntryOutOfRange: return "EntryOutOfRange";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::DuplicateTreatment: return "DuplicateTreatment";
    case ErrorKind::EvidenceConflict: return "EvidenceConflict";
    case ErrorKind::MultipleEvidence: return "MultipleEvidence";
    case ErrorKind::FamilyMismatch: return "FamilyMismatch";
    case ErrorKind::DimensionTooSmall: return "DimensionTooSmall";
    case ErrorKind::ZeroDenominator: return "ZeroDenominator";
    case ErrorKind::DimensionCapExceeded: return "DimensionCapExceeded";
    case ErrorKind::Infeasible: return "Infeasible";
    case ErrorKind::Unbounded: return "Unbounded";
    case ErrorKind::RejectionBudgetExceeded: return "RejectionBudgetExceeded";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

/// Single exception type for the library. The kind names the violated
/// invariant; the message carries the location (row, cell, position) and
/// residual where one exists.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace poc
