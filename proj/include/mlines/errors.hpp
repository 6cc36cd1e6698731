#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mlines {

enum class ErrorKind {
  Parse,
  Overflow,
  TooFewPoints,
  NotSquare,
  NonzeroDiagonal,
  Asymmetric,
  NegativeEntry,
  ZeroOffDiagonal,
  TriangleViolation,
  NonDistinctPoints,
  InvalidArgument,
  DifferentLines,
  ClassificationFailure,
  LevelOutOfRange,
  Disconnected,
  TooSmall,
  InvalidEdge,
  DuplicatePoint,
  NOutOfRange,
  NotOnLine,
  AlreadyPresent,
  NoValidPosition,
  NoValidSplit,
  NotGreenConnected,
  SameComponent,
  UniversalLinePresent,
  SequenceNotCollinear,
  DegreeTooSmall,
  NotAntichain,
  UnknownLine,
  SinkUnwritable,
};

constexpr std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::TooFewPoints: return "TooFewPoints";
    case ErrorKind::NotSquare: return "NotSquare";
    case ErrorKind::NonzeroDiagonal: return "NonzeroDiagonal";
    case ErrorKind::Asymmetric: return "Asymmetric";
    case ErrorKind::NegativeEntry: return "NegativeEntry";
    case ErrorKind::ZeroOffDiagonal: return "ZeroOffDiagonal";
    case ErrorKind::TriangleViolation: return "TriangleViolation";
    case ErrorKind::NonDistinctPoints: return "NonDistinctPoints";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::DifferentLines: return "DifferentLines";
    case ErrorKind::ClassificationFailure: return "ClassificationFailure";
    case ErrorKind::LevelOutOfRange: return "LevelOutOfRange";
    case ErrorKind::Disconnected: return "Disconnected";
    case ErrorKind::TooSmall: return "TooSmall";
    case ErrorKind::InvalidEdge: return "InvalidEdge";
    case ErrorKind::DuplicatePoint: return "DuplicatePoint";
    case ErrorKind::NOutOfRange: return "NOutOfRange";
    case ErrorKind::NotOnLine: return "NotOnLine";
    case ErrorKind::AlreadyPresent: return "AlreadyPresent";
    case ErrorKind::NoValidPosition: return "NoValidPosition";
    case ErrorKind::NoValidSplit: return "NoValidSplit";
    case ErrorKind::NotGreenConnected: return "NotGreenConnected";
    case ErrorKind::SameComponent: return "SameComponent";
    case ErrorKind::UniversalLinePresent: return "UniversalLinePresent";
    case ErrorKind::SequenceNotCollinear: return "SequenceNotCollinear";
    case ErrorKind::DegreeTooSmall: return "DegreeTooSmall";
    case ErrorKind::NotAntichain: return "NotAntichain";
    case ErrorKind::UnknownLine: return "UnknownLine";
    case ErrorKind::SinkUnwritable: return "SinkUnwritable";
  }
  return "Unknown";
}

/// Library error. `indices()` carries the offending point ids (or matrix
/// coordinates) when the error is about specific points, e.g. the triple
/// (i, j, k) of a TriangleViolation.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        std::vector<std::size_t> indices = {})
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message),
        kind_(kind),
        indices_(std::move(indices)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::vector<std::size_t>& indices() const noexcept { return indices_; }

 private:
  ErrorKind kind_;
  std::vector<std::size_t> indices_;
};

}  // namespace mlines
