#pragma once

#include <stdexcept>
#include <string>

namespace insertnco {

enum class ErrorKind {
  CoincidesWithDepot,
  InvalidSolution,
  RouteIndexOutOfRange,
  EmptyUnvisited,
  PolarOnTsp,
  NoCurrentNode,
  InvalidPosition,
  NoValidPosition,
  CapacityViolation,
  ShapeMismatch,
  CorruptFile,
  VersionMismatch,
  NoForwardRecorded,
  EmptyDataset,
  InconsistentPartial,
  TooLarge,
  UnsupportedProblem,
  UnsupportedEdgeWeightType,
  MalformedSection,
  MissingDemand,
  CorruptLine,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace insertnco
