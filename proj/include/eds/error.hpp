#pragma once

#include <stdexcept>
#include <string>

namespace eds {

enum class ErrorCode {
  DegenerateExpression,
  UnknownCoordinate,
  ChartMismatch,
  DegreeError,
  RankDeficient,
  IndeterminateRank,
  MissingIndependence,
  WrongCorank,
  NotIndependent,
  NotCTS,
  ComplementNotFound,
  NeedsAssumption,
  NotStronglyLinear,
  ContradictoryAssumption,
  ParseError,
  DuplicateName,
  UnknownName,
  InvalidArgument,
  StructureEquationFailure,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Carries the printed Scalar whose vanishing could not be decided.
class IndeterminateRank : public Error {
 public:
  explicit IndeterminateRank(std::string scalar)
      : Error(ErrorCode::IndeterminateRank,
              "cannot decide whether " + scalar + " vanishes"),
        scalar_(std::move(scalar)) {}

  const std::string& scalar() const noexcept { return scalar_; }

 private:
  std::string scalar_;
};

}  // namespace eds
