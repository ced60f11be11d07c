#include "eds/error.hpp"

namespace eds {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DegenerateExpression: return "DegenerateExpression";
    case ErrorCode::UnknownCoordinate: return "UnknownCoordinate";
    case ErrorCode::ChartMismatch: return "ChartMismatch";
    case ErrorCode::DegreeError: return "DegreeError";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::IndeterminateRank: return "IndeterminateRank";
    case ErrorCode::MissingIndependence: return "MissingIndependence";
    case ErrorCode::WrongCorank: return "WrongCorank";
    case ErrorCode::NotIndependent: return "NotIndependent";
    case ErrorCode::NotCTS: return "NotCTS";
    case ErrorCode::ComplementNotFound: return "ComplementNotFound";
    case ErrorCode::NeedsAssumption: return "NeedsAssumption";
    case ErrorCode::NotStronglyLinear: return "NotStronglyLinear";
    case ErrorCode::ContradictoryAssumption: return "ContradictoryAssumption";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DuplicateName: return "DuplicateName";
    case ErrorCode::UnknownName: return "UnknownName";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::StructureEquationFailure: return "StructureEquationFailure";
  }
  return "Error";
}

}  // namespace eds
