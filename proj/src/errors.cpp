#include "epicure/errors.hpp"

namespace epicure {

const char* to_string(Errc c) {
  switch (c) {
    case Errc::Empty: return "Empty";
    case Errc::AllIsolated: return "AllIsolated";
    case Errc::InvalidRange: return "InvalidRange";
    case Errc::InvalidSize: return "InvalidSize";
    case Errc::ZeroDenominator: return "ZeroDenominator";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NonFinite: return "NonFinite";
    case Errc::StepTooLarge: return "StepTooLarge";
    case Errc::BelowThreshold: return "BelowThreshold";
    case Errc::NoProgress: return "NoProgress";
    case Errc::DegenerateCase: return "DegenerateCase";
    case Errc::InfeasibleRegime: return "InfeasibleRegime";
    case Errc::MaxIterations: return "MaxIterations";
    case Errc::LineSearchFailure: return "LineSearchFailure";
    case Errc::TrivialRatioCase: return "TrivialRatioCase";
    case Errc::ParseError: return "ParseError";
    case Errc::ValidationError: return "ValidationError";
    case Errc::UnknownCommand: return "UnknownCommand";
  }
  return "UnknownError";
}

}  // namespace epicure
