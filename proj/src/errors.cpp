#include "ranklab/errors.hpp"

namespace ranklab {

const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::NotStronglyConnected: return "NotStronglyConnected";
    case ErrorCode::NonpositiveRoof: return "NonpositiveRoof";
    case ErrorCode::ExpansionOnFlat: return "ExpansionOnFlat";
    case ErrorCode::NoGrowthGap: return "NoGrowthGap";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::EmptySubgraph: return "EmptySubgraph";
    case ErrorCode::NoCycle: return "NoCycle";
    case ErrorCode::BisectionBracketFailure: return "BisectionBracketFailure";
    case ErrorCode::FlatEmpty: return "FlatEmpty";
    case ErrorCode::TooFewWindows: return "TooFewWindows";
    case ErrorCode::UncertifiedHorizon: return "UncertifiedHorizon";
    case ErrorCode::ProfileNotNonpositivelyCurved: return "ProfileNotNonpositivelyCurved";
    case ErrorCode::GluingMismatch: return "GluingMismatch";
    case ErrorCode::StepFailure: return "StepFailure";
    case ErrorCode::NotClosed: return "NotClosed";
    case ErrorCode::RiccatiBlowup: return "RiccatiBlowup";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::ShorteningStalled: return "ShorteningStalled";
    case ErrorCode::ParameterViolation: return "ParameterViolation";
    case ErrorCode::AlphaNonpositive: return "AlphaNonpositive";
    case ErrorCode::NotInvariant: return "NotInvariant";
    case ErrorCode::EmptyWindow: return "EmptyWindow";
    case ErrorCode::NotIncreasing: return "NotIncreasing";
    case ErrorCode::SubgraphDisconnected: return "SubgraphDisconnected";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::UnknownRun: return "UnknownRun";
    case ErrorCode::IoError: return "IoError";
  }
  return "UnknownError";
}

}  // namespace ranklab
