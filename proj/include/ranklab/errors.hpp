// ranklab - error codes and exception type shared by all modules

#ifndef RANKLAB_ERRORS_HPP
#define RANKLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ranklab {

enum class ErrorCode {
  // suspension testbed
  NotStronglyConnected,
  NonpositiveRoof,
  ExpansionOnFlat,
  NoGrowthGap,
  BudgetExceeded,
  EmptySubgraph,
  NoCycle,
  BisectionBracketFailure,
  FlatEmpty,
  // growth fits
  TooFewWindows,
  UncertifiedHorizon,
  // surface
  ProfileNotNonpositivelyCurved,
  GluingMismatch,
  StepFailure,
  NotClosed,
  RiccatiBlowup,
  GridTooCoarse,
  // orbit enumeration
  CapExceeded,
  ShorteningStalled,
  // potentials / deviation / equilibrium
  ParameterViolation,
  AlphaNonpositive,
  NotInvariant,
  EmptyWindow,
  NotIncreasing,
  SubgraphDisconnected,
  // cli
  ConfigError,
  UnknownRun,
  IoError,
};

const char* error_code_name(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ranklab

#endif
