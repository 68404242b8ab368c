#ifndef EPICURE_ERRORS_HPP
#define EPICURE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace epicure {

enum class Errc {
  Empty,
  AllIsolated,
  InvalidRange,
  InvalidSize,
  ZeroDenominator,
  DimensionMismatch,
  NonFinite,
  StepTooLarge,
  BelowThreshold,
  NoProgress,
  DegenerateCase,
  InfeasibleRegime,
  MaxIterations,
  LineSearchFailure,
  TrivialRatioCase,
  ParseError,
  ValidationError,
  UnknownCommand,
};

const char* to_string(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace epicure

#endif
