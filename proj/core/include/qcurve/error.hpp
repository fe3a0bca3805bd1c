#pragma once

#include <stdexcept>
#include <string>

namespace qcurve {

enum class ErrorCode {
  NonSquarefree,
  DegenerateD,
  NotPIntegral,
  ZeroElement,
  SingularModel,
  UnsupportedResidueChar,
  NotGaloisStableConductor,
  BadReduction,
  NoSuitablePoint,
  NotAnIsogeny,
  DegreeMismatch,
  NonConstantRatio,
  SquareDegreeCase,
  NonIntegralMap,
  UnsupportedEll,
  GraphTooLarge,
  TraceMismatch,
  NotASquareTimesM,
  NotASquareInF,
  MissingPrimeCoefficient,
  NonIntegralTwelfth,
  PrecisionExhausted,
  EtaUnavailable,
  IllConditioned,
  InvalidInput,
  Unsupported,
  Internal
};

const char* code_name(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode c, const std::string& msg)
      : std::runtime_error(std::string(code_name(c)) + ": " + msg), code_(c) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qcurve
