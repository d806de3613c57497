#pragma once

#include <stdexcept>
#include <string>

namespace siegel {

enum class ErrorCode {
  NotPsd,
  NotDefinite,
  NotFullRank,
  InvalidWeight,
  NonIntegralCoordinate,
  DependentColumns,
  OutOfBound,
  IncompatibleModulus,
  MissingKey,
  NoWitness,
  NoUnitCoordinate,
  OddRank,
  NotPluriharmonic,
  NotEquivariant,
  DegenerateR,
  UnknownLattice,
  InvalidArgument,
  ParseError,
  Overflow,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace siegel
