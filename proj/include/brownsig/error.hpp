#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace brownsig {

enum class Errc {
  DiracMeasure,
  NegativeMass,
  EmptyMeasure,
  InvalidInput,
  OnSupport,
  NoConvergence,
  WrongBasin,
  OutsideOmega,
  OutsideLambda,
  OutsideOnly,
  PastLifetime,
  DivergentLog,
  DegenerateJacobian,
  NoComplexSolution,
  AmbiguousBranch,
  EigenFailure,
};

std::string_view to_string(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail);
  Errc code() const noexcept { return code_; }
  // Bad input as opposed to a numerical failure; the CLI maps these to different exit codes.
  bool is_validation() const noexcept;

 private:
  Errc code_;
};

[[noreturn]] void fail(Errc code, const std::string& detail);

}  // namespace brownsig
