#include "brownsig/error.hpp"

namespace brownsig {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::DiracMeasure: return "DiracMeasure";
    case Errc::NegativeMass: return "NegativeMass";
    case Errc::EmptyMeasure: return "EmptyMeasure";
    case Errc::InvalidInput: return "InvalidInput";
    case Errc::OnSupport: return "OnSupport";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::WrongBasin: return "WrongBasin";
    case Errc::OutsideOmega: return "OutsideOmega";
    case Errc::OutsideLambda: return "OutsideLambda";
    case Errc::OutsideOnly: return "OutsideOnly";
    case Errc::PastLifetime: return "PastLifetime";
    case Errc::DivergentLog: return "DivergentLog";
    case Errc::DegenerateJacobian: return "DegenerateJacobian";
    case Errc::NoComplexSolution: return "NoComplexSolution";
    case Errc::AmbiguousBranch: return "AmbiguousBranch";
    case Errc::EigenFailure: return "EigenFailure";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

bool Error::is_validation() const noexcept {
  switch (code_) {
    case Errc::DiracMeasure:
    case Errc::NegativeMass:
    case Errc::EmptyMeasure:
    case Errc::InvalidInput:
    case Errc::OnSupport:
    case Errc::OutsideOmega:
    case Errc::OutsideLambda:
    case Errc::OutsideOnly:
    case Errc::PastLifetime:
      return true;
    default:
      return false;
  }
}

void fail(Errc code, const std::string& detail) { throw Error(code, detail); }

}  // namespace brownsig
