#pragma once

#include <stdexcept>
#include <string>

namespace polyhom {

// Every failure the library can signal deliberately.  Keeping one enum makes
// the failure surface greppable and lets the CLI map errors to stable strings.
enum class Errc {
  // polynomials / evaluation
  DimensionMismatch,
  ZeroBaseNegativeExponent,
  NonSquare,
  ZeroPolynomial,
  // polytopes
  EmptyInput,
  NonUniformDegree,
  NonIntegral,
  // subdivisions
  SpanDeficient,
  // integer linear algebra
  EmptySupport,
  SingularExponentMatrix,
  ZeroRightHandSide,
  NonInvertible,
  // tracking
  SingularJacobian,
  MaxStepsExceeded,
  PathJumpSuspected,
  EndgameNoClosure,
  // polyhedral solver
  NonFineCell,
  CountShortfall,
  // witness sets
  CardinalityDrop,
  AllPathsDiverged,
  // monodromy
  PathFailure,
  MatchAmbiguity,
  OddDForFPF,
  // numerical polytope oracle
  MaxTracksReached,
  OracleInconsistent,
  // decomposable solver
  ZeroMixedVolume,
  NonStrict,
  // cli
  SchemaError,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::ZeroBaseNegativeExponent: return "ZeroBaseNegativeExponent";
    case Errc::NonSquare: return "NonSquare";
    case Errc::ZeroPolynomial: return "ZeroPolynomial";
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::NonUniformDegree: return "NonUniformDegree";
    case Errc::NonIntegral: return "NonIntegral";
    case Errc::SpanDeficient: return "SpanDeficient";
    case Errc::EmptySupport: return "EmptySupport";
    case Errc::SingularExponentMatrix: return "SingularExponentMatrix";
    case Errc::ZeroRightHandSide: return "ZeroRightHandSide";
    case Errc::NonInvertible: return "NonInvertible";
    case Errc::SingularJacobian: return "SingularJacobian";
    case Errc::MaxStepsExceeded: return "MaxStepsExceeded";
    case Errc::PathJumpSuspected: return "PathJumpSuspected";
    case Errc::EndgameNoClosure: return "EndgameNoClosure";
    case Errc::NonFineCell: return "NonFineCell";
    case Errc::CountShortfall: return "CountShortfall";
    case Errc::CardinalityDrop: return "CardinalityDrop";
    case Errc::AllPathsDiverged: return "AllPathsDiverged";
    case Errc::PathFailure: return "PathFailure";
    case Errc::MatchAmbiguity: return "MatchAmbiguity";
    case Errc::OddDForFPF: return "OddDForFPF";
    case Errc::MaxTracksReached: return "MaxTracksReached";
    case Errc::OracleInconsistent: return "OracleInconsistent";
    case Errc::ZeroMixedVolume: return "ZeroMixedVolume";
    case Errc::NonStrict: return "NonStrict";
    case Errc::SchemaError: return "SchemaError";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace polyhom
