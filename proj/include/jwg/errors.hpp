#pragma once

#include <stdexcept>
#include <string>

namespace jwg {

enum class Errc {
  NotPrime,
  ReducibleModulus,
  DegreeMismatch,
  DivisionByZero,
  EvenCharacteristic,
  NonSquare,
  SingularMatrix,
  NonSquareProfile,
  SearchExhausted,
  BadJumpIndices,
  BadExponents,
  WrongSide,
  SameSide,
  NotJumpedOrigin,
  PreconditionViolated,
  InternalInconsistency,
  InvalidGrid,
  IoError,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NotPrime: return "NotPrime";
    case Errc::ReducibleModulus: return "ReducibleModulus";
    case Errc::DegreeMismatch: return "DegreeMismatch";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::EvenCharacteristic: return "EvenCharacteristic";
    case Errc::NonSquare: return "NonSquare";
    case Errc::SingularMatrix: return "SingularMatrix";
    case Errc::NonSquareProfile: return "NonSquareProfile";
    case Errc::SearchExhausted: return "SearchExhausted";
    case Errc::BadJumpIndices: return "BadJumpIndices";
    case Errc::BadExponents: return "BadExponents";
    case Errc::WrongSide: return "WrongSide";
    case Errc::SameSide: return "SameSide";
    case Errc::NotJumpedOrigin: return "NotJumpedOrigin";
    case Errc::PreconditionViolated: return "PreconditionViolated";
    case Errc::InternalInconsistency: return "InternalInconsistency";
    case Errc::InvalidGrid: return "InvalidGrid";
    case Errc::IoError: return "IoError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& msg) { throw Error(code, msg); }

}  // namespace jwg
