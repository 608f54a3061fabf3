// error.hpp
// Single exception type with a machine-readable code. The CLI maps codes to
// exit statuses; library callers can switch on code() without string matching.

#pragma once

#include <stdexcept>
#include <string>

namespace bosesep {

enum class ErrorCode {
  SizeLimit,
  NotHermitian,
  NumericalFailure,
  NotPSD,
  IndexError,
  ShapeError,
  NotInRange,
  NormError,
  NotSymmetricSupport,
  RankTooLarge,
  Unsupported,
  Precondition,
  ExtractionFailed,
  NoConvergence,
  ParseError,
  IoError,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::SizeLimit: return "SizeLimit";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NumericalFailure: return "NumericalFailure";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::IndexError: return "IndexError";
    case ErrorCode::ShapeError: return "ShapeError";
    case ErrorCode::NotInRange: return "NotInRange";
    case ErrorCode::NormError: return "NormError";
    case ErrorCode::NotSymmetricSupport: return "NotSymmetricSupport";
    case ErrorCode::RankTooLarge: return "RankTooLarge";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::Precondition: return "Precondition";
    case ErrorCode::ExtractionFailed: return "ExtractionFailed";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "UnknownError";
}

}  // namespace bosesep
