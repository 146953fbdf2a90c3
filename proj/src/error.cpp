#include "betawords/error.hpp"

namespace betawords {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidInput:
      return "InvalidInput";
    case ErrorCode::NotSelfDominant:
      return "NotSelfDominant";
    case ErrorCode::AlphabetMismatch:
      return "AlphabetMismatch";
    case ErrorCode::NotAdmissible:
      return "NotAdmissible";
    case ErrorCode::PrecisionExhausted:
      return "PrecisionExhausted";
    case ErrorCode::IntegerBeta:
      return "IntegerBeta";
    case ErrorCode::TailMismatch:
      return "TailMismatch";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message, std::size_t position)
    : std::runtime_error(message), code_(code), position_(position) {}

}  // namespace betawords
