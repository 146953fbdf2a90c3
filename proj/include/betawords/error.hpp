#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace betawords {

enum class ErrorCode {
  InvalidInput,
  NotSelfDominant,
  AlphabetMismatch,
  NotAdmissible,
  PrecisionExhausted,
  IntegerBeta,
  TailMismatch,
};

const char* to_string(ErrorCode code) noexcept;

/// Every failure raised by the library. `position()` carries the least
/// violating shift for NotSelfDominant and the 1-based digit position for
/// PrecisionExhausted; it is 0 for the other codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::size_t position = 0);

  ErrorCode code() const noexcept { return code_; }
  std::size_t position() const noexcept { return position_; }

 private:
  ErrorCode code_;
  std::size_t position_;
};

}  // namespace betawords
