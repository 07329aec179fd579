#pragma once

#include <stdexcept>
#include <string>

namespace torsionkit {

// Mirrors tk_status in torsionkit.h; values must stay in sync.
enum class ErrorCode : int {
  kNullArgument = 1,
  kDimensionMismatch = 2,
  kDegree = 3,
  kInvariantViolation = 4,
  kDegenerateDimension = 5,
  kParse = 6,
  kSchema = 7,
  kNotLieStructure = 8,
  kInvalidAlgebra = 9,
  kUnsupportedSignature = 10,
  kPrecondition = 11,
  kInternalConsistency = 12,
  kUnknownGenerator = 13,
  kOutOfRange = 14,
  kInternal = 15,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace torsionkit
