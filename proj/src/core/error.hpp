#pragma once

#include <stdexcept>
#include <string>

namespace dbarlab {

enum class ErrorCode {
  kInvalidArgument,   // malformed input, dimension mismatch, bad range
  kPrecondition,      // mathematically required precondition does not hold
  kCertification,     // a numeric certificate could not be produced
  kParse,             // malformed JSON / unknown schema field
  kInternal,
};

/// Exception type thrown by every core routine; the C API maps `code()` onto
/// its status values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool cond, const std::string& what) {
  if (!cond) throw Error(ErrorCode::kInvalidArgument, what);
}

}  // namespace dbarlab
