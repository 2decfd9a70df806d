#pragma once

#include <stdexcept>
#include <string>

namespace fermi {

// Mirrors fermi_status in the C API; the numeric values are part of the ABI.
enum class ErrorCode : int {
  InvalidArgument = 1,
  ShapeMismatch = 2,
  DegenerateInput = 3,
  Parse = 4,
  Io = 5,
  Capacity = 6,
  Internal = 7,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace fermi
