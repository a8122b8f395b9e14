#pragma once

#include <stdexcept>
#include <string>

namespace wirl {

// Error categories double as CLI exit codes.
enum class ErrorCode : int {
  kValidation = 2,
  kTheorem = 3,
  kIo = 4,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail_validation(const std::string& msg) {
  throw Error(ErrorCode::kValidation, msg);
}

[[noreturn]] inline void fail_theorem(const std::string& msg) {
  throw Error(ErrorCode::kTheorem, msg);
}

[[noreturn]] inline void fail_io(const std::string& msg) {
  throw Error(ErrorCode::kIo, msg);
}

}  // namespace wirl
