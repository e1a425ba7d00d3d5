#pragma once

#include <stdexcept>
#include <string>

#include "w2bounds/w2bounds.h"

namespace w2b::cli {

enum ExitCode : int { kExitOk = 0, kExitInput = 1, kExitNumerical = 2 };

/// Failure that maps onto a process exit code.
class CliError : public std::runtime_error {
 public:
  CliError(int code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  int code() const { return code_; }

 private:
  int code_;
};

class UsageError : public CliError {
 public:
  explicit UsageError(const std::string& msg) : CliError(kExitInput, msg) {}
};

/// Throws CliError carrying the library's message when status is not W2B_OK.
inline void check(w2b_status status) {
  if (status == W2B_OK) return;
  const int code = status == W2B_ERROR_INPUT ? kExitInput : kExitNumerical;
  throw CliError(code, w2b_last_error());
}

}  // namespace w2b::cli
