#pragma once

#include <stdexcept>
#include <string>

namespace w2b {

enum class ErrorKind {
  Input,      // precondition violated by the caller
  Numerical,  // solver failure or degenerate numerical configuration
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void throw_input(const std::string& what) {
  throw Error(ErrorKind::Input, what);
}

[[noreturn]] inline void throw_numerical(const std::string& what) {
  throw Error(ErrorKind::Numerical, what);
}

}  // namespace w2b
