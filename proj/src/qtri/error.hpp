#pragma once

#include <stdexcept>
#include <string>

namespace qtri {

enum class ErrorKind {
  InvalidArgument,
  UnknownId,
  Schema,
  NotDivisible,
  Truncation,
  Internal,
};

// Single exception type for the core; the C API maps `kind()` onto status codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace qtri
