#pragma once

#include <stdexcept>
#include <string>

namespace koch {

enum class ErrorCode {
  InvalidInput,       // malformed value (bad digits, overlapping arcs, ...)
  UnsupportedInput,   // well formed but outside the supported class
  ContractViolation,  // a checked precondition between modules failed
  ResourceLimit,      // depth / size cap exceeded
  SchemaError,        // JSON does not match the documented schema
  IoError,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

} // namespace koch
