#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace toric {

enum class ErrorKind {
  NotPrimitive,
  NotSmooth,
  NotComplete,
  Malformed,
  LocationFailure,
  DimensionMismatch,
  NonIntegral,
  PoleAtInput,
  NotInterior,
  DegenerateGrid,
  InvalidArgument,
  ResourceLimit,
};

std::string_view to_string(ErrorKind kind);

// Input-level failure. Carries a machine-checkable kind next to the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Broken internal invariant; the CLI maps this to a distinct exit code.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

#define TORIC_ASSERT(cond, msg)                                     \
  do {                                                              \
    if (!(cond)) throw ::toric::InternalError(std::string(msg));    \
  } while (0)

}  // namespace toric
