#pragma once

#include <stdexcept>
#include <string>

namespace fihl {

/// Raised when a checked mathematical invariant fails at run time (d^2 != 0,
/// a non-integral multiplicity, a broken intertwining relation, ...).  These
/// always indicate a bug, never bad user input.
class InternalError : public std::logic_error {
 public:
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

/// Thrown by modular routines when the prime stream cannot certify a value.
class UncertifiedError : public std::runtime_error {
 public:
  explicit UncertifiedError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fihl
