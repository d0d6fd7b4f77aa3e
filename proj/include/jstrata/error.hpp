#pragma once

#include <stdexcept>
#include <string>

namespace jstrata {

/// Malformed input: bad arguments, unparsable text, inconsistent sizes.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A mathematical precondition failed (non-flat pi-point, target module not of
/// constant rank, invalid rank chain, ...). `code()` is a short machine-readable
/// tag used in CLI diagnostics.
class MathError : public std::domain_error {
 public:
  MathError(std::string code, const std::string& what) : std::domain_error(what), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

/// An internal consistency check between two independent computations failed.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace jstrata
