#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace torsionlab {

/// Base class for recoverable input errors (bad specs, bad tables, violated
/// preconditions). The CLI maps these to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed ring spec, element name, or JSON document.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}
  explicit ParseError(const std::string& what)
      : Error(what), position_(std::string::npos) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// A table failed an algebraic axiom. The message names the axiom and a
/// witness tuple.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// An operation was called on inputs outside its contract (ring mismatch,
/// non-torsion-free ambient module, non-two-sided ideal, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An asserted mathematical invariant failed. For valid inputs this is a
/// counterexample to a theorem the library relies on, never a user error.
class InternalFault : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

namespace detail {

inline void fault_unless(bool condition, const std::string& what) {
  if (!condition) throw InternalFault(what);
}

inline void require(bool condition, const std::string& what) {
  if (!condition) throw PreconditionError(what);
}

}  // namespace detail
}  // namespace torsionlab
