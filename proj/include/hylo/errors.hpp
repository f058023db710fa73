#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hylo {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input document is not well-formed (JSON or term syntax).
struct SyntaxError : Error {
  using Error::Error;
};

// Well-formed input that violates a model invariant: duplicate names,
// non-total table, unknown element, arity cap exceeded, ...
struct ValidationError : Error {
  using Error::Error;
};

struct UnknownElement : Error {
  using Error::Error;
};

struct UnknownStructure : Error {
  using Error::Error;
};

struct DomainMismatch : Error {
  using Error::Error;
};

// Generator parameters would exceed the carrier element cap.
struct ParamsTooLarge : Error {
  using Error::Error;
};

// An exhaustive sweep would exceed the configured budget. Carries the
// cardinality that was computed before giving up.
struct BudgetExceeded : Error {
  BudgetExceeded(const std::string& what, std::uint64_t computed_size)
      : Error(what), computed(computed_size) {}
  std::uint64_t computed;
};

// Two routes that must agree did not. Always an internal bug, never a
// user error.
struct EngineInconsistency : Error {
  using Error::Error;
};

// Rewriting reached a term no rule covers.
struct StuckTerm : Error {
  using Error::Error;
};

}  // namespace hylo
