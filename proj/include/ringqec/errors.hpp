#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ringqec {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Operand lengths disagree (qubit counts, row dimensions).
struct DimensionError : Error {
  using Error::Error;
};

// Bad Pauli string / malformed input text.
struct ParseError : Error {
  using Error::Error;
};

// Code construction rejected (unsupported distance, invariant violation).
struct BuildError : Error {
  using Error::Error;
};

// Enumeration would exceed the configured budget.
struct BudgetError : Error {
  BudgetError(const std::string& msg, std::uint64_t required_count, int suggested_w_max)
      : Error(msg), required(required_count), suggested_wmax(suggested_w_max) {}
  std::uint64_t required;
  int suggested_wmax;
};

// Fit rejected (too few usable points, degenerate inputs).
struct FitError : Error {
  using Error::Error;
};

}  // namespace ringqec
