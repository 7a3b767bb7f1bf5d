#pragma once

#include <stdexcept>
#include <string>

namespace ffcm {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Arithmetic would need Laurent coefficients below the tracked precision.
struct PrecisionError : Error {
  using Error::Error;
};

// An enumeration or sum exceeds the configured work budget.
struct BudgetError : Error {
  using Error::Error;
};

// A precondition on the mathematical inputs is violated (non-unit inverse,
// reducible modulus where an irreducible one is required, ...).
struct DomainError : Error {
  using Error::Error;
};

// A construction-time self-check failed (wrong generator count, asymmetric
// generating set, unexpected component order).
struct ConstructionError : Error {
  using Error::Error;
};

}  // namespace ffcm
