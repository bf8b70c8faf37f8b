#pragma once

#include <stdexcept>

namespace digitpat {

// Error taxonomy shared by the library and the CLI.
// The CLI maps these to exit codes: validation = 2, budget = 3, invariant = 4.

// Bad arguments: out-of-range parameters, gcd violations, malformed input.
struct validation_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A computation was rejected because it would exceed a configured
// memory/work budget. The caller may retry with a larger budget.
struct budget_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A built-in self-check failed (an exact identity did not hold).
struct invariant_error : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace digitpat
