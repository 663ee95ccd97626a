#ifndef PERFSAMP_ERRORS_HPP
#define PERFSAMP_ERRORS_HPP

#include <stdexcept>

namespace perfsamp {

// Invalid user-supplied value: state, innovation, parameter, CLI argument.
struct input_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Chain violates a structural requirement (reducible, periodic, degenerate
// state, non-unique stationary vector).
struct model_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Requested transition cannot be produced by any innovation.
struct imputation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Operation requires a capability the model does not provide
// (enumeration, partial order, reversal machinery).
struct unsupported_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Exact computation would exceed its configured budget.
struct resource_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Statistical decision impossible at the given horizon or sample size.
struct inconclusive_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace perfsamp

#endif
