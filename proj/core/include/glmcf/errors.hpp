#pragma once

#include <stdexcept>
#include <string>

namespace glmcf {

// Bad user input: malformed config, out-of-range parameters, contract violations.
struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Numerical failure: divergence, non-convergence, maximum-principle violation.
struct numeric_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Filesystem/serialization failure.
struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace glmcf
