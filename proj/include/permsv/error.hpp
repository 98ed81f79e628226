#pragma once

#include <stdexcept>
#include <string>

namespace permsv {

// Malformed input: bad files, length mismatches, out-of-range parameters.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The operation needs an invertible cycle block and the block is (numerically) singular.
class SingularError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// An iterative method ran out of iterations.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A dense cross-check disagreed with the structured computation.
class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace permsv
