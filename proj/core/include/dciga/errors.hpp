#pragma once

#include <stdexcept>
#include <string>

namespace dciga {

/// Invalid input: bad mesh, unsupported degree, mismatched penalty lists.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computation that should succeed on valid input did not
/// (failed mass factorization, vanishing closed-form denominator).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dciga
