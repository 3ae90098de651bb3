#pragma once

#include <stdexcept>
#include <string>

namespace doplab {

/// Invalid user-supplied parameters (m, ω, N, tolerances, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The numerical construction degenerates: roots on the unit circle, repeated
/// roots, non-palindromic input, insufficient precision.
class DegenerateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace doplab
