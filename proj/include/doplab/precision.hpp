#pragma once

#include <cmath>
#include <limits>
#include <string>

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/mpfr.hpp>

namespace doplab {

/// Working-precision real. Expression templates are off so the type composes
/// with Eigen and with plain generic code written for `double`.
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

/// Working precision and the two tolerances every check is measured against.
struct PrecisionContext {
  unsigned precision_bits = 256;
  /// Identity-residual tolerance.
  double eq_tol = 0.0;
  /// Margin used to classify roots against the unit circle and to call two
  /// roots distinct.
  double unit_circle_tol = 1e-8;

  /// Defaults: eq_tol = 2^(-bits/2), unit_circle_tol = 1e-8.
  static PrecisionContext with_bits(unsigned bits);

  /// Throws ParameterError when an invariant is violated.
  void validate() const;
};

/// Sets the working precision of newly created `Real` values for the lifetime
/// of the guard and restores the previous setting afterwards. The setting is
/// process-wide.
class ScopedPrecision {
 public:
  explicit ScopedPrecision(unsigned bits);
  explicit ScopedPrecision(const PrecisionContext& ctx) : ScopedPrecision(ctx.precision_bits) {}
  ~ScopedPrecision();

  ScopedPrecision(const ScopedPrecision&) = delete;
  ScopedPrecision& operator=(const ScopedPrecision&) = delete;

 private:
  unsigned previous_digits_;
};

/// Decimal digits handed to MPFR so that the significand has at least `bits`.
unsigned digits10_for_bits(unsigned bits);

/// Decimal string carrying every significant digit of the value at the
/// current working precision (scientific notation).
std::string to_decimal(const Real& x);
std::string to_decimal(double x);

/// Parses a decimal string at the current working precision.
Real parse_real(const std::string& text);

/// Generic unit roundoff for the scalar type.
template <typename Scalar>
Scalar unit_roundoff() {
  return std::numeric_limits<Scalar>::epsilon();
}

}  // namespace doplab
