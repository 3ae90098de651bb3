#include "doplab/precision.hpp"

#include <sstream>

#include "doplab/errors.hpp"

namespace doplab {

PrecisionContext PrecisionContext::with_bits(unsigned bits) {
  PrecisionContext ctx;
  ctx.precision_bits = bits;
  ctx.eq_tol = std::ldexp(1.0, -static_cast<int>(bits / 2));
  ctx.unit_circle_tol = 1e-8;
  return ctx;
}

void PrecisionContext::validate() const {
  std::string problems;
  auto add = [&](const char* what) {
    if (!problems.empty()) problems += " and ";
    problems += what;
  };
  if (precision_bits < 64) add("precision_bits must be >= 64");
  if (!(eq_tol > 0.0 && eq_tol < 1.0)) add("eq_tol must lie in (0, 1)");
  if (!(unit_circle_tol > 0.0 && unit_circle_tol < 0.5)) add("unit_circle_tol must lie in (0, 0.5)");
  if (!problems.empty()) throw ParameterError(problems);
}

unsigned digits10_for_bits(unsigned bits) {
  return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120));
}

ScopedPrecision::ScopedPrecision(unsigned bits) : previous_digits_(Real::default_precision()) {
  Real::default_precision(digits10_for_bits(bits));
}

ScopedPrecision::~ScopedPrecision() { Real::default_precision(previous_digits_); }

std::string to_decimal(const Real& x) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(static_cast<int>(x.precision()) + 2) << x;
  return os.str();
}

std::string to_decimal(double x) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(std::numeric_limits<double>::max_digits10 - 1) << x;
  return os.str();
}

Real parse_real(const std::string& text) { return Real(text); }

}  // namespace doplab
