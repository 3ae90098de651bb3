#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <string>

#include "doplab/errors.hpp"
#include "doplab/euler_frobenius.hpp"
#include "doplab/palindromic.hpp"
#include "doplab/poly.hpp"
#include "doplab/precision.hpp"

namespace doplab {

/// (m, ω, N) with grid step h = 1/N.
template <typename Scalar>
struct OperatorParams {
  int m = 2;
  Scalar omega = Scalar(1);
  int N = 10;

  Scalar h() const { return Scalar(1) / Scalar(N); }
  Scalar h_omega() const { return omega / Scalar(N); }

  /// Empty when valid, otherwise every violated condition joined by " and ".
  std::string violations() const {
    std::string out;
    auto add = [&](const char* what) {
      if (!out.empty()) out += " and ";
      out += what;
    };
    if (m < 2) add("m must be >= 2");
    if (!(omega > 0)) add("omega must be > 0");
    if (N < 1) add("N must be >= 1");
    if (N >= 1 && omega > 0 && h_omega() > 1) add("h*omega <= 1 violated");
    if (m >= 2 && N >= 1 && N < m - 1) add("N >= m-1 violated");
    return out;
  }

  void validate() const {
    const std::string v = violations();
    if (!v.empty()) throw ParameterError(v);
  }
};

/// The characteristic polynomial of degree 2m-2 and its two top
/// coefficients.
template <typename Scalar>
struct CharPoly {
  OperatorParams<Scalar> params;
  Poly<Scalar> poly;
  Scalar p_lead;
  Scalar p_sub;
};

/// Σ_{k=1}^{m-2} (-1)^k (m-k-1) t^{2k-1} / (2k-1)!, the polynomial tail shared
/// by the Green's function, the characteristic polynomial and its leading
/// coefficient. Empty (zero) for m = 2.
template <typename Scalar>
Scalar odd_power_tail(int m, const Scalar& t) {
  Scalar sum(0);
  Scalar factorial(1);
  for (int k = 1; k <= m - 2; ++k) {
    if (k > 1) factorial *= Scalar((2 * k - 2) * (2 * k - 1));
    const Scalar term = Scalar(m - k - 1) * ipow(t, 2 * k - 1) / factorial;
    sum += (k % 2 == 0) ? term : Scalar(-term);
  }
  return sum;
}

/// Direct assembly of the characteristic polynomial at working precision, as a
/// function of t = hω alone:
///   (1-x)^{2m-4} [a x² + b x + a]
///   + 2 (x² - 2x cos t + 1)² Σ_{k=1}^{m-2} (-1)^k (m-k-1) t^{2k-1} (1-x)^{2m-2k-4} E_{2k-2}(x) / (2k-1)!
/// with a = (2m-3) sin t - t cos t and b = 2t - (2m-3) sin 2t.
/// The O(t) pieces collapse to coefficients of size t^{2m-1}, so about
/// (2m-2)·log2(1/t) bits are lost; build_char_poly uses the series route below.
template <typename Scalar>
Poly<Scalar> char_poly_coefficients(int m, const Scalar& t) {
  using std::cos;
  using std::sin;
  const Scalar a = Scalar(2 * m - 3) * sin(t) - t * cos(t);
  const Scalar b = 2 * t - Scalar(2 * m - 3) * sin(2 * t);
  const Poly<Scalar> one_minus_x{Scalar(1), Scalar(-1)};

  Poly<Scalar> result = pow(one_minus_x, 2 * m - 4) * Poly<Scalar>{a, b, a};
  if (m == 2) return result;

  const Poly<Scalar> quad{Scalar(1), Scalar(-2) * cos(t), Scalar(1)};
  Poly<Scalar> sum;
  Scalar factorial(1);
  for (int k = 1; k <= m - 2; ++k) {
    if (k > 1) factorial *= Scalar((2 * k - 2) * (2 * k - 1));
    Scalar c = Scalar(m - k - 1) * ipow(t, 2 * k - 1) / factorial;
    if (k % 2 == 1) c = -c;
    const Poly<Scalar> ef = ef_coefficients(static_cast<unsigned>(2 * k - 2)).as_poly<Scalar>();
    sum = sum + c * (pow(one_minus_x, 2 * m - 2 * k - 4) * ef);
  }
  return result + Scalar(2) * (pow(quad, 2) * sum);
}

using Rational = boost::multiprecision::cpp_rational;

/// The same assembly carried out exactly on Taylor series in t: coeffs[s][j]
/// is the rational coefficient of t^j in p_s(t). Orders below 2m-1 cancel
/// exactly. The order is raised until the dropped tail sits below
/// 2^-(bits+32) of the leading term for every t ≤ 1. Cached per (m, bits).
struct TaylorTable {
  int m = 0;
  int order = 0;
  std::vector<std::vector<Rational>> coeffs;
};

std::shared_ptr<const TaylorTable> char_poly_taylor(int m, unsigned precision_bits);

template <typename Scalar>
Poly<Scalar> char_poly_from_taylor(const TaylorTable& table, const Scalar& t) {
  typename Poly<Scalar>::Coeffs c(static_cast<Eigen::Index>(table.coeffs.size()));
  for (std::size_t s = 0; s < table.coeffs.size(); ++s) {
    const auto& row = table.coeffs[s];
    Scalar acc(0);
    for (std::size_t j = row.size(); j-- > 0;) {
      acc *= t;
      if (row[j] != 0)
        acc += big_to<Scalar>(boost::multiprecision::numerator(row[j])) /
               big_to<Scalar>(boost::multiprecision::denominator(row[j]));
    }
    c[static_cast<Eigen::Index>(s)] = acc;
  }
  return Poly<Scalar>(std::move(c));
}

/// Characteristic polynomial at t, free of cancellation for small t.
template <typename Scalar>
Poly<Scalar> char_poly_series_coefficients(int m, const Scalar& t, unsigned precision_bits) {
  return char_poly_from_taylor(*char_poly_taylor(m, precision_bits), t);
}

template <typename Scalar>
CharPoly<Scalar> build_char_poly(const OperatorParams<Scalar>& params, const PrecisionContext& ctx) {
  ctx.validate();
  params.validate();
  CharPoly<Scalar> cp{params, char_poly_series_coefficients(params.m, params.h_omega(), ctx.precision_bits),
                      Scalar(0), Scalar(0)};
  const int n = 2 * params.m - 2;
  if (cp.poly.degree() != n)
    throw DegenerateError("characteristic polynomial lost its leading coefficient; raise precision");
  cp.p_lead = cp.poly[n];
  cp.p_sub = cp.poly[n - 1];
  return cp;
}

/// (2m-3) sin hω - hω cos hω + 2 Σ_{k=1}^{m-2} (-1)^k (m-k-1)(hω)^{2k-1}/(2k-1)!
template <typename Scalar>
Scalar leading_coeff_closed_form(const OperatorParams<Scalar>& params) {
  using std::cos;
  using std::sin;
  const Scalar t = params.h_omega();
  return Scalar(params.m * 2 - 3) * sin(t) - t * cos(t) + 2 * odd_power_tail(params.m, t);
}

/// Reflection symmetry P(x) = x^{2m-2} P(1/x): the relative coefficient
/// defect, maximised with the functional identity at x ∈ {-2, -1/2, 1/3, 3/2, 2}.
template <typename Scalar>
Scalar palindromy_residual(const CharPoly<Scalar>& cp) {
  using std::abs;
  const Poly<Scalar>& p = cp.poly;
  const int n = p.degree();
  Scalar worst = palindromy_defect(p);
  const Scalar scale = max_abs_coeff(p);
  const std::array<Scalar, 5> xs{Scalar(-2), Scalar(-1) / 2, Scalar(1) / 3, Scalar(3) / 2, Scalar(2)};
  for (const Scalar& x : xs) {
    const Scalar lhs = p(x);
    const Scalar rhs = ipow(x, n) * p(Scalar(1) / x);
    // Σ|p_s||x|^s ≤ scale·(n+1)·max(1,|x|)^n bounds both sides
    const Scalar size = scale * Scalar(n + 1) * ipow(std::max<Scalar>(Scalar(1), abs(x)), n);
    worst = std::max<Scalar>(worst, abs(lhs - rhs) / size);
  }
  return worst;
}

/// Derivative reflection at the roots: max over roots λ of
/// |P'(1/λ) + λ^{-(2m-4)} P'(λ)| / |λ^{-(2m-4)} P'(λ)|. Dividing by the
/// reflected term rather than |P'(λ)| keeps the measure at rounding level
/// for the tiny inner roots of large m.
template <typename Scalar>
Scalar derivative_reflection_residual(const CharPoly<Scalar>& cp, const RootPairing<Scalar>& roots) {
  using std::abs;
  const Poly<Scalar> dp = derivative(cp.poly);
  const int e = 2 * cp.params.m - 4;
  Scalar worst(0);
  for (const auto* list : {&roots.inside, &roots.outside}) {
    for (const Scalar& lam : *list) {
      const Scalar reflected = ipow(lam, -e) * dp(lam);
      const Scalar r = abs(dp(Scalar(1) / lam) + reflected) / abs(reflected);
      worst = std::max<Scalar>(worst, r);
    }
  }
  return worst;
}

/// Leading terms of p_s / p_{2m-2} = c0 - c2 (hω)² + O((hω)⁴).
template <typename Scalar>
struct ExpansionTerms {
  Scalar c0;
  Scalar c2;
};

/// Extrapolates the coefficient ratio p_s/p_{2m-2} from the step ladder
/// hω ∈ {1/64, 1/128, 1/256}. The three-rung fit of c0 - c2 t² + c4 t⁴ gives
/// the result; the two adjacent-rung estimates of c2 must agree within 1%,
/// otherwise rounding dominates and a DegenerateError asks for more precision.
/// The ratio depends on hω only, so ω merely fixes h = t/ω.
template <typename Scalar>
ExpansionTerms<Scalar> ratio_expansion_check(int m, int s, const Scalar& omega, const PrecisionContext& ctx) {
  using std::abs;
  ctx.validate();
  if (m < 2 || m > 8) throw ParameterError("expansion check supports 2 <= m <= 8");
  if (s < 0 || s > 2 * m - 2) throw ParameterError("coefficient index s must lie in [0, 2m-2]");
  if (!(omega > 0)) throw ParameterError("omega must be > 0");

  std::array<Scalar, 3> t{Scalar(1) / 64, Scalar(1) / 128, Scalar(1) / 256};
  std::array<Scalar, 3> r;
  for (int i = 0; i < 3; ++i) {
    const Poly<Scalar> p = char_poly_series_coefficients(m, t[i], ctx.precision_bits);
    if (p.degree() != 2 * m - 2) throw DegenerateError("raise precision: leading coefficient vanished");
    r[i] = p[s] / p[2 * m - 2];
  }
  std::array<Scalar, 3> u{t[0] * t[0], t[1] * t[1], t[2] * t[2]};

  // two-term estimates of c2 from adjacent rungs
  const Scalar c2_coarse = (r[1] - r[0]) / (u[0] - u[1]);
  const Scalar c2_fine = (r[2] - r[1]) / (u[1] - u[2]);

  // exact quadratic fit in u through the three points: r = c0 - c2 u + c4 u²
  const Scalar d01 = (r[1] - r[0]) / (u[1] - u[0]);
  const Scalar d12 = (r[2] - r[1]) / (u[2] - u[1]);
  const Scalar c4 = (d12 - d01) / (u[2] - u[0]);
  const Scalar slope = d01 - c4 * (u[0] + u[1]);
  const Scalar c0 = r[0] - slope * u[0] - c4 * u[0] * u[0];

  const Scalar spread = abs(c2_coarse - c2_fine);
  const Scalar size = std::max<Scalar>(abs(c2_coarse), abs(c2_fine));
  // a vanishing c2 (s = 0, 2m-2) is judged against the ratio's own size
  const Scalar floor = Scalar(1e-12) * std::max<Scalar>(Scalar(1), abs(c0));
  if (spread > Scalar(1e-2) * size + floor)
    throw DegenerateError("raise precision: c2 estimates across the step ladder disagree by more than 1%");
  return {c0, -slope};
}

}  // namespace doplab
