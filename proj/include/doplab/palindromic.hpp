#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include <Eigen/Eigenvalues>

#include "doplab/errors.hpp"
#include "doplab/poly.hpp"
#include "doplab/precision.hpp"

namespace doplab {

/// Reciprocal root pairs of a palindromic polynomial: `outside[k] == 1 /
/// inside[k]`, |inside[k]| < 1. `inside` is sorted ascending.
template <typename Scalar>
struct RootPairing {
  std::vector<Scalar> inside;
  std::vector<Scalar> outside;

  std::size_t count() const { return inside.size(); }

  /// All 2·count() roots in ascending order.
  std::vector<Scalar> all() const {
    std::vector<Scalar> r(inside);
    r.insert(r.end(), outside.begin(), outside.end());
    std::sort(r.begin(), r.end());
    return r;
  }
};

/// For a palindromic p of degree 2d, p(λ)/λ^d = q(λ + 1/λ) with deg q = d.
/// Uses λ^k + λ^-k = V_k(t), V_0 = 2, V_1 = t, V_k = t·V_{k-1} - V_{k-2}.
template <typename Scalar>
Poly<Scalar> reciprocal_reduction(const Poly<Scalar>& p) {
  const int d = p.degree() / 2;
  Poly<Scalar> q{p[d]};
  Poly<Scalar> v_prev{Scalar(2)};
  Poly<Scalar> v{Scalar(0), Scalar(1)};
  const Poly<Scalar> t{Scalar(0), Scalar(1)};
  for (int k = 1; k <= d; ++k) {
    q = q + p[d - k] * v;
    Poly<Scalar> next = t * v - v_prev;
    v_prev = std::move(v);
    v = std::move(next);
  }
  return q;
}

namespace detail {

template <typename Scalar>
Scalar newton_polish(const Poly<Scalar>& p, const Poly<Scalar>& dp, Scalar x) {
  using std::abs;
  const Scalar eps = unit_roundoff<Scalar>();
  for (int it = 0; it < 100; ++it) {
    const Scalar f = p(x);
    const Scalar df = dp(x);
    if (df == Scalar(0)) break;
    const Scalar step = f / df;
    x -= step;
    if (abs(step) <= 4 * eps * abs(x)) break;
  }
  return x;
}

/// Real roots of q, ascending. Companion-matrix eigenvalues refined by Newton
/// at working precision.
template <typename Scalar>
std::vector<Scalar> real_roots(const Poly<Scalar>& q, const PrecisionContext& ctx) {
  using std::abs;
  using std::sqrt;
  const int d = q.degree();
  std::vector<Scalar> roots;
  if (d == 1) {
    roots.push_back(-q[0] / q[1]);
    return roots;
  }
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Matrix companion = Matrix::Zero(d, d);
  for (int i = 1; i < d; ++i) companion(i, i - 1) = Scalar(1);
  for (int i = 0; i < d; ++i) companion(i, d - 1) = -q[i] / q[d];
  Eigen::EigenSolver<Matrix> solver(companion, false);
  if (solver.info() != Eigen::Success) throw DegenerateError("eigenvalue iteration did not converge");

  const Poly<Scalar> dq = derivative(q);
  for (int i = 0; i < d; ++i) {
    const std::complex<Scalar> z = solver.eigenvalues()[i];
    const Scalar magnitude = sqrt(z.real() * z.real() + z.imag() * z.imag());
    if (abs(z.imag()) > Scalar(ctx.unit_circle_tol) * std::max<Scalar>(Scalar(1), magnitude))
      throw DegenerateError("non-real root: real and simple roots assumed");
    roots.push_back(newton_polish(q, dq, Scalar(z.real())));
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace detail

/// Roots of an even-degree palindromic polynomial with real simple roots off
/// the unit circle.
///
/// The degree-2d polynomial is reduced to a degree-d polynomial in
/// t = λ + 1/λ whose real roots give the reciprocal pairs through
/// λ² - tλ + 1 = 0; each λ is then Newton-polished against p. Coefficients are
/// symmetrised first, so p and its reversal produce identical output.
template <typename Scalar>
RootPairing<Scalar> solve_palindromic(const Poly<Scalar>& p, const PrecisionContext& ctx) {
  using std::abs;
  using std::sqrt;
  const int n = p.degree();
  if (n < 2 || n % 2 != 0) throw DegenerateError("palindromic solve needs even degree >= 2");
  if (palindromy_defect(p) > Scalar(ctx.eq_tol)) throw DegenerateError("palindromy violated");

  typename Poly<Scalar>::Coeffs sym(n + 1);
  for (int s = 0; s <= n; ++s) sym[s] = (p[s] + p[n - s]) / 2;
  const Poly<Scalar> ps(std::move(sym));

  const Scalar scale = max_abs_coeff(ps);
  const Scalar margin = Scalar(ctx.unit_circle_tol);
  if (abs(ps(Scalar(1))) <= margin * scale || abs(ps(Scalar(-1))) <= margin * scale)
    throw DegenerateError("root on/near unit circle");

  const std::vector<Scalar> ts = detail::real_roots(reciprocal_reduction(ps), ctx);
  for (std::size_t i = 0; i + 1 < ts.size(); ++i)
    if (abs(ts[i + 1] - ts[i]) <= margin * std::max<Scalar>(Scalar(1), abs(ts[i])))
      throw DegenerateError("simple-roots assumption violated");

  const Poly<Scalar> dps = derivative(ps);
  RootPairing<Scalar> out;
  for (const Scalar& t : ts) {
    if (abs(t) <= 2 + margin) throw DegenerateError("root on/near unit circle");
    // the larger-modulus root avoids cancellation; its reciprocal is the inner one
    const Scalar big = (t + (t < 0 ? -1 : 1) * sqrt(t * t - 4)) / 2;
    out.inside.push_back(detail::newton_polish(ps, dps, Scalar(1 / big)));
  }
  std::sort(out.inside.begin(), out.inside.end());
  for (const Scalar& lam : out.inside) {
    if (abs(lam) >= 1 - margin) throw DegenerateError("root on/near unit circle");
    out.outside.push_back(detail::newton_polish(ps, dps, Scalar(1 / lam)));
  }
  return out;
}

}  // namespace doplab
