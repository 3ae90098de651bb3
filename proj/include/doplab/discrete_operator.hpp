#pragma once

#include <cmath>
#include <cstdlib>
#include <vector>

#include "doplab/char_poly.hpp"
#include "doplab/errors.hpp"
#include "doplab/palindromic.hpp"
#include "doplab/poly.hpp"
#include "doplab/precision.hpp"

namespace doplab {

/// Factored form of the discrete analogue D_m(hβ) of
/// d^{2m}/dx^{2m} + 2ω² d^{2m-2}/dx^{2m-2} + ω⁴ d^{2m-4}/dx^{2m-4}:
///
///   D_m(hβ) = scale · { Σ A_k λ_k^{|β|-1}   |β| ≥ 2
///                     { 1 + Σ A_k           |β| = 1
///                     { C + Σ A_k / λ_k     β = 0
///
/// with λ_k the m-1 roots of the characteristic polynomial inside the unit
/// disk and scale = 2ω^{2m-1} / ((-1)^m p_{2m-2}).
template <typename Scalar>
struct DiscreteOperator {
  OperatorParams<Scalar> params;
  std::vector<Scalar> lambdas;
  std::vector<Scalar> amps;
  Scalar c_const;
  Scalar p_lead;
  Scalar p_sub;
  Scalar scale;

  /// max |λ_k|
  Scalar rho() const {
    using std::abs;
    Scalar r(0);
    for (const Scalar& l : lambdas) r = std::max<Scalar>(r, abs(l));
    return r;
  }
};

/// Assembles the operator from the characteristic polynomial, its inside
/// roots and the derivative at those roots:
///   A_k = (1-λ_k)^{2m-4} (λ_k² - 2λ_k cos hω + 1)² p_{2m-2} / (λ_k P'(λ_k))
///   C   = 4 - 4 cos hω - 2m - p_{2m-3}/p_{2m-2}
template <typename Scalar>
DiscreteOperator<Scalar> build_operator(const CharPoly<Scalar>& cp, const RootPairing<Scalar>& roots,
                                        const PrecisionContext& ctx) {
  using std::abs;
  using std::cos;
  using std::pow;
  const auto& params = cp.params;
  const int m = params.m;
  if (static_cast<int>(roots.count()) != m - 1)
    throw DegenerateError("expected m-1 roots inside the unit disk");

  const Scalar cos_t = cos(params.h_omega());
  const Poly<Scalar> dp = derivative(cp.poly);
  const Scalar tol = Scalar(ctx.eq_tol);

  DiscreteOperator<Scalar> op;
  op.params = params;
  op.p_lead = cp.p_lead;
  op.p_sub = cp.p_sub;
  for (const Scalar& lam : roots.inside) {
    if (abs(lam) <= tol) throw DegenerateError("root at zero: amplitude undefined");
    const Scalar d = dp(lam);
    if (abs(d) <= tol * max_abs_coeff(cp.poly)) throw DegenerateError("simple-roots violated: P'(lambda) = 0");
    const Scalar quad = lam * lam - 2 * lam * cos_t + 1;
    op.lambdas.push_back(lam);
    op.amps.push_back(ipow(Scalar(1) - lam, 2 * m - 4) * quad * quad * cp.p_lead / (lam * d));
  }
  op.c_const = 4 - 4 * cos_t - Scalar(2 * m) - cp.p_sub / cp.p_lead;
  const Scalar sign = (m % 2 == 0) ? Scalar(1) : Scalar(-1);
  op.scale = 2 * ipow(params.omega, 2 * m - 1) / (sign * cp.p_lead);
  return op;
}

template <typename Scalar>
DiscreteOperator<Scalar> build_operator(const OperatorParams<Scalar>& params, const PrecisionContext& ctx) {
  const CharPoly<Scalar> cp = build_char_poly(params, ctx);
  return build_operator(cp, solve_palindromic(cp.poly, ctx), ctx);
}

/// D_m(hβ); even in β by construction.
template <typename Scalar>
Scalar dm_value(const DiscreteOperator<Scalar>& op, long long beta) {
  const long long b = std::llabs(beta);
  Scalar sum(0);
  if (b >= 2) {
    for (std::size_t k = 0; k < op.lambdas.size(); ++k) sum += op.amps[k] * ipow(op.lambdas[k], b - 1);
  } else if (b == 1) {
    sum = Scalar(1);
    for (const Scalar& a : op.amps) sum += a;
  } else {
    sum = op.c_const;
    for (std::size_t k = 0; k < op.lambdas.size(); ++k) sum += op.amps[k] / op.lambdas[k];
  }
  return op.scale * sum;
}

/// Fundamental solution of the continuous operator:
///   G_m(x) = (-1)^m sign(x) / (4ω^{2m-1}) · [(2m-3) sin ωx - ωx cos ωx
///            + 2 Σ_{k=1}^{m-2} (-1)^k (m-k-1)(ωx)^{2k-1}/(2k-1)!]
/// with sign(0) = 0.
template <typename Scalar>
Scalar gm_continuous(int m, const Scalar& omega, const Scalar& x) {
  using std::cos;
  using std::sin;
  if (x == 0) return Scalar(0);
  const Scalar wx = omega * x;
  const Scalar bracket = Scalar(2 * m - 3) * sin(wx) - wx * cos(wx) + 2 * odd_power_tail(m, wx);
  const Scalar sign = ((m % 2 == 0) == (x > 0)) ? Scalar(1) : Scalar(-1);
  return sign * bracket / (4 * ipow(omega, 2 * m - 1));
}

template <typename Scalar>
Scalar gm_continuous(const OperatorParams<Scalar>& params, const Scalar& x) {
  return gm_continuous(params.m, params.omega, x);
}

/// G_m(hβ) sampled on the grid.
template <typename Scalar>
Scalar gm_discrete(const OperatorParams<Scalar>& params, long long beta) {
  return gm_continuous(params.m, params.omega, Scalar(beta) / Scalar(params.N));
}

/// G_m(hβ) for |β| ≤ bound, stored at index β + bound.
template <typename Scalar>
struct GreensTable {
  OperatorParams<Scalar> params;
  long long bound = 0;
  std::vector<Scalar> values;

  const Scalar& operator()(long long beta) const { return values[static_cast<std::size_t>(beta + bound)]; }
};

template <typename Scalar>
GreensTable<Scalar> make_greens_table(const OperatorParams<Scalar>& params, long long bound) {
  GreensTable<Scalar> table{params, bound, {}};
  table.values.reserve(static_cast<std::size_t>(2 * bound + 1));
  // sign(x) times an odd bracket: G_m is even, evaluate β ≥ 0 once and mirror
  std::vector<Scalar> positive;
  positive.reserve(static_cast<std::size_t>(bound + 1));
  for (long long b = 0; b <= bound; ++b) positive.push_back(gm_discrete(params, b));
  for (long long b = -bound; b <= bound; ++b) table.values.push_back(positive[static_cast<std::size_t>(b < 0 ? -b : b)]);
  return table;
}

}  // namespace doplab
