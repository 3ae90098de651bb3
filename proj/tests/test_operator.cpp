#include <doctest.h>

#include <functional>

#include "doplab/discrete_operator.hpp"
#include "doplab/verify.hpp"

using namespace doplab;

namespace {

PrecisionContext ctx_bits(unsigned bits) { return PrecisionContext::with_bits(bits); }

BigInt binomial(int n, int k) {
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// k-th derivative by the centred difference δ^k f / δ^k, error O(δ²); k even
Real central_derivative(const std::function<Real(const Real&)>& f, const Real& x, int k, const Real& step) {
  Real sum(0);
  for (int j = 0; j <= k; ++j) {
    const Real term = big_to<Real>(binomial(k, j)) * f(x + Real(k / 2 - j) * step);
    sum += (j % 2 == 0) ? term : Real(-term);
  }
  return sum / ipow(step, k);
}

}  // namespace

TEST_CASE("m = 2 against the quadratic formula") {
  ScopedPrecision sp(256);
  const OperatorParams<Real> params{2, Real(1), 10};
  const auto op = build_operator(params, ctx_bits(256));
  const Real t = params.h_omega();
  const Real p2 = sin(t) - t * cos(t);
  const Real p1 = 2 * t - sin(2 * t);
  const Real lam = (-p1 + sqrt(p1 * p1 - 4 * p2 * p2)) / (2 * p2);
  REQUIRE(op.lambdas.size() == 1);
  CHECK(abs(op.lambdas[0] - lam) / abs(lam) < Real(1e-60));
  // |β| ≥ 2 is exactly geometric with ratio λ
  for (long long b = 2; b <= 8; ++b) CHECK(abs(dm_value(op, b + 1) / dm_value(op, b) - lam) < Real(1e-60));
  // A = (λ² - 2λ cos t + 1)² p2 / (λ P'(λ)) with P'(λ) = 2 p2 λ + p1
  const Real quad = lam * lam - 2 * lam * cos(t) + 1;
  const Real amp = quad * quad * p2 / (lam * (2 * p2 * lam + p1));
  CHECK(abs(op.amps[0] - amp) / abs(amp) < Real(1e-60));
  CHECK(abs(op.scale - 2 / p2) / abs(op.scale) < Real(1e-60));
}

TEST_CASE("constant C and scale match their definitions") {
  ScopedPrecision sp(256);
  for (int m = 2; m <= 6; ++m) {
    const OperatorParams<Real> params{m, Real(0.5), 20};
    const auto cp = build_char_poly(params, ctx_bits(256));
    const auto op = build_operator(params, ctx_bits(256));
    const Real t = params.h_omega();
    const Real c = 4 - 4 * cos(t) - 2 * m - cp.poly[2 * m - 3] / cp.poly[2 * m - 2];
    CHECK(abs(op.c_const - c) / abs(c) < Real(1e-60));
    const Real sign = (m % 2 == 0) ? Real(1) : Real(-1);
    CHECK(abs(op.scale - 2 * ipow(params.omega, 2 * m - 1) / (sign * cp.p_lead)) / abs(op.scale) < Real(1e-60));
    CHECK(op.lambdas.size() == static_cast<std::size_t>(m - 1));
  }
}

TEST_CASE("evenness and geometric envelope") {
  ScopedPrecision sp(256);
  for (int m = 2; m <= 6; ++m) {
    const auto op = build_operator(OperatorParams<Real>{m, Real(1), 10}, ctx_bits(256));
    Real amp_sum(0);
    for (const Real& a : op.amps) amp_sum += abs(a);
    const Real k = abs(op.scale) * amp_sum / op.rho();
    for (long long b = 1; b <= 60; ++b) {
      CHECK(dm_value(op, b) == dm_value(op, -b));
      if (b >= 2) CHECK(abs(dm_value(op, b)) <= k * ipow(op.rho(), b) * (1 + Real(1e-60)));
    }
    CHECK(op.rho() < 1);
  }
}

TEST_CASE("sample roots") {
  ScopedPrecision sp(256);
  const auto op3 = build_operator(OperatorParams<Real>{3, Real(1), 10}, ctx_bits(256));
  REQUIRE(op3.lambdas.size() == 2);
  CHECK(abs(op3.lambdas[0] - Real("-0.43080")) < Real(1e-5));
  CHECK(abs(op3.lambdas[1] - Real("-0.043142")) < Real(1e-6));
  const auto op6 = build_operator(OperatorParams<Real>{6, Real(1), 10}, ctx_bits(256));
  CHECK(abs(op6.rho() - Real("0.661")) < Real(1e-3));
}

TEST_CASE("Green's function: zero at the origin, even, small-x limit") {
  ScopedPrecision sp(1024);
  for (int m = 2; m <= 6; ++m) {
    const Real omega("0.8");
    CHECK(gm_continuous(m, omega, Real(0)) == 0);
    for (const char* x : {"0.1", "1.3", "7"}) CHECK(gm_continuous(m, omega, Real(x)) == gm_continuous(m, omega, -Real(x)));
    // G_m(x) → |x|^{2m-1} / (2 (2m-1)!), the fundamental solution of d^{2m}/dx^{2m}
    const Real x("1e-6");
    BigInt f = 1;
    for (int i = 2; i <= 2 * m - 1; ++i) f *= i;
    const Real limit = ipow(x, 2 * m - 1) / (2 * big_to<Real>(f));
    CHECK(abs(gm_continuous(m, omega, x) / limit - 1) < Real(1e-9));
  }
  const OperatorParams<Real> params{3, Real(1), 10};
  const auto table = make_greens_table(params, 5);
  for (long long b = -5; b <= 5; ++b) CHECK(table(b) == gm_discrete(params, b));
}

TEST_CASE("continuous operator annihilates G away from the origin") {
  ScopedPrecision sp(1024);
  for (int m = 2; m <= 6; ++m) {
    const Real omega("0.9");
    auto g = [&](const Real& x) { return gm_continuous(m, omega, x); };
    const Real step("1e-20");
    for (const char* xs : {"0.4", "-1.7", "3.2"}) {
      const Real x(xs);
      const Real d2m = central_derivative(g, x, 2 * m, step);
      const Real d2m2 = central_derivative(g, x, 2 * m - 2, step);
      const Real d2m4 = m == 2 ? g(x) : central_derivative(g, x, 2 * m - 4, step);
      const Real w2 = omega * omega;
      const Real lhs = d2m + 2 * w2 * d2m2 + w2 * w2 * d2m4;
      const Real size = abs(d2m) + 2 * w2 * abs(d2m2) + w2 * w2 * abs(d2m4);
      CAPTURE(m);
      CAPTURE(xs);
      CHECK(abs(lhs) / size < Real(1e-30));
    }
  }
}

TEST_CASE("doubling the precision reproduces the table") {
  std::vector<Real> at256;
  {
    ScopedPrecision sp(256);
    const auto op = build_operator(OperatorParams<Real>{5, Real("0.5"), 20}, ctx_bits(256));
    for (long long b = 0; b <= 20; ++b) at256.push_back(dm_value(op, b));
  }
  ScopedPrecision sp(512);
  const auto op = build_operator(OperatorParams<Real>{5, Real("0.5"), 20}, ctx_bits(512));
  for (long long b = 0; b <= 20; ++b) {
    const Real v = dm_value(op, b);
    CHECK(abs(at256[static_cast<std::size_t>(b)] - v) / abs(v) <= Real(ctx_bits(256).eq_tol));
  }
}

TEST_CASE("per-step decay ratio overshoots rho at small beta for m >= 3") {
  ScopedPrecision sp(256);
  const auto op2 = build_operator(OperatorParams<Real>{2, Real(1), 10}, ctx_bits(256));
  CHECK(decay_step_violations(op2, 2, 50).empty());
  const auto op3 = build_operator(OperatorParams<Real>{3, Real(1), 10}, ctx_bits(256));
  CHECK_FALSE(decay_step_violations(op3, 2, 6).empty());
  CHECK(decay_step_violations(op3, 20, 50).empty());
}

TEST_CASE("operator assembly rejects degenerate roots") {
  ScopedPrecision sp(256);
  const auto ctx = ctx_bits(256);
  const auto cp = build_char_poly(OperatorParams<Real>{2, Real(1), 10}, ctx);
  RootPairing<Real> zero;
  zero.inside = {Real(0)};
  zero.outside = {Real(0)};
  CHECK_THROWS_WITH_AS(build_operator(cp, zero, ctx), "root at zero: amplitude undefined", DegenerateError);
  // stationary point of P in place of a root
  RootPairing<Real> flat;
  flat.inside = {-cp.poly[1] / (2 * cp.poly[2])};
  flat.outside = {1 / flat.inside[0]};
  CHECK_THROWS_WITH_AS(build_operator(cp, flat, ctx), "simple-roots violated: P'(lambda) = 0", DegenerateError);
  RootPairing<Real> none;
  CHECK_THROWS_AS(build_operator(cp, none, ctx), DegenerateError);
}
