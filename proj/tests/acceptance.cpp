// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "doplab/verify.hpp"
#include "golden_tables.hpp"

using namespace doplab;

namespace {

const PrecisionContext kCtx = PrecisionContext::with_bits(256);

struct Outcome {
  bool passed = true;
  std::string detail;
};

struct GridPoint {
  int m;
  const char* omega;
  int n;
};

std::vector<GridPoint> grid() {
  std::vector<GridPoint> g;
  for (int m = 2; m <= 6; ++m)
    for (const char* omega : {"0.25", "0.5", "1"})
      for (int n : {10, 20, 40}) g.push_back({m, omega, n});
  return g;
}

std::string sci(const Real& x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", static_cast<double>(x));
  return buf;
}

std::string where(const GridPoint& p) {
  return "m=" + std::to_string(p.m) + " omega=" + p.omega + " N=" + std::to_string(p.n);
}

OperatorParams<Real> params_of(const GridPoint& p) { return {p.m, Real(p.omega), p.n}; }

Outcome golden_tables() {
  Outcome o;
  Real worst(0);
  for (int m = 2; m <= 6; ++m)
    for (const char* omega : {"0.5", "1"})
      for (int n : {10, 40}) {
        const OperatorParams<Real> params{m, Real(omega), n};
        const auto cp = build_char_poly(params, kCtx);
        const auto g = golden::coefficients<Real>(m, params.h_omega());
        for (int s = 0; s <= cp.poly.degree(); ++s) {
          const Real ref = g[static_cast<std::size_t>(s)];
          const Real rel = abs(cp.poly[s] - ref) / abs(ref);
          worst = std::max(worst, rel);
          if (rel > Real(1e-30) && o.passed) {
            o.passed = false;
            o.detail = "first miss m=" + std::to_string(m) + " s=" + std::to_string(s) + "; ";
          }
        }
      }
  o.detail += "max rel " + sci(worst) + " (limit 1e-30)";
  return o;
}

Outcome euler_rows() {
  const std::vector<std::vector<long long>> rows{
      {1, 4, 1},
      {1, 26, 66, 26, 1},
      {1, 120, 1191, 2416, 1191, 120, 1},
      {1, 502, 14608, 88234, 156190, 88234, 14608, 502, 1},
      {1, 2036, 152637, 2203488, 9738114, 15724248, 9738114, 2203488, 152637, 2036, 1}};
  Outcome o;
  for (const auto& row : rows) {
    const unsigned k = static_cast<unsigned>(row.size() - 1);
    const std::vector<BigInt> want(row.begin(), row.end());
    if (ef_coefficients(k).coeffs != want) {
      o.passed = false;
      o.detail += "k=" + std::to_string(k) + " differs; ";
    }
  }
  if (o.passed) o.detail = "k = 2, 4, 6, 8, 10 exact";
  return o;
}

ConvolutionSpec acceptance_spec() { return ConvolutionSpec{10, 0, Real(1e-20)}; }

Outcome convolution() {
  Outcome o;
  Real worst(0), worst_tail(0);
  for (const auto& p : grid()) {
    const auto r = convolution_residual(build_operator(params_of(p), kCtx), acceptance_spec());
    worst = std::max(worst, r.max_residual);
    worst_tail = std::max(worst_tail, r.tail_bound);
    if ((!r.passed || r.tail_bound > Real(1e-21)) && o.passed) {
      o.passed = false;
      o.detail = "first miss " + where(p) + "; ";
    }
  }
  o.detail += "max residual " + sci(worst) + ", max tail " + sci(worst_tail) + " over 45 triples";
  return o;
}

Outcome annihilation() {
  Outcome o;
  Real worst(0);
  int checks = 0;
  bool m2_na = false;
  for (const auto& p : grid()) {
    const auto op = build_operator(params_of(p), kCtx);
    std::vector<NullFunction> fs{{NullFunction::Kind::Sin, 0},
                                 {NullFunction::Kind::Cos, 0},
                                 {NullFunction::Kind::XSin, 0},
                                 {NullFunction::Kind::XCos, 0}};
    for (int a = 0; a <= 2 * p.m - 5; ++a) fs.push_back(NullFunction::power(a));
    for (const auto& f : fs) {
      const auto r = annihilation_residual(op, f, acceptance_spec());
      ++checks;
      worst = std::max(worst, r.max_residual);
      if (!r.passed && o.passed) {
        o.passed = false;
        o.detail = "first miss " + where(p) + " " + f.name() + "; ";
      }
    }
    if (p.m == 2) {
      try {
        annihilation_residual(op, NullFunction::power(0), acceptance_spec());
      } catch (const ParameterError&) {
        m2_na = true;
      }
    }
  }
  // the suite must label the m = 2 power check as not applicable
  for (const auto& r : run_suite(OperatorParams<Real>{2, Real(1), 10}, kCtx, SuiteOptions{}))
    if (r.identity == "annihilation_power") m2_na = m2_na && !r.applicable;
  if (!m2_na) {
    o.passed = false;
    o.detail += "m=2 power check not reported as not applicable; ";
  }
  o.detail += std::to_string(checks) + " checks, max residual " + sci(worst) + "; m=2 powers not applicable";
  return o;
}

Outcome expansion_c2() {
  struct Spot {
    int m, s;
    long long num, den;
  };
  Outcome o;
  for (const Spot& sp : {Spot{3, 3, 18, 7}, Spot{4, 4, 470, 3}, Spot{5, 4, 273872, 11}, Spot{6, 9, 998, 13}}) {
    const auto terms = ratio_expansion_check(sp.m, sp.s, Real(1), kCtx);
    const Real want = Real(sp.num) / Real(sp.den);
    const Real rel = abs(terms.c2 - want) / abs(want);
    if (rel > Real(1e-2)) o.passed = false;
    o.detail += "(" + std::to_string(sp.m) + "," + std::to_string(sp.s) + ") rel " + sci(rel) + "; ";
  }
  o.detail += "limit 1e-2";
  return o;
}

Outcome expansion_c0() {
  Outcome o;
  Real worst(0);
  for (int m = 2; m <= 6; ++m) {
    const auto ef = ef_coefficients(static_cast<unsigned>(2 * m - 2));
    for (int s = 0; s <= 2 * m - 2; ++s) {
      const Real a = big_to<Real>(ef.coeffs[static_cast<std::size_t>(s)]);
      const Real rel = abs(ratio_expansion_check(m, s, Real(1), kCtx).c0 - a) / a;
      worst = std::max(worst, rel);
      if (rel > Real(1e-6)) o.passed = false;
    }
  }
  o.detail = "max rel " + sci(worst) + " (limit 1e-6)";
  return o;
}

Outcome lemma_suite() {
  Outcome o;
  Real palin(0), deriv(0);
  for (const auto& p : grid()) {
    const auto cp = build_char_poly(params_of(p), kCtx);
    const Real r1 = palindromy_residual(cp);
    const Real r3 = derivative_reflection_residual(cp, solve_palindromic(cp.poly, kCtx));
    palin = std::max(palin, r1);
    deriv = std::max(deriv, r3);
    if ((r1 > Real(1e-25) || r3 > Real(1e-25)) && o.passed) {
      o.passed = false;
      o.detail = "first miss " + where(p) + "; ";
    }
  }
  // closed forms against brute-force sums, 10 significant digits
  Real series(0);
  const Real h("0.1"), omega("1");
  for (const char* p : {"0.3", "2.7", "4.1"}) {
    for (auto which : {LatticeSeries::S1, LatticeSeries::S2, LatticeSeries::S3}) {
      const auto r = lattice_series_check(which, 0, Real(p), h, omega, kCtx, 20000, 1e-10);
      series = std::max(series, r.max_residual);
      if (!r.passed) o.passed = false;
    }
    for (int k = 1; k <= 4; ++k) {
      const auto r = lattice_series_check(LatticeSeries::FG, k, Real(p), h, omega, kCtx, 20000, 1e-10);
      series = std::max(series, r.max_residual);
      if (!r.passed) o.passed = false;
    }
  }
  o.detail += "palindromy " + sci(palin) + ", derivative relation " + sci(deriv) + " (limit 1e-25); series rel " +
              sci(series) + " (limit 1e-10) at p = 0.3, 2.7, 4.1";
  return o;
}

Outcome decay_and_symmetry() {
  Outcome o;
  Real worst_fit(0);
  for (const auto& p : grid()) {
    const auto op = build_operator(params_of(p), kCtx);
    for (long long b = 1; b <= 200; ++b)
      if (dm_value(op, b) != dm_value(op, -b)) {
        o.passed = false;
        o.detail += "evenness fails at " + where(p) + "; ";
        break;
      }
    const bool single = p.m == 2;
    const auto fit = single ? decay_fit(op, 10, 50) : decay_fit(op, 50, 150);
    const Real gap = abs(fit.slope - fit.log_rho);
    worst_fit = std::max(worst_fit, gap);
    // a single root must be matched to 1e-6, several roots to 1e-2 and never exceeded
    const bool ok = single ? gap <= Real(1e-6) : (gap <= Real(1e-2) && fit.slope <= fit.log_rho + Real(1e-2));
    if (!ok) {
      o.passed = false;
      o.detail += "decay fit off at " + where(p) + "; ";
    }
    if (!decay_step_violations(op, 20, 50).empty()) {
      o.passed = false;
      o.detail += "step ratio exceeds rho at " + where(p) + "; ";
    }
  }
  o.detail += "evenness exact on |b| <= 200; max |slope - log rho| " + sci(worst_fit);
  return o;
}

Outcome negative_control() {
  Outcome o;
  SuiteOptions perturbed;
  perturbed.perturb_lead = Real("1e-6");
  perturbed.include_lattice_series = false;
  perturbed.tolerance = Real(1e-20);
  Real smallest(-1);
  for (int m = 2; m <= 6; ++m) {
    for (const auto& r : run_suite(OperatorParams<Real>{m, Real(1), 10}, kCtx, perturbed)) {
      if (r.identity != "convolution") continue;
      if (r.passed || r.max_residual <= Real(1e-8)) o.passed = false;
      smallest = smallest < 0 ? r.max_residual : std::min(smallest, r.max_residual);
    }
  }
  if (smallest < 0) o.passed = false;
  o.detail = "1e-6 on p_lead, omega=1 N=10, m=2..6: smallest convolution residual " + sci(smallest) +
             " (must exceed 1e-8)";
  return o;
}

}  // namespace

int main() {
  ScopedPrecision precision(kCtx);
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 golden coefficient tables", golden_tables},
      {"2 Euler-Frobenius rows", euler_rows},
      {"3 convolution identity", convolution},
      {"4 annihilation", annihilation},
      {"5 expansion quadratic coefficients", expansion_c2},
      {"6 expansion constant term", expansion_c0},
      {"7 palindromy, derivative relation, lattice series", lemma_suite},
      {"8 decay and symmetry", decay_and_symmetry},
      {"9 negative control", negative_control},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s  %-48s %7.2fs  %s\n", o.passed ? "PASS" : "FAIL", name.c_str(), secs, o.detail.c_str());
    failed += !o.passed;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
