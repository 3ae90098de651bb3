#include "doplab/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <sstream>

#include "doplab/errors.hpp"
#include "doplab/euler_frobenius.hpp"

namespace doplab {

namespace {

using Complex = std::complex<Real>;

Real pi() { return boost::multiprecision::acos(Real(-1)); }

Real magnitude(const Complex& z) { return sqrt(z.real() * z.real() + z.imag() * z.imag()); }

// Upper bound on |f(h n)| for |n'| ≤ n, with its polynomial degree in n.
struct Growth {
  std::function<Real(const Real&)> at;
  int degree = 0;
};

Growth green_growth(const OperatorParams<Real>& params) {
  const int m = params.m;
  const Real t = params.h_omega();
  const Real denom = 4 * ipow(params.omega, 2 * m - 1);
  Growth g;
  g.degree = std::max(1, 2 * m - 5);
  g.at = [m, t, denom](const Real& n) {
    const Real x = t * n;
    Real sum = Real(2 * m - 3) + x;
    Real factorial(1);
    for (int k = 1; k <= m - 2; ++k) {
      if (k > 1) factorial *= Real((2 * k - 2) * (2 * k - 1));
      sum += 2 * Real(m - k - 1) * ipow(x, 2 * k - 1) / factorial;
    }
    return sum / denom;
  };
  return g;
}

Growth null_growth(const OperatorParams<Real>& params, NullFunction f) {
  Growth g;
  const Real t = params.h_omega();
  const Real h = params.h();
  switch (f.kind) {
    case NullFunction::Kind::Sin:
    case NullFunction::Kind::Cos:
      g.degree = 0;
      g.at = [](const Real&) { return Real(1); };
      break;
    case NullFunction::Kind::XSin:
    case NullFunction::Kind::XCos:
      g.degree = 1;
      g.at = [t](const Real& n) { return t * n; };
      break;
    case NullFunction::Kind::Power:
      g.degree = f.alpha;
      g.at = [h, a = f.alpha](const Real& n) { return ipow(Real(h * n), a); };
      break;
  }
  return g;
}

Real null_value(const OperatorParams<Real>& params, NullFunction f, long long n) {
  const Real x = params.h_omega() * Real(n);
  switch (f.kind) {
    case NullFunction::Kind::Sin: return sin(x);
    case NullFunction::Kind::Cos: return cos(x);
    case NullFunction::Kind::XSin: return x * sin(x);
    case NullFunction::Kind::XCos: return x * cos(x);
    case NullFunction::Kind::Power: return ipow(Real(params.h() * Real(n)), f.alpha);
  }
  return Real(0);
}

// 2 K F(n0) ρ^Γ / (1 - q), n0 = B + Γ + 1, q = ρ ((n0+1)/n0)^deg; infinite when q ≥ 1.
Real tail_bound_at(const DiscreteOperator<Real>& op, const Growth& g, long long beta_max, long long gamma) {
  Real amp_sum(0);
  for (const Real& a : op.amps) amp_sum += abs(a);
  const Real k = abs(op.scale) * amp_sum;
  const Real rho = op.rho();
  const Real n0 = Real(beta_max + gamma + 1);
  const Real q = rho * ipow(Real((n0 + 1) / n0), g.degree);
  if (q >= 1) return std::numeric_limits<Real>::infinity();
  return 2 * k * g.at(n0) * ipow(rho, gamma) / (1 - q);
}

void check_spec(const ConvolutionSpec& spec) {
  if (spec.beta_max < 0) throw ParameterError("beta_max must be >= 0");
  if (spec.gamma_max < 0) throw ParameterError("gamma_max must be >= 0");
  if (!(spec.tolerance > 0)) throw ParameterError("tolerance must be > 0");
}

Truncation truncation_for(const DiscreteOperator<Real>& op, const Growth& g, const ConvolutionSpec& spec) {
  check_spec(spec);
  const Real target = spec.tolerance / 10;
  constexpr long long kLimit = 1000000;
  auto minimal = [&]() {
    for (long long gamma = std::max<long long>(2, spec.beta_max); gamma <= kLimit; ++gamma) {
      Real b = tail_bound_at(op, g, spec.beta_max, gamma);
      if (b <= target) return Truncation{gamma, b};
    }
    throw DegenerateError("no truncation up to 10^6 terms meets the tail bound");
  };
  if (spec.gamma_max == 0) return minimal();
  Real b = tail_bound_at(op, g, spec.beta_max, spec.gamma_max);
  if (b <= target && spec.gamma_max >= 1) return Truncation{spec.gamma_max, b};
  const Truncation need = minimal();
  std::ostringstream os;
  os << "tail bound unreachable at gamma " << spec.gamma_max << "; minimal feasible gamma is " << need.gamma;
  throw ParameterError(os.str());
}

// Σ_{|γ|≤Γ} D(|γ|) f(β-γ) for |β| ≤ B with f given on [-(B+Γ), B+Γ].
template <typename F>
VerificationReport convolve(const DiscreteOperator<Real>& op, const ConvolutionSpec& spec, const Truncation& tr,
                            F&& f_at, bool subtract_delta) {
  const long long gamma = tr.gamma;
  const long long bound = spec.beta_max + gamma;
  std::vector<Real> d;
  d.reserve(static_cast<std::size_t>(gamma + 1));
  for (long long g = 0; g <= gamma; ++g) d.push_back(dm_value(op, g));
  std::vector<Real> f;
  f.reserve(static_cast<std::size_t>(2 * bound + 1));
  for (long long n = -bound; n <= bound; ++n) f.push_back(f_at(n));

  VerificationReport report;
  report.params = op.params;
  report.tolerance = spec.tolerance;
  report.truncation_bound = gamma;
  report.tail_bound = tr.tail_bound;
  for (long long beta = -spec.beta_max; beta <= spec.beta_max; ++beta) {
    Real sum(0);
    for (long long g = -gamma; g <= gamma; ++g)
      sum += d[static_cast<std::size_t>(g < 0 ? -g : g)] * f[static_cast<std::size_t>(beta - g + bound)];
    if (subtract_delta && beta == 0) sum -= 1;
    report.residuals.push_back({beta, abs(sum)});
  }
  report.finalize();
  return report;
}

Real sum_tail(int power, long long terms) {
  // Σ_{β>Γ} β^{-n} ≈ Γ^{1-n}/(n-1) - Γ^{-n}/2 + n Γ^{-n-1}/12
  const Real g = Real(terms);
  return ipow(g, 1 - power) / Real(power - 1) - ipow(g, -power) / 2 + Real(power) * ipow(g, -power - 1) / 12;
}

Real lattice_distance(const Real& x) { return abs(x - boost::multiprecision::round(x)); }

std::string report_params_note(const std::string& note, const std::string& extra) {
  if (note.empty()) return extra;
  return note + "; " + extra;
}

}  // namespace

void VerificationReport::finalize() {
  max_residual = Real(0);
  for (const auto& e : residuals) max_residual = std::max<Real>(max_residual, e.residual);
  passed = applicable && max_residual <= tolerance;
}

std::string NullFunction::name() const {
  switch (kind) {
    case Kind::Sin: return "sin";
    case Kind::Cos: return "cos";
    case Kind::XSin: return "xsin";
    case Kind::XCos: return "xcos";
    case Kind::Power: return "power_" + std::to_string(alpha);
  }
  return "?";
}

Truncation choose_truncation(const DiscreteOperator<Real>& op, const std::optional<NullFunction>& f,
                             const ConvolutionSpec& spec) {
  return truncation_for(op, f ? null_growth(op.params, *f) : green_growth(op.params), spec);
}

VerificationReport convolution_residual(const DiscreteOperator<Real>& op, const ConvolutionSpec& spec) {
  const Truncation tr = choose_truncation(op, std::nullopt, spec);
  auto report = convolve(op, spec, tr, [&](long long n) { return gm_discrete(op.params, n); }, true);
  report.identity = "convolution";
  return report;
}

VerificationReport annihilation_residual(const DiscreteOperator<Real>& op, NullFunction f, const ConvolutionSpec& spec) {
  if (f.kind == NullFunction::Kind::Power && (f.alpha < 0 || f.alpha > 2 * op.params.m - 5))
    throw ParameterError("power annihilation needs 0 <= alpha <= 2m-5");
  const Truncation tr = choose_truncation(op, f, spec);
  auto report = convolve(op, spec, tr, [&](long long n) { return null_value(op.params, f, n); }, false);
  report.identity = "annihilation_" + f.name();
  return report;
}

VerificationReport lattice_series_check(LatticeSeries which, int k, const Real& p, const Real& h, const Real& omega,
                                        const PrecisionContext& ctx, long long terms, double tolerance) {
  if (terms < 10) throw ParameterError("lattice series needs at least 10 terms");
  if (which == LatticeSeries::FG && k < 1) throw ParameterError("FG order k must be >= 1");
  const Real two_pi = 2 * pi();
  const Real shift = h * omega / two_pi;
  const Real a = h * p + shift;  // h(p + ω/2π)
  const Real b = h * p - shift;  // h(p - ω/2π)
  const Real margin = Real(ctx.unit_circle_tol);
  const bool near_pole = [&] {
    switch (which) {
      case LatticeSeries::S1: return lattice_distance(a) <= margin || lattice_distance(b) <= margin;
      case LatticeSeries::S2: return lattice_distance(a) <= margin;
      case LatticeSeries::S3: return lattice_distance(b) <= margin;
      case LatticeSeries::FG: return lattice_distance(h * p) <= margin;
    }
    return false;
  }();
  if (near_pole) throw DegenerateError("pole on lattice");

  const Real t = h * omega;
  const Complex lam(cos(two_pi * p * h), sin(two_pi * p * h));
  const Complex i_unit(Real(0), Real(1));
  const Real four_pi2 = two_pi * two_pi;

  Real direct(0);
  Real tail(0);
  Complex closed;
  std::string label;
  switch (which) {
    case LatticeSeries::S1: {
      label = "S1";
      for (long long beta = -terms; beta <= terms; ++beta) direct += 1 / ((Real(beta) - a) * (Real(beta) - b));
      tail = 2 * sum_tail(2, terms);
      closed = -four_pi2 * lam * sin(t) / (t * (lam * lam - Real(2) * lam * cos(t) + Real(1)));
      break;
    }
    case LatticeSeries::S2:
    case LatticeSeries::S3: {
      const bool plus = which == LatticeSeries::S2;
      label = plus ? "S2" : "S3";
      const Real c = plus ? a : b;
      for (long long beta = -terms; beta <= terms; ++beta) {
        const Real d = Real(beta) - c;
        direct += 1 / (d * d);
      }
      tail = 2 * sum_tail(2, terms);
      const Complex im_part = (plus ? Real(1) : Real(-1)) * i_unit * (lam * lam - Real(1)) * sin(t);
      closed = -four_pi2 * lam / ((lam * lam + Real(1)) * cos(t) - Real(2) * lam + im_part);
      break;
    }
    case LatticeSeries::FG: {
      label = "FG(" + std::to_string(k) + ")";
      for (long long beta = -terms; beta <= terms; ++beta) direct += ipow(Real(p - Real(beta) / h), -2 * k);
      tail = 2 * ipow(h, 2 * k) * sum_tail(2 * k, terms);
      const Real pref = ((k % 2 == 0) ? Real(1) : Real(-1)) / ipow(two_pi, 2 * k);
      direct *= pref;
      tail *= pref;
      const Poly<Real> ef = ef_coefficients(static_cast<unsigned>(2 * k - 2)).as_poly<Real>();
      Real factorial(1);
      for (int j = 2; j <= 2 * k - 1; ++j) factorial *= j;
      Complex one_minus = Complex(Real(1)) - lam;
      Complex denom = Complex(factorial);
      for (int j = 0; j < 2 * k; ++j) denom *= one_minus;
      closed = Complex(ipow(h, 2 * k)) * lam * ef(lam) / denom;
      break;
    }
  }
  direct += tail;

  VerificationReport report;
  report.identity = "lattice_series_" + label;
  report.params.omega = omega;
  report.params.N = 0;
  report.params.m = 0;
  report.tolerance = Real(tolerance);
  report.truncation_bound = terms;
  report.tail_bound = abs(tail);
  const Real size = magnitude(closed);
  report.residuals.push_back({0, magnitude(Complex(direct) - closed) / size});
  std::ostringstream os;
  os << "p=" << to_decimal(p) << "; closed forms from the residue evaluation (S1 denominator carries +1, S2/S3 are"
     << " conjugates)";
  report.notes = os.str();
  report.finalize();
  return report;
}

Real conjugate_pair_imaginary(const Real& p, const Real& h, const Real& omega) {
  const Real two_pi = 2 * pi();
  const Real t = h * omega;
  const Complex lam(cos(two_pi * p * h), sin(two_pi * p * h));
  const Complex i_unit(Real(0), Real(1));
  const Real four_pi2 = two_pi * two_pi;
  const Complex base = (lam * lam + Real(1)) * cos(t) - Real(2) * lam;
  const Complex im_part = i_unit * (lam * lam - Real(1)) * sin(t);
  const Complex s2 = -four_pi2 * lam / (base + im_part);
  const Complex s3 = -four_pi2 * lam / (base - im_part);
  const Complex sum = s2 + s3;
  return abs(sum.imag()) / magnitude(sum);
}

DecayFit decay_fit(const DiscreteOperator<Real>& op, long long lo, long long hi) {
  if (lo < 2 || hi > 200 || lo >= hi) throw ParameterError("decay fit range must satisfy 2 <= lo < hi <= 200");
  DecayFit fit;
  std::vector<Real> xs, ys;
  for (long long b = lo; b <= hi; ++b) {
    const Real v = dm_value(op, b);
    if (v == 0) {
      fit.skipped.push_back(b);
      continue;
    }
    xs.push_back(Real(b));
    ys.push_back(log(abs(v)));
  }
  if (xs.size() < 2) throw DegenerateError("decay fit needs at least two nonzero values");
  const Real n = Real(static_cast<long long>(xs.size()));
  Real sx(0), sy(0);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
  }
  const Real mx = sx / n, my = sy / n;
  Real sxy(0), sxx(0);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  fit.slope = sxy / sxx;
  fit.log_rho = log(op.rho());
  return fit;
}

std::vector<long long> decay_step_violations(const DiscreteOperator<Real>& op, long long lo, long long hi,
                                             double slack) {
  std::vector<long long> bad;
  const Real rho = op.rho();
  Real current = abs(dm_value(op, lo));
  for (long long b = lo; b <= hi; ++b) {
    const Real next = abs(dm_value(op, b + 1));
    if (next > rho * current * (1 + Real(slack))) bad.push_back(b);
    current = next;
  }
  return bad;
}

Real amplitude_reflection_residual(const CharPoly<Real>& cp, const RootPairing<Real>& roots) {
  const int m = cp.params.m;
  const Real c = cos(cp.params.h_omega());
  const Poly<Real> dp = derivative(cp.poly);
  auto amplitude = [&](const Real& lam) {
    const Real quad = lam * lam + 1 - 2 * lam * c;
    return ipow(Real(1 - lam), 2 * m - 4) * quad * quad * cp.p_lead / (lam * dp(lam));
  };
  Real worst(0);
  for (std::size_t k = 0; k < roots.count(); ++k) {
    const Real l1 = roots.inside[k];
    const Real expected = -amplitude(l1) / (l1 * l1);
    worst = std::max<Real>(worst, abs(amplitude(roots.outside[k]) - expected) / abs(expected));
  }
  return worst;
}

std::vector<VerificationReport> run_suite(const OperatorParams<Real>& params, const PrecisionContext& ctx,
                                          const SuiteOptions& options) {
  const Real tol = options.tolerance ? *options.tolerance : Real(ctx.eq_tol);
  const int m = params.m;
  std::vector<VerificationReport> out;
  auto single = [&](std::string identity, Real residual, Real tolerance, std::string notes = {}) {
    VerificationReport r;
    r.identity = std::move(identity);
    r.params = params;
    r.tolerance = tolerance;
    r.residuals.push_back({0, std::move(residual)});
    r.notes = std::move(notes);
    r.finalize();
    out.push_back(std::move(r));
  };

  CharPoly<Real> cp = build_char_poly(params, ctx);
  const RootPairing<Real> roots = solve_palindromic(cp.poly, ctx);

  single("palindromy", palindromy_residual(cp), tol);
  single("leading_coefficient", abs(leading_coeff_closed_form(params) - cp.p_lead) / abs(cp.p_lead), tol);
  {
    // backward error |p(λ)| / Σ|p_s||λ|^s, meaningful for the large outer roots too
    auto backward = [&](const Real& x) {
      Real size(0);
      for (int s = cp.poly.degree(); s >= 0; --s) size = size * abs(x) + abs(cp.poly[s]);
      return abs(cp.poly(x)) / size;
    };
    Real worst(0);
    for (std::size_t k = 0; k < roots.count(); ++k) {
      worst = std::max<Real>(worst, abs(roots.inside[k] * roots.outside[k] - 1));
      worst = std::max<Real>(worst, backward(roots.inside[k]));
      worst = std::max<Real>(worst, backward(roots.outside[k]));
    }
    single("root_pairing", worst, tol);
  }
  single("derivative_reflection", derivative_reflection_residual(cp, roots), tol);
  single("amplitude_reflection", amplitude_reflection_residual(cp, roots), tol);

  if (options.perturb_lead != 0) cp.p_lead *= 1 + options.perturb_lead;
  const DiscreteOperator<Real> op = build_operator(cp, roots, ctx);

  ConvolutionSpec spec{options.beta_max, options.gamma_max, tol};
  out.push_back(convolution_residual(op, spec));
  if (options.perturb_lead != 0)
    out.back().notes = report_params_note(out.back().notes, "p_lead perturbed by " + to_decimal(options.perturb_lead));

  for (auto kind : {NullFunction::Kind::Sin, NullFunction::Kind::Cos, NullFunction::Kind::XSin,
                    NullFunction::Kind::XCos})
    out.push_back(annihilation_residual(op, NullFunction{kind, 0}, spec));
  if (2 * m - 5 < 0) {
    VerificationReport r;
    r.identity = "annihilation_power";
    r.params = params;
    r.tolerance = tol;
    r.applicable = false;
    r.notes = "not applicable: power range 0..2m-5 is empty for m = 2";
    r.finalize();
    out.push_back(std::move(r));
  } else {
    for (int a = 0; a <= 2 * m - 5; ++a) out.push_back(annihilation_residual(op, NullFunction::power(a), spec));
  }

  {
    Real worst(0);
    for (long long b = 1; b <= 50; ++b) worst = std::max<Real>(worst, abs(dm_value(op, b) - dm_value(op, -b)));
    single("evenness", worst, Real(0), "exact equality D(b) == D(-b) for 1 <= b <= 50");
  }
  {
    // |D(β)| ≤ K ρ^|β| with K = |scale| Σ|A_k| / ρ
    Real amp_sum(0);
    for (const Real& a : op.amps) amp_sum += abs(a);
    const Real rho = op.rho();
    const Real k = abs(op.scale) * amp_sum / rho;
    Real worst(0);
    for (long long b = 2; b <= 50; ++b) {
      const Real excess = abs(dm_value(op, b)) / (k * ipow(rho, b)) - 1;
      worst = std::max<Real>(worst, excess);
    }
    single("decay_envelope", worst, tol, "max over 2 <= b <= 50 of |D(b)| / (K rho^b) - 1");
  }
  {
    const long long lo = m == 2 ? 10 : 50;
    const long long hi = m == 2 ? 50 : 150;
    const DecayFit fit = decay_fit(op, lo, hi);
    std::ostringstream os;
    os << "fit over " << lo << " <= b <= " << hi << "; slope " << to_decimal(fit.slope) << ", log rho "
       << to_decimal(fit.log_rho);
    if (!fit.skipped.empty()) os << "; skipped " << fit.skipped.size() << " zero values";
    single("decay_fit", abs(fit.slope - fit.log_rho), Real(1e-2), os.str());
  }
  {
    const auto bad = decay_step_violations(op, 20, 50, 1e-3);
    VerificationReport r;
    r.identity = "decay_step";
    r.params = params;
    r.tolerance = Real(0);
    for (long long b : bad) r.residuals.push_back({b, Real(1)});
    r.notes = "|D(b+1)| <= rho |D(b)| (1 + 1e-3) for 20 <= b <= 50; residual counts violations";
    r.finalize();
    out.push_back(std::move(r));
  }

  if (m <= 8) {
    VerificationReport r;
    r.identity = "expansion_leading_terms";
    r.params = params;
    r.tolerance = Real(1e-6);
    const EFPoly ef = ef_coefficients(static_cast<unsigned>(2 * m - 2));
    std::ostringstream os;
    os << "c2:";
    for (int s = 0; s <= 2 * m - 2; ++s) {
      const auto terms = ratio_expansion_check(m, s, params.omega, ctx);
      const Real a = big_to<Real>(ef.coeffs[static_cast<std::size_t>(s)]);
      r.residuals.push_back({s, abs(terms.c0 - a) / a});
      os << ' ' << static_cast<double>(terms.c2);
    }
    r.notes = os.str();
    r.finalize();
    out.push_back(std::move(r));
  }

  if (options.include_lattice_series) {
    const Real h = params.h();
    const std::array<Real, 3> fractions{Real(21) / 100, Real(37) / 100, Real(43) / 100};
    auto series_report = [&](LatticeSeries which, int k) {
      VerificationReport merged;
      long long idx = 0;
      for (const Real& f : fractions) {
        const Real p = f * Real(params.N);
        VerificationReport r = lattice_series_check(which, k, p, h, params.omega, ctx);
        if (merged.identity.empty()) {
          merged = r;
          merged.residuals.clear();
          merged.params = params;
        }
        merged.residuals.push_back({idx++, r.residuals.front().residual});
        merged.tail_bound = std::max<Real>(merged.tail_bound, r.tail_bound);
      }
      merged.notes = "hp in {0.21, 0.37, 0.43}; closed forms from the residue evaluation (S1 denominator carries +1,"
                     " S2/S3 are conjugates)";
      merged.finalize();
      out.push_back(std::move(merged));
    };
    series_report(LatticeSeries::S1, 0);
    series_report(LatticeSeries::S2, 0);
    series_report(LatticeSeries::S3, 0);
    for (int k = 1; k <= std::max(1, m - 2); ++k) series_report(LatticeSeries::FG, k);
    {
      VerificationReport r;
      r.identity = "lattice_series_S2_plus_S3_real";
      r.params = params;
      r.tolerance = tol;
      long long idx = 0;
      for (const Real& f : fractions)
        r.residuals.push_back({idx++, conjugate_pair_imaginary(f * Real(params.N), h, params.omega)});
      r.finalize();
      out.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace doplab
