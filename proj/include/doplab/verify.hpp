#pragma once

#include <optional>
#include <string>
#include <vector>

#include "doplab/char_poly.hpp"
#include "doplab/discrete_operator.hpp"
#include "doplab/palindromic.hpp"
#include "doplab/precision.hpp"

namespace doplab {

struct ResidualEntry {
  long long index = 0;
  Real residual;
};

/// Outcome of one identity check. `passed` is `applicable && max_residual <=
/// tolerance`.
struct VerificationReport {
  std::string identity;
  OperatorParams<Real> params;
  std::vector<ResidualEntry> residuals;
  Real max_residual{0};
  Real tolerance{0};
  long long truncation_bound = 0;
  Real tail_bound{0};
  bool applicable = true;
  bool passed = false;
  std::string notes;

  /// Recomputes max_residual and passed from residuals and tolerance.
  void finalize();
};

/// Convolution sums are checked for |β| ≤ beta_max with terms |γ| ≤ Γ.
/// gamma_max = 0 picks the smallest Γ whose analytic tail bound is at most
/// tolerance / 10.
struct ConvolutionSpec {
  long long beta_max = 10;
  long long gamma_max = 0;
  Real tolerance;
};

/// Null functions of the discrete operator under convolution.
struct NullFunction {
  enum class Kind { Sin, Cos, XSin, XCos, Power };
  Kind kind = Kind::Sin;
  int alpha = 0;

  static NullFunction power(int a) { return {Kind::Power, a}; }
  std::string name() const;
};

/// Truncation Γ and the bound on the discarded tail
/// 2 Σ_{γ>Γ} |D_m(hγ)| · F(B + γ), where F bounds the test function's growth.
struct Truncation {
  long long gamma = 0;
  Real tail_bound;
};

/// |Σ_{|γ|≤Γ} D_m(hγ) G_m(h(β-γ)) - δ(β)| for |β| ≤ B.
VerificationReport convolution_residual(const DiscreteOperator<Real>& op, const ConvolutionSpec& spec);

/// |Σ_{|γ|≤Γ} D_m(hγ) f(h(β-γ))| for |β| ≤ B. Power(α) requires
/// 0 ≤ α ≤ 2m-5 and throws ParameterError otherwise.
VerificationReport annihilation_residual(const DiscreteOperator<Real>& op, NullFunction f, const ConvolutionSpec& spec);

/// Truncation chosen for the Green's function (f = nullopt) or a null
/// function. Throws ParameterError when spec.gamma_max is set but too small,
/// naming the minimal feasible Γ.
Truncation choose_truncation(const DiscreteOperator<Real>& op, const std::optional<NullFunction>& f,
                             const ConvolutionSpec& spec);

/// Lattice sums over β ∈ ℤ that enter the Fourier symbol of the operator.
enum class LatticeSeries { S1, S2, S3, FG };

/// Direct summation over |β| ≤ terms (plus an Euler–Maclaurin tail estimate)
/// compared with the closed forms in λ = exp(2πiph). Residual is relative.
/// `k` selects the order of FG. Throws DegenerateError("pole on lattice") when
/// a pole sits within unit_circle_tol of the summation lattice.
VerificationReport lattice_series_check(LatticeSeries which, int k, const Real& p, const Real& h, const Real& omega,
                                        const PrecisionContext& ctx, long long terms = 20000,
                                        double tolerance = 1e-10);

/// |Im(S2 + S3)| / |S2 + S3| of the closed forms: the conjugate pair must sum
/// to a real number.
Real conjugate_pair_imaginary(const Real& p, const Real& h, const Real& omega);

struct DecayFit {
  Real slope;       // least-squares slope of log|D_m(hβ)| against β
  Real log_rho;     // log max|λ_k|
  std::vector<long long> skipped;
};

/// Requires 2 ≤ lo < hi ≤ 200.
DecayFit decay_fit(const DiscreteOperator<Real>& op, long long lo, long long hi);

/// Indices β in [lo, hi] with |D(β+1)| > ρ |D(β)| (1 + slack).
std::vector<long long> decay_step_violations(const DiscreteOperator<Real>& op, long long lo, long long hi,
                                             double slack = 1e-3);

/// Relation between the amplitudes at reciprocal roots, A_{2,k} = -A_{1,k}/λ_{1,k}²,
/// with both sides evaluated from their defining formula. Relative residual.
Real amplitude_reflection_residual(const CharPoly<Real>& cp, const RootPairing<Real>& roots);

/// Full suite for one parameter triple, in a fixed order. `perturb_lead`
/// multiplies p_{2m-2} by (1 + perturb_lead) when assembling the operator.
struct SuiteOptions {
  long long beta_max = 10;
  long long gamma_max = 0;
  std::optional<Real> tolerance;  // default: ctx.eq_tol
  Real perturb_lead{0};
  bool include_lattice_series = true;
};

std::vector<VerificationReport> run_suite(const OperatorParams<Real>& params, const PrecisionContext& ctx,
                                          const SuiteOptions& options);

}  // namespace doplab
