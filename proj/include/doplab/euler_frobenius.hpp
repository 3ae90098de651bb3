#pragma once

#include <optional>
#include <string>
#include <type_traits>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "doplab/errors.hpp"
#include "doplab/palindromic.hpp"
#include "doplab/poly.hpp"
#include "doplab/precision.hpp"

namespace doplab {

using BigInt = boost::multiprecision::cpp_int;

// cpp_int::convert_to<mpfr_float> drops low bits in Boost 1.74 (66 -> 64), so
// exact integers travel through their decimal string.
template <typename Scalar>
Scalar big_to(const BigInt& v) {
  if constexpr (std::is_floating_point_v<Scalar>)
    return static_cast<Scalar>(std::stold(v.str()));
  else
    return Scalar(v.str());
}

/// Euler–Frobenius polynomial E_k with exact integer coefficients, lowest
/// degree first.
struct EFPoly {
  unsigned k = 0;
  std::vector<BigInt> coeffs;

  template <typename Scalar>
  Poly<Scalar> as_poly() const {
    typename Poly<Scalar>::Coeffs c(coeffs.size());
    for (std::size_t s = 0; s < coeffs.size(); ++s)
      c[static_cast<Eigen::Index>(s)] = big_to<Scalar>(coeffs[s]);
    return Poly<Scalar>(std::move(c));
  }

  friend bool operator==(const EFPoly&, const EFPoly&) = default;
};

/// a_s = Σ_{j=0}^{s} (-1)^j C(k+2, j) (s+1-j)^{k+1}
EFPoly ef_coefficients(unsigned k);

/// Second route: E_k(x) = (1-x)^{k+2}/x · (x d/dx)^k [x/(1-x)^2], carried out
/// on exact integer polynomials with the denominator tracked as a power of
/// (1-x).
EFPoly ef_coefficients_by_operator(unsigned k);

/// Roots of E_k: real, negative, simple, reciprocal in pairs. Odd k carries
/// the self-reciprocal root -1 separately.
template <typename Scalar>
struct EFRoots {
  RootPairing<Scalar> pairs;
  std::optional<Scalar> minus_one;

  /// All k roots ascending.
  std::vector<Scalar> all() const {
    std::vector<Scalar> r = pairs.all();
    if (minus_one) r.push_back(*minus_one);
    std::sort(r.begin(), r.end());
    return r;
  }
};

template <typename Scalar>
EFRoots<Scalar> ef_roots(unsigned k, const PrecisionContext& ctx) {
  if (k == 0) throw ParameterError("E_0 has no roots; k must be >= 1");
  Poly<Scalar> p = ef_coefficients(k).as_poly<Scalar>();
  EFRoots<Scalar> roots;
  if (k % 2 == 1) {
    // synthetic division by (x + 1)
    typename Poly<Scalar>::Coeffs q(p.degree());
    Scalar carry(0);
    for (int s = p.degree(); s >= 1; --s) {
      carry = p[s] - carry;
      q[s - 1] = carry;
    }
    roots.minus_one = Scalar(-1);
    if (k == 1) return roots;
    p = Poly<Scalar>(std::move(q));
  }
  roots.pairs = solve_palindromic(p, ctx);
  std::vector<Scalar> all = roots.all();
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (!(all[i] < 0)) throw DegenerateError("Euler-Frobenius root is not negative");
    if (i > 0 && !(all[i - 1] < all[i])) throw DegenerateError("Euler-Frobenius roots are not simple");
  }
  return roots;
}

}  // namespace doplab
