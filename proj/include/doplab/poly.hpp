#pragma once

#include <algorithm>
#include <initializer_list>
#include <utility>

#include <Eigen/Core>

namespace doplab {

/// Dense real polynomial; coefficient s multiplies x^s.
///
/// Trailing exact zeros are trimmed on construction, so `degree()` is the
/// index of the last nonzero coefficient. The zero polynomial is stored as a
/// single zero coefficient with degree 0.
template <typename Scalar>
class Poly {
 public:
  using Coeffs = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Poly() : coeffs_(Coeffs::Zero(1)) {}

  explicit Poly(Coeffs coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.size() == 0) coeffs_ = Coeffs::Zero(1);
    trim();
  }

  Poly(std::initializer_list<Scalar> coeffs) : coeffs_(static_cast<Eigen::Index>(coeffs.size())) {
    Eigen::Index s = 0;
    for (const auto& c : coeffs) coeffs_[s++] = c;
    if (coeffs_.size() == 0) coeffs_ = Coeffs::Zero(1);
    trim();
  }

  /// c·x^power
  static Poly monomial(int power, const Scalar& c = Scalar(1)) {
    Coeffs v = Coeffs::Zero(power + 1);
    v[power] = c;
    return Poly(std::move(v));
  }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const Coeffs& coeffs() const { return coeffs_; }
  const Scalar& operator[](int s) const { return coeffs_[s]; }
  const Scalar& leading() const { return coeffs_[coeffs_.size() - 1]; }
  bool is_zero() const { return degree() == 0 && coeffs_[0] == Scalar(0); }

  /// Horner evaluation.
  template <typename Arg>
  auto operator()(const Arg& x) const {
    using Result = decltype(Arg(coeffs_[0]) * x);
    Result acc = Result(coeffs_[coeffs_.size() - 1]);
    for (Eigen::Index s = coeffs_.size() - 2; s >= 0; --s) acc = acc * x + Result(coeffs_[s]);
    return acc;
  }

  template <typename NewScalar>
  Poly<NewScalar> cast() const {
    return Poly<NewScalar>(coeffs_.template cast<NewScalar>());
  }

 private:
  void trim() {
    Eigen::Index n = coeffs_.size();
    while (n > 1 && coeffs_[n - 1] == Scalar(0)) --n;
    if (n != coeffs_.size()) coeffs_.conservativeResize(n);
  }

  Coeffs coeffs_;
};

template <typename Scalar>
Scalar evaluate(const Poly<Scalar>& p, const Scalar& x) {
  return p(x);
}

/// Power-rule derivative. A constant maps to the zero polynomial, which the
/// caller can detect with `is_zero()`.
template <typename Scalar>
Poly<Scalar> derivative(const Poly<Scalar>& p) {
  if (p.degree() == 0) return Poly<Scalar>();
  typename Poly<Scalar>::Coeffs d(p.degree());
  for (int s = 0; s < p.degree(); ++s) d[s] = Scalar(s + 1) * p[s + 1];
  return Poly<Scalar>(std::move(d));
}

template <typename Scalar>
Poly<Scalar> operator+(const Poly<Scalar>& a, const Poly<Scalar>& b) {
  const int n = std::max(a.degree(), b.degree()) + 1;
  typename Poly<Scalar>::Coeffs c = Poly<Scalar>::Coeffs::Zero(n);
  c.head(a.degree() + 1) += a.coeffs();
  c.head(b.degree() + 1) += b.coeffs();
  return Poly<Scalar>(std::move(c));
}

template <typename Scalar>
Poly<Scalar> operator-(const Poly<Scalar>& a, const Poly<Scalar>& b) {
  const int n = std::max(a.degree(), b.degree()) + 1;
  typename Poly<Scalar>::Coeffs c = Poly<Scalar>::Coeffs::Zero(n);
  c.head(a.degree() + 1) += a.coeffs();
  c.head(b.degree() + 1) -= b.coeffs();
  return Poly<Scalar>(std::move(c));
}

/// Coefficient convolution.
template <typename Scalar>
Poly<Scalar> operator*(const Poly<Scalar>& a, const Poly<Scalar>& b) {
  typename Poly<Scalar>::Coeffs c = Poly<Scalar>::Coeffs::Zero(a.degree() + b.degree() + 1);
  for (int i = 0; i <= a.degree(); ++i)
    for (int j = 0; j <= b.degree(); ++j) c[i + j] += a[i] * b[j];
  return Poly<Scalar>(std::move(c));
}

template <typename Scalar>
Poly<Scalar> operator*(const Scalar& k, const Poly<Scalar>& p) {
  return Poly<Scalar>(typename Poly<Scalar>::Coeffs(k * p.coeffs()));
}

template <typename Scalar>
Poly<Scalar> pow(const Poly<Scalar>& p, int n) {
  Poly<Scalar> result{Scalar(1)};
  Poly<Scalar> base = p;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

/// x^deg · p(1/x)
template <typename Scalar>
Poly<Scalar> reversed(const Poly<Scalar>& p) {
  return Poly<Scalar>(typename Poly<Scalar>::Coeffs(p.coeffs().reverse()));
}

template <typename Scalar>
Scalar max_abs_coeff(const Poly<Scalar>& p) {
  using std::abs;
  Scalar m(0);
  for (int s = 0; s <= p.degree(); ++s) m = std::max<Scalar>(m, abs(p[s]));
  return m;
}

/// max_s |p_s - p_{deg-s}| / max_s |p_s|; zero for an exactly palindromic
/// polynomial.
template <typename Scalar>
Scalar palindromy_defect(const Poly<Scalar>& p) {
  using std::abs;
  const Scalar scale = max_abs_coeff(p);
  if (scale == Scalar(0)) return Scalar(0);
  Scalar worst(0);
  const int n = p.degree();
  for (int s = 0; s <= n / 2; ++s) worst = std::max<Scalar>(worst, abs(p[s] - p[n - s]));
  return worst / scale;
}

/// Integer power by repeated squaring.
template <typename Scalar>
Scalar ipow(Scalar base, long long n) {
  if (n < 0) return Scalar(1) / ipow(base, -n);
  Scalar result(1);
  while (n > 0) {
    if (n & 1) result *= base;
    n >>= 1;
    if (n > 0) base *= base;
  }
  return result;
}

}  // namespace doplab
