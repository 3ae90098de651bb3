#include "doplab/char_poly.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace doplab {

namespace {

using Series = std::vector<Rational>;   // Taylor coefficients in t
using XSeries = std::vector<Series>;    // polynomial in x with Series coefficients

Series zero_series(int order) { return Series(static_cast<std::size_t>(order + 1), Rational(0)); }

// sin(k t) or cos(k t) to order t^order
Series trig_series(bool sine, int k, int order) {
  Series s = zero_series(order);
  BigInt factorial = 1;
  BigInt power = 1;
  for (int j = 0; j <= order; ++j) {
    if (j > 0) {
      factorial *= j;
      power *= k;
    }
    if ((j % 2 == 1) != sine) continue;
    const int half = sine ? (j - 1) / 2 : j / 2;
    const Rational term(power, factorial);
    s[static_cast<std::size_t>(j)] = (half % 2 == 0) ? term : Rational(-term);
  }
  return s;
}

Series mul(const Series& a, const Series& b, int order) {
  Series out = zero_series(order);
  for (int i = 0; i <= order; ++i) {
    if (a[static_cast<std::size_t>(i)] == 0) continue;
    for (int j = 0; i + j <= order; ++j) {
      if (b[static_cast<std::size_t>(j)] == 0) continue;
      out[static_cast<std::size_t>(i + j)] += a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)];
    }
  }
  return out;
}

void add_into(Series& acc, const Series& s, const Rational& factor) {
  for (std::size_t j = 0; j < acc.size(); ++j)
    if (s[j] != 0) acc[j] += factor * s[j];
}

XSeries mul(const XSeries& a, const XSeries& b, int order) {
  XSeries out(a.size() + b.size() - 1, zero_series(order));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) add_into(out[i + j], mul(a[i], b[j], order), Rational(1));
  return out;
}

std::vector<BigInt> int_mul(const std::vector<BigInt>& a, const std::vector<BigInt>& b) {
  std::vector<BigInt> out(a.size() + b.size() - 1, BigInt(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

std::vector<BigInt> one_minus_x_pow(int n) {
  std::vector<BigInt> out{1};
  for (int i = 0; i < n; ++i) out = int_mul(out, {1, -1});
  return out;
}

std::vector<std::vector<Rational>> assemble(int m, int order) {
  const Series sin_t = trig_series(true, 1, order);
  const Series cos_t = trig_series(false, 1, order);
  const Series sin_2t = trig_series(true, 2, order);
  Series t = zero_series(order);
  if (order >= 1) t[1] = 1;

  // a = (2m-3) sin t - t cos t,  b = 2t - (2m-3) sin 2t
  Series a = zero_series(order);
  add_into(a, sin_t, Rational(2 * m - 3));
  add_into(a, mul(t, cos_t, order), Rational(-1));
  Series b = zero_series(order);
  add_into(b, t, Rational(2));
  add_into(b, sin_2t, Rational(-(2 * m - 3)));

  XSeries result{a, b, a};
  {
    XSeries prefactor;
    for (const BigInt& c : one_minus_x_pow(2 * m - 4)) {
      Series s = zero_series(order);
      s[0] = Rational(c);
      prefactor.push_back(std::move(s));
    }
    result = mul(prefactor, result, order);
  }

  if (m > 2) {
    Series one = zero_series(order);
    one[0] = 1;
    Series minus_two_cos = cos_t;
    for (auto& v : minus_two_cos) v *= -2;
    const XSeries quad{one, minus_two_cos, one};
    const XSeries quad2 = mul(quad, quad, order);

    XSeries sum(static_cast<std::size_t>(2 * m - 5), zero_series(order));
    BigInt factorial = 1;
    for (int k = 1; k <= m - 2; ++k) {
      if (k > 1) factorial *= BigInt((2 * k - 2) * (2 * k - 1));
      Rational c(BigInt(m - k - 1), factorial);
      if (k % 2 == 1) c = -c;
      const std::vector<BigInt> x_part =
          int_mul(one_minus_x_pow(2 * m - 2 * k - 4), ef_coefficients(static_cast<unsigned>(2 * k - 2)).coeffs);
      for (std::size_t i = 0; i < x_part.size(); ++i)
        if (2 * k - 1 <= order) sum[i][static_cast<std::size_t>(2 * k - 1)] += c * Rational(x_part[i]);
    }
    const XSeries extra = mul(quad2, sum, order);
    for (std::size_t i = 0; i < extra.size(); ++i) add_into(result[i], extra[i], Rational(2));
  }
  result.resize(static_cast<std::size_t>(2 * m - 1), zero_series(order));
  return result;
}

int initial_order(int m, unsigned bits) {
  // smallest T with T! / 2^T below the requested relative size, in log2
  const double need = bits + 64.0 + 2.0 * std::lgamma(2.0 * m + 1) / std::log(2.0);
  int order = 4 * m;
  while (std::lgamma(order + 1.0) / std::log(2.0) - order < need) ++order;
  return order;
}

bool tail_negligible(const std::vector<std::vector<Rational>>& q, int m, int order, unsigned bits) {
  const Rational& lead = q[static_cast<std::size_t>(2 * m - 2)][static_cast<std::size_t>(2 * m - 1)];
  if (lead == 0) return false;
  const Rational bound = abs(lead) / Rational(BigInt(1) << (bits + 32));
  for (const auto& row : q) {
    const Rational last = abs(row[static_cast<std::size_t>(order)]) + abs(row[static_cast<std::size_t>(order - 1)]);
    if (last > bound) return false;
  }
  return true;
}

}  // namespace

std::shared_ptr<const TaylorTable> char_poly_taylor(int m, unsigned precision_bits) {
  if (m < 2) throw ParameterError("m must be >= 2");
  static std::mutex mutex;
  static std::map<std::pair<int, unsigned>, std::shared_ptr<const TaylorTable>> cache;
  {
    std::lock_guard<std::mutex> lock(mutex);
    if (auto it = cache.find({m, precision_bits}); it != cache.end()) return it->second;
  }
  int order = initial_order(m, precision_bits);
  auto table = std::make_shared<TaylorTable>();
  for (int attempt = 0;; ++attempt) {
    table->coeffs = assemble(m, order);
    if (tail_negligible(table->coeffs, m, order, precision_bits)) break;
    if (attempt == 8) throw DegenerateError("Taylor series of the characteristic polynomial did not settle");
    order += 32;
  }
  table->m = m;
  table->order = order;
  std::lock_guard<std::mutex> lock(mutex);
  return cache.emplace(std::make_pair(m, precision_bits), std::move(table)).first->second;
}

}  // namespace doplab
