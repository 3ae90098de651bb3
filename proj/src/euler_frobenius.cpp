#include "doplab/euler_frobenius.hpp"

#include <stdexcept>

namespace doplab {

namespace {

using IntPoly = std::vector<BigInt>;

BigInt binomial(unsigned n, unsigned j) {
  BigInt r = 1;
  for (unsigned i = 0; i < j; ++i) r = r * (n - i) / (i + 1);
  return r;
}

IntPoly trimmed(IntPoly p) {
  while (p.size() > 1 && p.back() == 0) p.pop_back();
  return p;
}

}  // namespace

EFPoly ef_coefficients(unsigned k) {
  EFPoly e;
  e.k = k;
  if (k == 0) {
    e.coeffs = {1};
    return e;
  }
  e.coeffs.resize(k + 1);
  for (unsigned s = 0; s <= k; ++s) {
    BigInt a = 0;
    for (unsigned j = 0; j <= s; ++j) {
      const BigInt term = binomial(k + 2, j) * boost::multiprecision::pow(BigInt(s + 1 - j), k + 1);
      a += (j % 2 == 0) ? term : BigInt(-term);
    }
    e.coeffs[s] = a;
  }
  return e;
}

EFPoly ef_coefficients_by_operator(unsigned k) {
  // f_j = num_j / (1-x)^{j+2}; x d/dx f_j = x[num_j'(1-x) + (j+2) num_j] / (1-x)^{j+3}
  IntPoly num = {0, 1};
  for (unsigned j = 0; j < k; ++j) {
    IntPoly next(num.size() + 1, BigInt(0));
    for (std::size_t s = 1; s < num.size(); ++s) {
      const BigInt d = BigInt(static_cast<unsigned>(s)) * num[s];  // num' coefficient of x^{s-1}
      next[s - 1] += d;
      next[s] -= d;
    }
    for (std::size_t s = 0; s < num.size(); ++s) next[s] += BigInt(j + 2) * num[s];
    next.insert(next.begin(), BigInt(0));  // multiply by x
    num = trimmed(std::move(next));
  }
  // (1-x)^{k+2} cancels the tracked denominator; divide by x exactly.
  if (num.front() != 0) throw std::logic_error("numerator not divisible by x");
  num.erase(num.begin());
  EFPoly e;
  e.k = k;
  e.coeffs = trimmed(std::move(num));
  return e;
}

}  // namespace doplab
