#pragma once

// Closed-form coefficients of the characteristic polynomial for m = 2..6,
// transcribed term by term from the published tables and evaluated directly
// at t = hω. They share no code with the library's assembly.
//
// Two m = 6 rows are printed with wrong rational constants. `as_printed`
// reproduces the printed rows so a test can show they disagree with the
// defining product formula; the default uses the corrected constants:
//   p7 bracket of 8cos t:     -4/15 t^5 - 4 t^3  ->  +4/15 t^5 + 4 t^3
//   p6 bracket of -8cos t:    151/315 t^7        ->  317/630 t^7

#include <stdexcept>
#include <vector>

namespace golden {

template <typename S>
struct Trig {
  S t, s1, s2, c1, t3, t5, t7;
  explicit Trig(const S& x) : t(x) {
    using std::cos;
    using std::sin;
    s1 = sin(x);
    s2 = sin(2 * x);
    c1 = cos(x);
    t3 = x * x * x;
    t5 = t3 * x * x;
    t7 = t5 * x * x;
  }
  S q(int num, int den, const S& power) const { return S(num) / S(den) * power; }
  // 4(1 + 2cos^2 t)
  S four_one_two_cos2() const { return 4 * (1 + 2 * c1 * c1); }
};

// p_0 .. p_{2m-2}; the upper half mirrors the lower half.
template <typename S>
std::vector<S> coefficients(int m, const S& x, bool as_printed = false) {
  const Trig<S> g(x);
  const S& t = g.t;
  std::vector<S> low;
  switch (m) {
    case 2:
      low = {g.s1 - t * g.c1, 2 * t - g.s2};
      break;
    case 3:
      low = {3 * g.s1 - t * g.c1 - 2 * t,
             10 * t * g.c1 + 2 * t - 3 * g.s2 - 6 * g.s1,
             -8 * t * (1 + g.c1 * g.c1) + 6 * g.s1 - 2 * t * g.c1 + 6 * g.s2};
      break;
    case 4: {
      const S u = -2 * t + g.q(1, 6, g.t3);
      const S v = 4 * t + g.q(2, 3, g.t3);
      low = {5 * g.s1 - t * g.c1 - 4 * t + g.q(1, 3, g.t3),
             10 * t - 5 * g.s2 - 20 * g.s1 + 4 * t * g.c1 + g.q(4, 3, g.t3) - 8 * g.c1 * u,
             35 * g.s1 - 7 * t * g.c1 - 12 * t + 20 * g.s2 + g.q(1, 3, g.t3) - 8 * g.c1 * v +
                 g.four_one_two_cos2() * u,
             -16 * g.c1 * u + g.four_one_two_cos2() * v - 40 * g.s1 + 8 * t * g.c1 + 12 * t - 30 * g.s2};
      break;
    }
    case 5: {
      const S u = -3 * t + g.q(1, 3, g.t3) - g.q(1, 120, g.t5);
      const S v = -g.q(13, 60, g.t5) + 12 * t + g.q(2, 3, g.t3);
      const S w = g.q(67, 120, g.t5) + g.q(5, 3, g.t3) + 21 * t;
      const S z = -g.q(11, 20, g.t5) - 2 * g.t3 - 18 * t;
      low = {7 * g.s1 - t * g.c1 - 6 * t + g.q(2, 3, g.t3) - g.q(1, 60, g.t5),
             -g.q(13, 30, g.t5) + 26 * t + g.q(4, 3, g.t3) - 8 * g.c1 * u - 7 * g.s2 - 42 * g.s1 + 6 * t * g.c1,
             -g.q(11, 10, g.t5) - 4 * g.t3 - 48 * t - 8 * g.c1 * v + g.four_one_two_cos2() * u + 112 * g.s1 -
                 16 * t * g.c1 + 42 * g.s2,
             -g.q(13, 30, g.t5) + 54 * t + g.q(4, 3, g.t3) + 8 * g.c1 * w + g.four_one_two_cos2() * v -
                 182 * g.s1 + 26 * t * g.c1 - 105 * g.s2,
             210 * g.s1 - 30 * t * g.c1 - 52 * t + 140 * g.s2 + g.q(4, 3, g.t3) - g.q(1, 30, g.t5) -
                 16 * g.c1 * v + g.four_one_two_cos2() * z};
      break;
    }
    case 6: {
      const S u = -4 * t + g.q(1, 5040, g.t7) + g.q(1, 2, g.t3) - g.q(1, 60, g.t5);
      const S v = 24 * t - g.q(2, 5, g.t5) + g.q(1, 42, g.t7);
      const S w = as_printed ? 64 * t - g.q(149, 630, g.t7) - g.q(4, 15, g.t5) - 4 * g.t3
                             : 64 * t - g.q(149, 630, g.t7) + g.q(4, 15, g.t5) + 4 * g.t3;
      const S y = as_printed ? 104 * t + g.q(14, 15, g.t5) + 8 * g.t3 + g.q(151, 315, g.t7)
                             : 104 * t + g.q(14, 15, g.t5) + 8 * g.t3 + g.q(317, 630, g.t7);
      const S z = -60 * t + g.q(397, 1680, g.t7) - g.q(1, 4, g.t5) - g.q(9, 2, g.t3);
      const S r = 80 * t + g.q(4, 3, g.t5) + 8 * g.t3 + g.q(151, 315, g.t7);
      low = {9 * g.s1 - t * g.c1 - 8 * t + g.q(1, 2520, g.t7) + g.t3 - g.q(1, 30, g.t5),
             50 * t - 9 * g.s2 - 72 * g.s1 + 8 * t * g.c1 - g.q(4, 5, g.t5) + g.q(1, 21, g.t7) - 8 * g.c1 * u,
             261 * g.s1 - 29 * t * g.c1 - 136 * t + 72 * g.s2 + g.q(397, 840, g.t7) - g.q(1, 2, g.t5) -
                 9 * g.t3 - 8 * g.c1 * v + g.four_one_two_cos2() * u,
             8 * g.c1 * w + 216 * t + g.q(8, 3, g.t5) + 16 * g.t3 + g.q(302, 315, g.t7) +
                 g.four_one_two_cos2() * v - 576 * g.s1 + 64 * t * g.c1 - 252 * g.s2,
             882 * g.s1 - 98 * t * g.c1 - 240 * t + 504 * g.s2 + g.q(149, 315, g.t7) - g.q(8, 15, g.t5) -
                 8 * g.t3 - 8 * g.c1 * y + g.four_one_two_cos2() * z,
             -1008 * g.s1 + 112 * t * g.c1 + 236 * t - 630 * g.s2 - g.q(8, 5, g.t5) + g.q(2, 21, g.t7) -
                 16 * g.c1 * z + g.four_one_two_cos2() * r};
      break;
    }
    default:
      throw std::invalid_argument("tables cover m = 2..6");
  }
  std::vector<S> all(low);
  for (int s = static_cast<int>(low.size()) - 2; s >= 0; --s) all.push_back(low[static_cast<std::size_t>(s)]);
  return all;
}

// Printed O(h^2) constants: p_s/p_lead = c0 - c2 (hω)^2, as (numerator, denominator).
struct C2 {
  int m, s;
  long long num, den;
};

inline const std::vector<C2>& printed_c2() {
  static const std::vector<C2> rows{
      {2, 1, 2, 5},          {3, 1, 18, 7},          {3, 2, 64, 7},           {4, 1, 26, 3},
      {4, 2, 470, 3},        {4, 3, 1108, 3},        {5, 1, 1426, 55},        {5, 2, 86664, 55},
      {5, 3, 141798, 11},    {5, 4, 273872, 11},     {6, 1, 998, 13},         {6, 2, 170920, 13},
      {6, 3, 3644480, 13},   {6, 4, 19460312, 13},   {6, 5, 33280180, 13},
  };
  return rows;
}

}  // namespace golden
