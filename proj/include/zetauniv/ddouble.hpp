#pragma once

#include <array>
#include <cmath>

// Unevaluated-sum double-double arithmetic (hi + lo, |lo| <= ulp(hi)/2).
// Only the operations needed for phase reduction are provided: the heights
// reach 1e12 while the fractional part of t*log(n)/2pi must stay accurate
// to 1e-12, which plain doubles cannot deliver.
namespace zetauniv::dd {

inline double two_sum(double a, double b, double& err) {
  double s = a + b;
  double bb = s - a;
  err = (a - (s - bb)) + (b - bb);
  return s;
}

inline double quick_two_sum(double a, double b, double& err) {
  double s = a + b;
  err = b - (s - a);
  return s;
}

inline double two_prod(double a, double b, double& err) {
  double p = a * b;
  err = std::fma(a, b, -p);
  return p;
}

struct DDouble {
  double hi = 0.0;
  double lo = 0.0;

  constexpr DDouble() = default;
  constexpr DDouble(double h) : hi(h), lo(0.0) {}
  constexpr DDouble(double h, double l) : hi(h), lo(l) {}

  double to_double() const { return hi + lo; }
};

inline DDouble operator-(DDouble a) { return {-a.hi, -a.lo}; }

inline DDouble operator+(DDouble a, DDouble b) {
  double e1, e2;
  double s = two_sum(a.hi, b.hi, e1);
  double t = two_sum(a.lo, b.lo, e2);
  e1 += t;
  s = quick_two_sum(s, e1, e1);
  e1 += e2;
  s = quick_two_sum(s, e1, e1);
  return {s, e1};
}

inline DDouble operator+(DDouble a, double b) {
  double e;
  double s = two_sum(a.hi, b, e);
  e += a.lo;
  s = quick_two_sum(s, e, e);
  return {s, e};
}

inline DDouble operator-(DDouble a, DDouble b) { return a + (-b); }
inline DDouble operator-(DDouble a, double b) { return a + (-b); }

inline DDouble operator*(DDouble a, DDouble b) {
  double e;
  double p = two_prod(a.hi, b.hi, e);
  e += a.hi * b.lo + a.lo * b.hi;
  p = quick_two_sum(p, e, e);
  return {p, e};
}

inline DDouble operator*(DDouble a, double b) {
  double e;
  double p = two_prod(a.hi, b, e);
  e += a.lo * b;
  p = quick_two_sum(p, e, e);
  return {p, e};
}

inline DDouble operator/(DDouble a, DDouble b) {
  double q1 = a.hi / b.hi;
  DDouble r = a - b * q1;
  double q2 = r.hi / b.hi;
  r = r - b * q2;
  double q3 = r.hi / b.hi;
  double e;
  q1 = quick_two_sum(q1, q2, e);
  return DDouble{q1, e} + q3;
}

inline DDouble ldexp(DDouble a, int k) {
  return {std::ldexp(a.hi, k), std::ldexp(a.lo, k)};
}

inline DDouble floor(DDouble a) {
  double h = std::floor(a.hi);
  if (h != a.hi) return {h, 0.0};
  double l = std::floor(a.lo);
  double e;
  h = quick_two_sum(h, l, e);
  return {h, e};
}

// Fractional part in [0, 1).
inline DDouble frac(DDouble a) {
  DDouble f = a - floor(a);
  if (f.hi >= 1.0) f = f - 1.0;
  if (f.hi < 0.0) f = f + 1.0;
  return f;
}

inline constexpr DDouble kTwoPi{6.283185307179586, 2.4492935982947064e-16};
inline constexpr DDouble kLn2{0.6931471805599453, 2.3190468138462996e-17};

inline DDouble exp(DDouble a) {
  constexpr int kHalvings = 10;
  double m = std::floor(a.hi / kLn2.hi + 0.5);
  DDouble r = ldexp(a - kLn2 * m, -kHalvings);

  // Taylor series of exp(r) - 1; |r| < 3.4e-4 so 10 terms exceed 1e-32.
  static const auto inverse_factorials = [] {
    std::array<DDouble, 11> f{};
    f[1] = DDouble(1.0);
    for (int k = 2; k <= 10; ++k) f[k] = f[k - 1] / DDouble(static_cast<double>(k));
    return f;
  }();
  DDouble power = r;
  DDouble s = r;
  for (int k = 2; k <= 10; ++k) {
    power = power * r;
    s = s + power * inverse_factorials[k];
  }
  for (int i = 0; i < kHalvings; ++i) s = s * 2.0 + s * s;
  return ldexp(s + 1.0, static_cast<int>(m));
}

// Natural log of a positive value, one Newton step from the double result.
inline DDouble log(DDouble a) {
  DDouble x{std::log(a.hi)};
  return x + a * exp(-x) - 1.0;
}

}  // namespace zetauniv::dd
