#pragma once

// Unevaluated sum hi + lo with |lo| <= ulp(hi)/2, giving about 106 bits.
// The closed forms cancel terms many orders of magnitude larger than the
// result, so they accumulate in this format.

#include <cmath>

namespace polyvol {

struct DoubleDouble {
  double hi = 0.0;
  double lo = 0.0;

  constexpr DoubleDouble() = default;
  constexpr DoubleDouble(double h) : hi(h) {}
  constexpr DoubleDouble(double h, double l) : hi(h), lo(l) {}

  double value() const { return hi + lo; }
};

namespace dd {

inline DoubleDouble quick_two_sum(double a, double b) {
  const double s = a + b;
  return {s, b - (s - a)};
}

inline DoubleDouble two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

inline DoubleDouble two_prod(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

inline DoubleDouble add(DoubleDouble x, DoubleDouble y) {
  DoubleDouble s = two_sum(x.hi, y.hi);
  const DoubleDouble t = two_sum(x.lo, y.lo);
  s = quick_two_sum(s.hi, s.lo + t.hi);
  return quick_two_sum(s.hi, s.lo + t.lo);
}

inline DoubleDouble mul(DoubleDouble x, DoubleDouble y) {
  const DoubleDouble p = two_prod(x.hi, y.hi);
  const double cross = x.hi * y.lo + x.lo * y.hi;
  return quick_two_sum(p.hi, p.lo + cross);
}

inline DoubleDouble neg(DoubleDouble x) { return {-x.hi, -x.lo}; }

/// x^p for p >= 0 by binary exponentiation; x^0 = 1.
inline DoubleDouble pow(DoubleDouble x, int p) {
  DoubleDouble result(1.0);
  while (p > 0) {
    if (p & 1) result = mul(result, x);
    x = mul(x, x);
    p >>= 1;
  }
  return result;
}

/// 1 / (2 pi) to double-double precision.
inline constexpr DoubleDouble kInvTwoPi{0x1.45f306dc9c883p-3, -0x1.6b01ec5417056p-57};

/// Fractional part of x / (2 pi) in [0, 1).
inline DoubleDouble frac_turns(DoubleDouble x) {
  const DoubleDouble u = mul(x, kInvTwoPi);
  DoubleDouble f = add(u, DoubleDouble(-std::floor(u.hi)));
  if (f.hi < 0.0) f = add(f, DoubleDouble(1.0));
  return f;
}

}  // namespace dd

inline DoubleDouble operator+(DoubleDouble x, DoubleDouble y) { return dd::add(x, y); }
inline DoubleDouble operator-(DoubleDouble x, DoubleDouble y) { return dd::add(x, dd::neg(y)); }
inline DoubleDouble operator-(DoubleDouble x) { return dd::neg(x); }
inline DoubleDouble operator*(DoubleDouble x, DoubleDouble y) { return dd::mul(x, y); }
inline DoubleDouble& operator+=(DoubleDouble& x, DoubleDouble y) { return x = dd::add(x, y); }
inline DoubleDouble& operator-=(DoubleDouble& x, DoubleDouble y) { return x = dd::add(x, dd::neg(y)); }

}  // namespace polyvol
