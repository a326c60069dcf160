#pragma once

namespace polyvol::kernels::detail {

/// x^p for p >= 0 by binary exponentiation; 0^0 = 1.
inline double ipow(double x, int p) {
  double result = 1.0;
  while (p > 0) {
    if (p & 1) result *= x;
    x *= x;
    p >>= 1;
  }
  return result;
}

}  // namespace polyvol::kernels::detail
