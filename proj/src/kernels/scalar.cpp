#include <cmath>

#include "ipow.hpp"
#include "polyvol/compensated.hpp"
#include "polyvol/double_double.hpp"
#include "polyvol/kernels.hpp"

namespace polyvol::kernels::scalar {

double sine_product_sum(std::span<const double> angles, int exponent, std::uint64_t k_first,
                        std::uint64_t k_last) {
  CompensatedSum acc;
  for (std::uint64_t k = k_first; k <= k_last; ++k) {
    const double kd = static_cast<double>(k);
    double prod = 1.0;
    for (double a : angles) prod *= std::sin(kd * a);
    acc += prod * detail::ipow(1.0 / kd, exponent);
  }
  return acc.value();
}

DoubleDouble periodic_polynomial_sum(std::span<const DoubleDouble> deltas, std::span<const double> weights,
                                     std::span<const DoubleDouble> coeffs) {
  const std::size_t degree = coeffs.size() - 1;
  DoubleDouble acc;
  for (std::size_t j = 0; j < deltas.size(); ++j) {
    const DoubleDouble f = dd::frac_turns(deltas[j]);
    DoubleDouble p = coeffs[degree];
    for (std::size_t d = degree; d-- > 0;) p = dd::add(dd::mul(p, f), coeffs[d]);
    acc = dd::add(acc, DoubleDouble(weights[j] * p.hi, weights[j] * p.lo));
  }
  return acc;
}

DoubleDouble power_sum(std::span<const DoubleDouble> deltas, std::span<const double> weights, int exponent,
                       bool signed_terms) {
  DoubleDouble acc;
  for (std::size_t j = 0; j < deltas.size(); ++j) {
    const DoubleDouble d = deltas[j];
    const double sign = d.hi > 0.0 ? 1.0 : (d.hi < 0.0 ? -1.0 : 0.0);
    const double g = weights[j] * (signed_terms ? sign : 1.0);
    const DoubleDouble p = dd::pow(sign < 0.0 ? dd::neg(d) : d, exponent);
    acc = dd::add(acc, DoubleDouble(g * p.hi, g * p.lo));
  }
  return acc;
}

}  // namespace polyvol::kernels::scalar
