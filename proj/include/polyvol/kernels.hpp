#pragma once

// Data-parallel inner loops behind the series and closed-form evaluators.
//
// Each kernel has a scalar reference implementation and, on x86-64, an AVX2
// variant selected at runtime. The closed-form kernels compute each term with
// the same double-double operations on both backends, so only the reduction
// order differs. For a fixed backend every kernel is deterministic.

#include <cstdint>
#include <span>
#include <string_view>

#include "polyvol/double_double.hpp"

namespace polyvol::kernels {

enum class Backend { Scalar, Avx2 };

std::string_view to_string(Backend backend);

/// True when the backend was compiled in and the CPU supports it.
bool supported(Backend backend);

/// Backend used by the dispatching entry points. Defaults to the widest
/// supported one; POLYVOL_KERNEL=scalar|avx2 overrides at first use.
Backend active_backend();

/// Throws polyvol::Error if the backend is not supported.
void set_active_backend(Backend backend);

/// Largest number of angles accepted by sine_product_sum.
inline constexpr std::size_t kMaxAngles = 32;

/// sum_{k=k_first}^{k_last} prod_i sin(k a_i) / k^exponent, with compensated
/// summation in ascending k. Requires 1 <= k_first, angles.size() <= kMaxAngles.
double sine_product_sum(std::span<const double> angles, int exponent, std::uint64_t k_first,
                        std::uint64_t k_last);

/// sum_j w_j B({delta_j / 2 pi}) in double-double, where B has ascending
/// coefficients `coeffs` and {.} is the fractional part in [0,1).
/// Weights must be -1, 0 or 1.
DoubleDouble periodic_polynomial_sum(std::span<const DoubleDouble> deltas, std::span<const double> weights,
                                     std::span<const DoubleDouble> coeffs);

/// sum_j w_j g(delta_j) |delta_j|^exponent in double-double, with g = 1, or
/// g = sign (sign(0) = 0) when `signed_terms` is set. Weights must be -1, 0 or 1.
DoubleDouble power_sum(std::span<const DoubleDouble> deltas, std::span<const double> weights, int exponent,
                       bool signed_terms);

/// Per-backend entry points, used by the dispatcher and equivalence tests.
namespace scalar {
double sine_product_sum(std::span<const double> angles, int exponent, std::uint64_t k_first,
                        std::uint64_t k_last);
DoubleDouble periodic_polynomial_sum(std::span<const DoubleDouble> deltas, std::span<const double> weights,
                                     std::span<const DoubleDouble> coeffs);
DoubleDouble power_sum(std::span<const DoubleDouble> deltas, std::span<const double> weights, int exponent,
                       bool signed_terms);
}  // namespace scalar

namespace avx2 {
double sine_product_sum(std::span<const double> angles, int exponent, std::uint64_t k_first,
                        std::uint64_t k_last);
DoubleDouble periodic_polynomial_sum(std::span<const DoubleDouble> deltas, std::span<const double> weights,
                                     std::span<const DoubleDouble> coeffs);
DoubleDouble power_sum(std::span<const DoubleDouble> deltas, std::span<const double> weights, int exponent,
                       bool signed_terms);
}  // namespace avx2

}  // namespace polyvol::kernels
