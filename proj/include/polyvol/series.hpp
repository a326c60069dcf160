#pragma once

#include <cstdint>
#include <span>

namespace polyvol {

/// Upper limit on the number of series terms. Quadrilaterals at tol 1e-8 need
/// about 2.6e8 terms, so the cap sits well above that.
inline constexpr std::uint64_t kMaxSeriesTerms = std::uint64_t{1} << 32;

struct SeriesTruncation {
  std::uint64_t terms = 0;
  double tail_bound = 0.0;
};

/// Smallest K with prefactor * K^(1-p) / (p-1) <= tol, the integral bound on
/// prefactor * sum_{k>K} k^-p. Needs p >= 2 and tol > 0; throws
/// Error(ToleranceTooSmall) when K would exceed kMaxSeriesTerms.
SeriesTruncation truncate_series(double prefactor, int exponent, double tol);

struct SeriesValue {
  double value = 0.0;
  double error_bound = 0.0;
  std::uint64_t terms = 0;
};

/// prefactor * sum_{k>=1} prod_i sin(k a_i) / k^p truncated so the tail is
/// at most tol in absolute value.
SeriesValue sine_product_series(std::span<const double> angles, int exponent, double prefactor,
                                double tol);

}  // namespace polyvol
