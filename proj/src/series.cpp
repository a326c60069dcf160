#include "polyvol/series.hpp"

#include <cmath>
#include <string>

#include "polyvol/error.hpp"
#include "polyvol/kernels.hpp"

namespace polyvol {
namespace {

double tail_bound(double prefactor, int exponent, double terms) {
  return prefactor * std::pow(terms, 1.0 - exponent) / (exponent - 1);
}

}  // namespace

SeriesTruncation truncate_series(double prefactor, int exponent, double tol) {
  if (exponent < 2) throw Error(ErrorKind::Unsupported, "series tail bound needs exponent >= 2");
  if (!(tol > 0.0) || !std::isfinite(tol)) throw Error(ErrorKind::Domain, "tolerance must be positive");
  if (prefactor == 0.0) return {};

  const double estimate = std::ceil(std::pow(prefactor / (tol * (exponent - 1)), 1.0 / (exponent - 1)));
  if (!(estimate <= static_cast<double>(kMaxSeriesTerms))) {
    throw Error(ErrorKind::ToleranceTooSmall,
                "tolerance too small: series would need more than 2^32 terms");
  }
  auto terms = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(estimate));
  while (tail_bound(prefactor, exponent, static_cast<double>(terms)) > tol) {
    if (++terms > kMaxSeriesTerms) {
      throw Error(ErrorKind::ToleranceTooSmall,
                  "tolerance too small: series would need more than 2^32 terms");
    }
  }
  return {terms, tail_bound(prefactor, exponent, static_cast<double>(terms))};
}

SeriesValue sine_product_series(std::span<const double> angles, int exponent, double prefactor,
                                double tol) {
  const SeriesTruncation trunc = truncate_series(prefactor, exponent, tol);
  if (trunc.terms == 0) return {};
  const double sum = kernels::sine_product_sum(angles, exponent, 1, trunc.terms);
  return {prefactor * sum, trunc.tail_bound, trunc.terms};
}

}  // namespace polyvol
