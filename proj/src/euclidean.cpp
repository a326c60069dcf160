#include "polyvol/euclidean.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "polyvol/double_double.hpp"
#include "polyvol/error.hpp"
#include "polyvol/kernels.hpp"
#include "polyvol/rational.hpp"
#include "polyvol/subset_sums.hpp"

namespace polyvol {
namespace {

constexpr std::size_t kBlock = 4096;

void require_euclidean(const SideLengths& r) {
  if (r.space() != Space::Euclidean) throw Error(ErrorKind::Domain, "expected euclidean side-lengths");
}

}  // namespace

FeasibilityReport euclidean_feasibility(const SideLengths& r) {
  require_euclidean(r);
  const auto values = r.values();
  const double perimeter = r.perimeter();
  const auto longest = static_cast<std::size_t>(std::max_element(values.begin(), values.end()) - values.begin());
  const double tight = 16.0 * std::numeric_limits<double>::epsilon() * perimeter;

  FeasibilityReport report;
  report.min_margin = perimeter - 2.0 * values[longest];
  const std::uint32_t witness = std::uint32_t{1} << longest;
  if (report.min_margin < -tight) {
    report.verdict = Verdict::Empty;
    report.witnesses.push_back(witness);
  } else if (report.min_margin <= tight) {
    report.verdict = Verdict::Boundary;
    report.witnesses.push_back(witness);
  }
  return report;
}

VolumeResult euclidean_closed_form(const SideLengths& r) {
  require_euclidean(r);
  const std::size_t n = r.size();
  VolumeResult result;
  result.method = Method::ClosedForm;
  result.feasibility = euclidean_feasibility(r);

  if (n == 3) {
    // Degree zero: the space is a point or empty; 0^0 never enters.
    result.value = result.feasibility.verdict == Verdict::Interior ? 1.0 : 0.0;
    result.terms = 0;
    return result;
  }

  const bool even = n % 2 == 0;
  const int exponent = static_cast<int>(n) - 3;
  const std::vector<DoubleDouble> sides(r.values().begin(), r.values().end());
  BasicSignedSumStream<DoubleDouble> stream(sides, even ? SubsetFamily::All : SubsetFamily::Odd);
  std::vector<BasicSignedSum<DoubleDouble>> block(kBlock);
  std::vector<DoubleDouble> deltas(kBlock);
  std::vector<double> weights(kBlock);
  DoubleDouble total;
  while (const std::size_t count = stream.next_block(block)) {
    for (std::size_t j = 0; j < count; ++j) {
      deltas[j] = block[j].delta;
      weights[j] = (even && block[j].parity()) ? -1.0 : 1.0;
    }
    total += kernels::power_sum(std::span(deltas).first(count), std::span(weights).first(count), exponent,
                                !even);
  }

  double scale = even ? -0.25 : -0.5;
  for (int k = 2; k <= exponent; ++k) scale /= static_cast<double>(k);
  result.value = scale * total.value();
  result.terms = stream.size();
  return result;
}

double regular_euclidean_volume(int n) {
  if (n < static_cast<int>(kMinSides) || n > static_cast<int>(kMaxSides)) {
    throw Error(ErrorKind::OutOfRange, "regular polygon size must be in [3, 24]");
  }
  BigInt sum = 0;
  for (int k = 0; k <= n / 2; ++k) {
    const BigInt term = binomial(static_cast<unsigned>(n), static_cast<unsigned>(k)) *
                        boost::multiprecision::pow(BigInt(n - 2 * k), static_cast<unsigned>(n - 3));
    sum += (k % 2 == 0) ? term : BigInt(-term);
  }
  const Rational value(-sum, 2 * factorial(static_cast<unsigned>(n - 3)));
  return to_double(value);
}

SideLengths scale(const SideLengths& r, double lambda) {
  if (r.space() != Space::Euclidean) {
    throw Error(ErrorKind::Domain, "scaling is defined for euclidean side-lengths only");
  }
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw Error(ErrorKind::Domain, "scale factor must be positive");
  std::vector<double> scaled(r.values().begin(), r.values().end());
  for (double& v : scaled) v *= lambda;
  return SideLengths::euclidean(std::move(scaled));
}

}  // namespace polyvol
