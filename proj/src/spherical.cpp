#include "polyvol/spherical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <vector>

#include "polyvol/bernoulli.hpp"
#include "polyvol/double_double.hpp"
#include "polyvol/error.hpp"
#include "polyvol/kernels.hpp"
#include "polyvol/series.hpp"
#include "polyvol/subset_sums.hpp"
#include "witnesses.hpp"

namespace polyvol {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::size_t kBlock = 4096;

void require_spherical(const SideLengths& r) {
  if (r.space() != Space::Spherical) throw Error(ErrorKind::Domain, "expected spherical side-lengths");
}

// Sides as integers a_i with r_i = pi a_i / denominator.
struct IntegerSides {
  std::vector<std::int64_t> numerators;
  std::int64_t denominator = 1;
};

std::optional<IntegerSides> integer_sides(const SideLengths& r) {
  if (!r.has_exact_form()) return std::nullopt;
  const auto& q = *r.pi_multiples();
  BigInt lcm = 1;
  for (const auto& m : q) {
    const BigInt den = boost::multiprecision::denominator(m);
    lcm = lcm / boost::multiprecision::gcd(lcm, den) * den;
  }
  // Sums of 24 numerators must stay well inside int64.
  const BigInt limit = BigInt(1) << 56;
  IntegerSides out;
  if (lcm > limit) return std::nullopt;
  out.denominator = static_cast<std::int64_t>(lcm);
  BigInt total = 0;
  for (const auto& m : q) {
    const BigInt a = boost::multiprecision::numerator(m) * (lcm / boost::multiprecision::denominator(m));
    total += a;
    out.numerators.push_back(static_cast<std::int64_t>(a));
  }
  if (total > limit) return std::nullopt;
  return out;
}

FeasibilityReport exact_feasibility(const IntegerSides& sides) {
  // margin * L / pi = (|I| - 1) L - S_I with S_I = sum_I a - sum_Ibar a.
  const std::int64_t L = sides.denominator;
  BasicSignedSumStream<std::int64_t> stream(sides.numerators, SubsetFamily::Odd);
  detail::WitnessCollector<std::int64_t> collector(0);
  BasicSignedSum<std::int64_t> s;
  while (stream.next(s)) collector.add(static_cast<std::int64_t>(s.cardinality - 1) * L - s.delta, s.subset);
  FeasibilityReport report = collector.report();
  report.min_margin = static_cast<double>(collector.min_margin()) / static_cast<double>(L) * kPi;
  return report;
}

FeasibilityReport float_feasibility(const SideLengths& r) {
  const double tight = 16.0 * std::numeric_limits<double>::epsilon() *
                       (r.perimeter() + static_cast<double>(r.size()) * kPi);
  SignedSumStream stream(r.values(), SubsetFamily::Odd);
  detail::WitnessCollector<double> collector(tight);
  SignedSum s;
  while (stream.next(s)) collector.add((s.cardinality - 1) * kPi - s.delta, s.subset);
  FeasibilityReport report = collector.report();
  report.min_margin = collector.min_margin();
  return report;
}

void require_series_size(const SideLengths& r) {
  require_spherical(r);
  if (r.size() == 3) {
    throw Error(ErrorKind::Unsupported, "series diverges in its tail bound for n = 3; use closed form");
  }
}

Rational closed_form_scale(std::size_t n) {
  // (2 pi)^(n-3) / (2 (n-2)!) for even n, (2 pi)^(n-3) / (n-2)! for odd n; pi^(n-3) kept apart.
  Rational scale(BigInt(1) << (n - 3), factorial(static_cast<unsigned>(n - 2)));
  if (n % 2 == 0) scale /= 2;
  return scale;
}

VolumeResult exact_closed_form(const SideLengths& r) {
  const auto sides = integer_sides(r);
  if (!sides) throw Error(ErrorKind::NotExact, "exact mode needs sides given as rational multiples of pi");
  const std::size_t n = r.size();
  const int degree = static_cast<int>(n) - 2;
  const bool even = n % 2 == 0;
  const std::int64_t period = 2 * sides->denominator;

  // (r_I - r_Ibar) / 2 pi = S_I / 2L; collect signed counts per residue of S_I mod 2L.
  std::map<std::int64_t, std::int64_t> weight_by_residue;
  std::uint64_t visited = 0;
  std::uint64_t walls = 0;
  BasicSignedSumStream<std::int64_t> stream(sides->numerators, even ? SubsetFamily::All : SubsetFamily::Odd);
  BasicSignedSum<std::int64_t> s;
  while (stream.next(s)) {
    std::int64_t residue = s.delta % period;
    if (residue < 0) residue += period;
    if (residue == 0) ++walls;
    weight_by_residue[residue] += (even && s.parity()) ? -1 : 1;
    ++visited;
  }

  const BernoulliTable& table = BernoulliTable::shared();
  Rational total = 0;
  for (const auto& [residue, weight] : weight_by_residue) {
    if (weight == 0) continue;
    total += Rational(weight) * table.eval(degree, Rational(residue, period));
  }
  const Rational coefficient = closed_form_scale(n) * total;

  VolumeResult result;
  result.method = Method::ExactClosedForm;
  result.exact_coefficient = coefficient;
  result.pi_power = static_cast<int>(n) - 3;
  result.value = to_double(coefficient) * std::pow(kPi, static_cast<double>(n - 3));
  result.terms = visited;
  result.wall_subsets = walls;
  result.feasibility = exact_feasibility(*sides);
  return result;
}

}  // namespace

FeasibilityReport spherical_feasibility(const SideLengths& r) {
  require_spherical(r);
  if (const auto sides = integer_sides(r)) return exact_feasibility(*sides);
  return float_feasibility(r);
}

VolumeResult witten_series(const SideLengths& r, double tol) {
  require_series_size(r);
  const std::size_t n = r.size();
  const double prefactor = std::ldexp(1.0, static_cast<int>(n) - 1) / kPi;
  const SeriesValue s = sine_product_series(r.values(), static_cast<int>(n) - 2, prefactor, tol);

  VolumeResult result;
  result.method = Method::Series;
  result.value = s.value;
  result.error_bound = s.error_bound;
  result.terms = s.terms;
  result.feasibility = spherical_feasibility(r);
  return result;
}

double trig_sum(const SideLengths& r, double tol) {
  require_series_size(r);
  return sine_product_series(r.values(), static_cast<int>(r.size()) - 2, 1.0, tol).value;
}

VolumeResult spherical_closed_form(const SideLengths& r, bool exact) {
  require_spherical(r);
  if (exact) return exact_closed_form(r);

  const std::size_t n = r.size();
  const bool even = n % 2 == 0;
  const auto coeffs = BernoulliTable::shared().coefficients_dd(static_cast<int>(n) - 2);

  const std::vector<DoubleDouble> sides(r.values().begin(), r.values().end());
  BasicSignedSumStream<DoubleDouble> stream(sides, even ? SubsetFamily::All : SubsetFamily::Odd);
  std::vector<BasicSignedSum<DoubleDouble>> block(kBlock);
  std::vector<DoubleDouble> deltas(kBlock);
  std::vector<double> weights(kBlock);
  DoubleDouble total;
  std::uint64_t walls = 0;
  while (const std::size_t count = stream.next_block(block)) {
    for (std::size_t j = 0; j < count; ++j) {
      deltas[j] = block[j].delta;
      weights[j] = (even && block[j].parity()) ? -1.0 : 1.0;
      if (dd::frac_turns(block[j].delta).hi == 0.0) ++walls;
    }
    total += kernels::periodic_polynomial_sum(std::span(deltas).first(count),
                                              std::span(weights).first(count), coeffs);
  }

  double scale = std::pow(kTwoPi, static_cast<double>(n - 3));
  for (std::size_t k = 2; k <= n - 2; ++k) scale /= static_cast<double>(k);
  if (even) scale /= 2.0;

  VolumeResult result;
  result.method = Method::ClosedForm;
  result.value = scale * total.value();
  result.terms = stream.size();
  result.wall_subsets = walls;
  result.feasibility = spherical_feasibility(r);
  // B_1 is the only degree whose periodic extension jumps at integers.
  if (n == 3 && walls > 0 && result.feasibility.verdict == Verdict::Interior) {
    result.feasibility.verdict = Verdict::Boundary;
  }
  return result;
}

}  // namespace polyvol
