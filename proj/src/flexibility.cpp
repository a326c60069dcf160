#include "polyvol/flexibility.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "polyvol/bernoulli.hpp"
#include "polyvol/compensated.hpp"
#include "polyvol/double_double.hpp"
#include "polyvol/error.hpp"
#include "polyvol/rational.hpp"
#include "polyvol/series.hpp"
#include "polyvol/side_lengths.hpp"
#include "polyvol/spherical.hpp"

namespace polyvol {
namespace {

constexpr double kPi = std::numbers::pi;
// Step for the central differences that stand in for conditionally convergent series.
constexpr double kDifferenceStep = 1e-5;

double spherical_volume(std::span<const double> x) {
  return spherical_closed_form(SideLengths::spherical({x.begin(), x.end()})).value;
}

double spread(std::span<const double> x) {
  const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
  return *hi - *lo;
}

void require_open_interval(double x) {
  if (!(x > 0.0 && x < kPi)) throw Error(ErrorKind::Domain, "side-length must lie in (0, pi)");
}

// Uniform in (0, 1), never 0.
double unit_open(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1p-53;
}

// Exact derivative of the closed form along the diagonal, V_n(x) = V(x, ..., x).
// Subsets of size c share r_I - r_Ibar = (2c - n) x, and
// d/dx B_d({a x / 2 pi}) = d B_{d-1}({a x / 2 pi}) a / 2 pi, continuous for d >= 3.
double regular_closed_form_derivative(int n, double x) {
  const int degree = n - 2;
  const bool even = n % 2 == 0;
  const auto coeffs = BernoulliTable::shared().coefficients_dd(degree - 1);
  DoubleDouble total;
  for (int c = 0; c <= n; ++c) {
    if (!even && c % 2 == 0) continue;
    const int a = 2 * c - n;
    if (a == 0) continue;
    const DoubleDouble f = dd::frac_turns(dd::two_prod(static_cast<double>(a), x));
    DoubleDouble p = coeffs.back();
    for (std::size_t j = coeffs.size() - 1; j-- > 0;) p = dd::add(dd::mul(p, f), coeffs[j]);
    const double weight = to_double(binomial(static_cast<unsigned>(n), static_cast<unsigned>(c))) *
                          static_cast<double>(a) * ((even && c % 2 == 1) ? -1.0 : 1.0);
    total = dd::add(total, dd::mul(p, DoubleDouble(weight)));
  }
  // (2 pi)^(n-3) / ((n-2)! [2 if even]) * d / (2 pi) = (2 pi)^(n-4) / ((n-3)! [2 if even]).
  double scale = std::pow(2.0 * kPi, static_cast<double>(n - 4));
  for (int k = 2; k <= n - 3; ++k) scale /= static_cast<double>(k);
  if (even) scale /= 2.0;
  return scale * total.value();
}

}  // namespace

std::vector<double> averaging_step(std::span<const double> x) {
  std::vector<double> next(x.begin(), x.end());
  if (next.empty()) return next;
  const auto lo = static_cast<std::size_t>(std::min_element(x.begin(), x.end()) - x.begin());
  const auto hi = static_cast<std::size_t>(std::max_element(x.begin(), x.end()) - x.begin());
  if (x[lo] == x[hi]) return next;
  const double mean = (x[lo] + x[hi]) / 2.0;
  next[lo] = mean;
  next[hi] = mean;
  return next;
}

SegmentQuery SegmentQuery::along(std::vector<double> x, double t) {
  SegmentQuery q;
  q.max_index = static_cast<std::size_t>(std::max_element(x.begin(), x.end()) - x.begin());
  q.min_index = static_cast<std::size_t>(std::min_element(x.begin(), x.end()) - x.begin());
  q.base = std::move(x);
  q.t = t;
  return q;
}

std::vector<double> SegmentQuery::point(double at) const {
  std::vector<double> y = base;
  if (max_index == min_index) return y;
  const double half_gap = (base[max_index] - base[min_index]) / 2.0;
  y[max_index] = base[max_index] - at * half_gap;
  y[min_index] = base[min_index] + at * half_gap;
  return y;
}

double segment_derivative(const SegmentQuery& q, double tol) {
  const std::size_t n = q.base.size();
  if (n < 4 || n > kMaxSides) throw Error(ErrorKind::OutOfRange, "segment derivative needs 4 <= n <= 24");
  if (q.max_index >= n || q.min_index >= n) throw Error(ErrorKind::Domain, "segment index out of range");
  if (!(q.t >= 0.0 && q.t <= 1.0)) throw Error(ErrorKind::Domain, "segment parameter must lie in [0, 1]");
  for (double v : q.base) require_open_interval(v);
  const auto [lo, hi] = std::minmax_element(q.base.begin(), q.base.end());
  if (q.base[q.max_index] != *hi || q.base[q.min_index] != *lo) {
    throw Error(ErrorKind::Domain, "segment endpoints must be the max and min coordinates");
  }

  if (!(tol > 0.0)) throw Error(ErrorKind::Domain, "tolerance must be positive");

  const double gap = q.base[q.max_index] - q.base[q.min_index];
  if (gap == 0.0) return 0.0;

  if (n == 4) {
    // Keep both probe points inside (0, pi): the moving coordinates shift by h gap / 2.
    const double room = std::min(kPi - q.base[q.max_index], q.base[q.min_index]) / gap;
    const double h = std::min(kDifferenceStep, room);
    const double scale = kPi / std::ldexp(1.0, static_cast<int>(n) - 1);
    const double ahead = spherical_volume(q.point(q.t + h));
    const double behind = spherical_volume(q.point(q.t - h));
    return scale * (ahead - behind) / (2.0 * h);
  }

  std::vector<double> angles;
  angles.reserve(n - 1);
  angles.push_back(gap * (1.0 - q.t));
  for (std::size_t i = 0; i < n; ++i) {
    if (i != q.max_index && i != q.min_index) angles.push_back(q.base[i]);
  }
  return sine_product_series(angles, static_cast<int>(n) - 3, gap / 2.0, tol).value;
}

OptimizerTrace maximize_flexibility(std::size_t n, double perimeter, std::span<const double> start, double tol) {
  if (n < kMinSides || n > kMaxSides) throw Error(ErrorKind::OutOfRange, "n must be in [3, 24]");
  if (!(perimeter > 0.0 && perimeter < static_cast<double>(n) * kPi)) {
    throw Error(ErrorKind::Domain, "perimeter must lie in (0, n pi)");
  }
  if (start.size() != n) throw Error(ErrorKind::Domain, "start must have n coordinates");
  CompensatedSum sum;
  for (double v : start) {
    require_open_interval(v);
    sum += v;
  }
  if (std::fabs(sum.value() - perimeter) > 1e-9 * std::max(1.0, perimeter)) {
    throw Error(ErrorKind::Domain, "start coordinates must sum to the perimeter");
  }
  if (!(tol >= 0.0)) throw Error(ErrorKind::Domain, "tolerance must be non-negative");

  OptimizerTrace trace;
  trace.perimeter = perimeter;
  std::vector<double> x(start.begin(), start.end());
  trace.iterates.push_back(x);
  trace.volumes.push_back(spherical_volume(x));
  while (spread(x) > tol && trace.iterations < kMaxAveragingSteps) {
    x = averaging_step(x);
    ++trace.iterations;
    trace.iterates.push_back(x);
    trace.volumes.push_back(spherical_volume(x));
  }
  trace.converged = spread(x) <= tol;
  return trace;
}

std::vector<double> random_simplex_point(std::size_t n, double perimeter, std::uint64_t seed) {
  if (n < kMinSides || n > kMaxSides) throw Error(ErrorKind::OutOfRange, "n must be in [3, 24]");
  const double capacity = static_cast<double>(n) * kPi;
  if (!(perimeter > 0.0 && perimeter < capacity)) throw Error(ErrorKind::Domain, "perimeter must lie in (0, n pi)");

  // Sample whichever of x or its slack pi - x has the smaller total so the
  // cap at pi rejects less often.
  const bool use_slack = perimeter > capacity / 2.0;
  const double total = use_slack ? capacity - perimeter : perimeter;
  std::mt19937_64 rng(seed);
  std::vector<double> e(n);
  for (int attempt = 0; attempt < 10'000'000; ++attempt) {
    double norm = 0.0;
    for (double& v : e) {
      v = -std::log(unit_open(rng));
      norm += v;
    }
    bool ok = true;
    for (double& v : e) {
      v = total * v / norm;
      if (!(v > 0.0 && v < kPi)) ok = false;
    }
    if (!ok) continue;
    if (use_slack) {
      for (double& v : e) v = kPi - v;
    }
    return e;
  }
  throw Error(ErrorKind::Domain, "could not sample a start point for this perimeter");
}

double regular_volume(int n, double x, double tol) {
  if (n < 4 || n > static_cast<int>(kMaxSides)) throw Error(ErrorKind::OutOfRange, "regular volume series needs 4 <= n <= 24");
  require_open_interval(x);
  const std::vector<double> angles(static_cast<std::size_t>(n), x);
  return sine_product_series(angles, n - 2, std::ldexp(1.0, n - 1) / kPi, tol).value;
}

double regular_volume_derivative(int n, double x, double tol) {
  if (n < 4 || n > static_cast<int>(kMaxSides)) throw Error(ErrorKind::OutOfRange, "regular volume derivative needs 4 <= n <= 24");
  require_open_interval(x);
  if (!(tol > 0.0)) throw Error(ErrorKind::Domain, "tolerance must be positive");
  if (n == 4) {
    const auto size = static_cast<std::size_t>(n);
    const double h = std::min({kDifferenceStep, x / 2.0, (kPi - x) / 2.0});
    const double ahead = spherical_volume(std::vector<double>(size, x + h));
    const double behind = spherical_volume(std::vector<double>(size, x - h));
    return (ahead - behind) / (2.0 * h);
  }
  if (n == 5) return regular_closed_form_derivative(n, x);
  std::vector<double> angles(static_cast<std::size_t>(n) - 2, x);
  angles.push_back(2.0 * x);
  return sine_product_series(angles, n - 3, std::ldexp(1.0, n - 2) * n / kPi, tol).value;
}

}  // namespace polyvol
