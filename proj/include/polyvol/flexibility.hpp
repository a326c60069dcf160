#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace polyvol {

/// Replaces the smallest and largest coordinates by their mean. Ties pick the
/// lowest index. A constant vector is a fixed point.
std::vector<double> averaging_step(std::span<const double> x);

/// Point l(t) on the segment that moves x_max and x_min towards their mean:
/// l(t)_M = x_M - t (x_M - x_m)/2, l(t)_m = x_m + t (x_M - x_m)/2.
struct SegmentQuery {
  std::vector<double> base;
  std::size_t max_index = 0;
  std::size_t min_index = 0;
  double t = 0.0;

  /// Picks the max and min indices of x (lowest index on ties).
  static SegmentQuery along(std::vector<double> x, double t);

  std::vector<double> point(double at) const;
};

/// Derivative along l(t) of f = sum_k prod_i sin(k x_i) / k^(n-2):
/// (x_M - x_m) sum_k sin(k (x_M - x_m)(1-t)) prod_{i != M,m} sin(k x_i) / (2 k^(n-3)).
/// For n = 4 the series is only conditionally convergent, so f is
/// differenced numerically from the closed form instead.
double segment_derivative(const SegmentQuery& q, double tol);

struct OptimizerTrace {
  std::vector<std::vector<double>> iterates;
  std::vector<double> volumes;
  double perimeter = 0.0;
  bool converged = false;
  std::size_t iterations = 0;
};

inline constexpr double kDefaultFlexibilityTol = 1e-10;
inline constexpr std::size_t kMaxAveragingSteps = 100000;

/// Runs averaging_step from `start` until max - min <= tol, recording the
/// spherical closed-form volume of every iterate.
OptimizerTrace maximize_flexibility(std::size_t n, double perimeter, std::span<const double> start,
                                    double tol = kDefaultFlexibilityTol);

/// Uniform point on {sum x = perimeter, 0 < x_i < pi}, deterministic in seed.
std::vector<double> random_simplex_point(std::size_t n, double perimeter, std::uint64_t seed);

/// V_n(x) = (2^(n-1)/pi) sum_k (sin kx)^n / k^(n-2), n >= 4.
double regular_volume(int n, double x, double tol);

/// V_n'(x) = (2^(n-2) n/pi) sum_k (sin kx)^(n-2) sin(2kx) / k^(n-3) for n >= 6.
/// For n = 5 that series needs ~1/tol terms, so the closed form is
/// differentiated exactly instead and tol only has to be positive. For n = 4,
/// where V_4 has a kink at pi/2, a central difference of the closed form is used.
double regular_volume_derivative(int n, double x, double tol);

}  // namespace polyvol
