#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "polyvol/error.hpp"
#include "polyvol/flexibility.hpp"
#include "polyvol/series.hpp"
#include "polyvol/spherical.hpp"

namespace polyvol {
namespace {

constexpr double kPi = std::numbers::pi;

double trig_sum_at(const std::vector<double>& x, double tol) {
  return trig_sum(SideLengths::spherical(x), tol);
}

double volume_at(const std::vector<double>& x) {
  return spherical_closed_form(SideLengths::spherical(x)).value;
}

std::vector<double> random_point(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.05, kPi - 0.05);
  std::vector<double> x(n);
  for (auto& v : x) v = u(rng);
  return x;
}

// Random x where the derivative along l(t) is a nonzero smooth function:
// the reduced polygon is strictly feasible and no wall is near l(t).
SegmentQuery random_segment_query(std::mt19937_64& rng, std::size_t n, double t) {
  while (true) {
    auto q = SegmentQuery::along(random_point(rng, n), t);
    std::vector<double> reduced{(q.base[q.max_index] - q.base[q.min_index]) * (1.0 - t)};
    for (std::size_t i = 0; i < n; ++i) {
      if (i != q.max_index && i != q.min_index) reduced.push_back(q.base[i]);
    }
    if (reduced[0] <= 0.05) continue;
    if (spherical_feasibility(SideLengths::spherical(reduced)).min_margin < 0.1) continue;
    std::vector<double> direction(n, 0.0);
    direction[q.max_index] = -1.0;
    direction[q.min_index] = 1.0;
    if (testing::wall_distance(q.point(t), direction) < 1e-3) continue;
    return q;
  }
}

TEST(AveragingStep, Examples) {
  EXPECT_EQ(averaging_step(std::vector<double>{0.5, 0.5, 0.5, 1.5}), (std::vector<double>{1.0, 0.5, 0.5, 1.0}));
  const std::vector<double> fixed{0.75, 0.75, 0.75, 0.75};
  EXPECT_EQ(averaging_step(fixed), fixed);
  // First index wins ties on both ends.
  EXPECT_EQ(averaging_step(std::vector<double>{2.0, 1.0, 2.0, 1.0}), (std::vector<double>{1.5, 1.5, 2.0, 1.0}));
}

TEST(AveragingStep, IteratesToRegularPoint) {
  std::vector<double> x{0.5, 0.5, 0.5, 1.5};
  for (int k = 0; k < 200; ++k) x = averaging_step(x);
  for (double v : x) EXPECT_NEAR(v, 0.75, 1e-15);
}

TEST(SegmentQuery, PointMovesOnlyExtremes) {
  const auto q = SegmentQuery::along({0.4, 2.0, 1.0, 0.4, 2.0}, 0.0);
  EXPECT_EQ(q.max_index, 1u);
  EXPECT_EQ(q.min_index, 0u);
  const auto y = q.point(0.5);
  EXPECT_DOUBLE_EQ(y[1], 2.0 - 0.5 * 0.8);
  EXPECT_DOUBLE_EQ(y[0], 0.4 + 0.5 * 0.8);
  EXPECT_EQ(y[2], 1.0);
  EXPECT_EQ(y[4], 2.0);
  EXPECT_DOUBLE_EQ(q.point(1.0)[0], q.point(1.0)[1]);
}

TEST(SegmentDerivative, ConstantVectorIsZero) {
  EXPECT_EQ(segment_derivative(SegmentQuery::along(std::vector<double>(6, 1.1), 0.3), 1e-10), 0.0);
  EXPECT_EQ(segment_derivative(SegmentQuery::along(std::vector<double>(4, 1.1), 0.3), 1e-10), 0.0);
}

TEST(SegmentDerivative, MatchesFiniteDifferenceOfTrigSum) {
  std::mt19937_64 rng(61);
  for (std::size_t n : {4u, 5u, 6u, 6u, 7u, 8u}) {
    const auto q = random_segment_query(rng, n, 0.3);
    const double tol = n == 5 ? 1e-8 : 1e-10;
    const double got = segment_derivative(q, tol);
    double fd = 0.0;
    if (n == 4) {
      // The series for n = 4 converges too slowly; difference the closed form instead.
      fd = testing::central_difference([&](double t) { return volume_at(q.point(t)); }, q.t, 1e-5) * kPi / 8.0;
    } else {
      fd = testing::central_difference([&](double t) { return trig_sum_at(q.point(t), 1e-13); }, q.t, 1e-5);
    }
    EXPECT_NEAR(got, fd, 1e-6 * std::fabs(fd)) << "n=" << n;
  }
}

TEST(SegmentDerivative, NonNegativeOnFeasibleSegments) {
  std::mt19937_64 rng(67);
  int checked = 0;
  while (checked < 8) {
    const std::size_t n = 6 + checked % 3;
    const auto x = random_point(rng, n);
    if (spherical_feasibility(SideLengths::spherical(x)).verdict != Verdict::Interior) continue;
    for (int j = 0; j <= 10; ++j) {
      EXPECT_GE(segment_derivative(SegmentQuery::along(x, j / 10.0), 1e-10), -1e-9);
    }
    ++checked;
  }
}

TEST(SegmentDerivative, Errors) {
  EXPECT_THROW(segment_derivative(SegmentQuery::along({1.0, 1.0, 2.0}, 0.5), 1e-8), Error);
  EXPECT_THROW(segment_derivative(SegmentQuery::along({1.0, 1.0, 2.0, 1.5, 0.7}, 1.5), 1e-8), Error);
  auto q = SegmentQuery::along({1.0, 1.0, 2.0, 1.5, 0.7}, 0.5);
  q.max_index = 0;
  EXPECT_THROW(segment_derivative(q, 1e-8), Error);
  EXPECT_THROW(segment_derivative(SegmentQuery::along({1.0, 1.0, 2.0, 1.5, 0.7}, 0.5), 1e-14), Error);
}

TEST(Maximize, QuadrilateralExample) {
  const std::vector<double> start{0.5, 0.5, 0.5, 1.5};
  const auto trace = maximize_flexibility(4, 3.0, start);
  EXPECT_TRUE(trace.converged);
  for (double v : trace.iterates.back()) EXPECT_NEAR(v, 0.75, 1e-10);
  for (std::size_t k = 1; k < trace.volumes.size(); ++k) EXPECT_GE(trace.volumes[k], trace.volumes[k - 1] - 1e-9);
  EXPECT_EQ(trace.volumes.size(), trace.iterations + 1);
  EXPECT_EQ(trace.perimeter, 3.0);
}

TEST(Maximize, RegularStartTakesNoSteps) {
  const std::vector<double> start(6, 0.9);
  const auto trace = maximize_flexibility(6, 5.4, start);
  EXPECT_EQ(trace.iterations, 0u);
  EXPECT_TRUE(trace.converged);
  EXPECT_EQ(trace.iterates.size(), 1u);
}

TEST(Maximize, PentagonAtFourPiIsFlat) {
  const double eps = 1e-2;
  const double p = 4.0 * kPi;
  const double s = p / 5.0;
  const std::vector<double> start{s + eps, s - eps, s, s, s};
  const auto trace = maximize_flexibility(5, std::accumulate(start.begin(), start.end(), 0.0), start);
  EXPECT_TRUE(trace.converged);
  EXPECT_NEAR(trace.volumes.front(), trace.volumes.back(), 1e-8);
}

TEST(Maximize, Errors) {
  EXPECT_THROW(maximize_flexibility(4, 3.0, std::vector<double>{0.5, 0.5, 0.5, 1.0}), Error);
  EXPECT_THROW(maximize_flexibility(4, 3.0, std::vector<double>{0.5, 0.5, 2.0}), Error);
  EXPECT_THROW(maximize_flexibility(4, 4.0 * kPi, std::vector<double>{3.0, 3.0, 3.0, 3.0}), Error);
  EXPECT_THROW(maximize_flexibility(4, 3.0, std::vector<double>{-0.5, 1.0, 1.0, 1.5}), Error);
  EXPECT_THROW(maximize_flexibility(2, 1.0, std::vector<double>{0.5, 0.5}), Error);
}

TEST(RegularVolume, Values) {
  EXPECT_NEAR(regular_volume(4, kPi / 2, 1e-8), kPi, 1e-8);
  // Near zero V_n(x) behaves like the regular euclidean volume times x^(n-3);
  // for the unit hexagon that volume is 4.
  EXPECT_NEAR(regular_volume(6, 1e-3, 1e-15), 4e-9, 1e-14);
  EXPECT_NEAR(regular_volume(6, 1e-4, 1e-15), 4e-12, 1e-14);
  for (int n : {5, 6, 7}) {
    double best = -1.0;
    int arg = 0;
    for (int j = 1; j <= 99; ++j) {
      const double v = regular_volume(n, j * kPi / 100.0, 1e-9);
      if (v > best) {
        best = v;
        arg = j;
      }
    }
    EXPECT_EQ(arg, 50) << "n=" << n;
  }
}

TEST(RegularVolume, MatchesClosedForm) {
  for (int n : {5, 6, 9}) {
    for (double x : {0.4, 1.3, 2.2}) {
      EXPECT_NEAR(regular_volume(n, x, 1e-10), volume_at(std::vector<double>(static_cast<std::size_t>(n), x)), 2e-10);
    }
  }
}

TEST(RegularVolumeDerivative, Values) {
  for (int n : {4, 5, 6, 9}) EXPECT_NEAR(regular_volume_derivative(n, kPi / 2, 1e-10), 0.0, 1e-10) << "n=" << n;
  const double fd = testing::central_difference([](double x) { return regular_volume(6, x, 1e-13); }, 0.7, 1e-5);
  EXPECT_NEAR(regular_volume_derivative(6, 0.7, 1e-10), fd, 1e-6 * std::fabs(fd));
  EXPECT_LE(regular_volume_derivative(6, 2.5, 1e-10), 0.0);
  EXPECT_THROW(regular_volume_derivative(6, 0.0, 1e-10), Error);
  EXPECT_THROW(regular_volume_derivative(3, 1.0, 1e-10), Error);
  EXPECT_THROW(regular_volume(6, kPi, 1e-10), Error);
  EXPECT_THROW(regular_volume_derivative(5, 1.0, 0.0), Error);
}

TEST(RegularVolumeDerivative, QuadrilateralKink) {
  // V_4(x) = 2 min(x, pi - x): slopes +-2 off the kink, symmetric value 0 on it.
  EXPECT_NEAR(regular_volume_derivative(4, 1.0, 1e-8), 2.0, 1e-9);
  EXPECT_NEAR(regular_volume_derivative(4, 2.5, 1e-8), -2.0, 1e-9);
  EXPECT_NEAR(regular_volume_derivative(4, kPi / 2, 1e-8), 0.0, 1e-10);
  EXPECT_NEAR(regular_volume_derivative(4, 1e-7, 1e-8), 2.0, 1e-6);
}

TEST(RegularVolumeDerivative, PentagonClosedFormMatchesSeries) {
  // Slow but rigorous: the exponent-2 series at a loose tolerance.
  for (double x : {0.6, 1.9, 2.8}) {
    const double series_tol = 1e-5;
    std::vector<double> angles(3, x);
    angles.push_back(2.0 * x);
    const double series = sine_product_series(angles, 2, 8.0 * 5.0 / kPi, series_tol).value;
    EXPECT_NEAR(regular_volume_derivative(5, x, 1e-10), series, series_tol) << "x=" << x;
  }
}

TEST(RegularVolumeDerivative, SignPattern) {
  for (int n : {4, 5, 6, 7, 8}) {
    for (int j = 1; j < 60; ++j) {
      const double x = j * kPi / 60.0;
      const double d = regular_volume_derivative(n, x, 1e-10);
      if (x < kPi / 2) {
        EXPECT_GE(d, -1e-9) << "n=" << n << " x=" << x;
      }
      if (x > kPi / 2) {
        EXPECT_LE(d, 1e-9) << "n=" << n << " x=" << x;
      }
    }
  }
}

TEST(RegularVolumeDerivative, MatchesFiniteDifference) {
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> u(0.3, kPi - 0.3);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 5 + trial % 4;
    double x = 0.0;
    do {
      x = u(rng);
    } while (std::fabs(x - kPi / 2) < 0.05 ||
             spherical_feasibility(SideLengths::spherical(std::vector<double>(static_cast<std::size_t>(n), x)))
                     .min_margin < 0.1 ||
             testing::wall_distance(std::vector<double>(static_cast<std::size_t>(n), x),
                                    std::vector<double>(static_cast<std::size_t>(n), 1.0)) < 1e-3);
    const double fd = testing::central_difference([&](double y) { return regular_volume(n, y, 1e-13); }, x, 1e-5);
    EXPECT_NEAR(regular_volume_derivative(n, x, 1e-10), fd, 1e-6 * std::fabs(fd)) << "n=" << n << " x=" << x;
  }
}

TEST(FlexibilityProperty, SimplexMonotoneAndFast) {
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 24; ++trial) {
    const std::size_t n = 4 + static_cast<std::size_t>(trial % 5);
    const double upper = n % 2 == 0 ? static_cast<double>(n) * kPi : static_cast<double>(n - 1) * kPi;
    const double perimeter = std::uniform_real_distribution<double>(0.2, upper - 0.2)(rng);
    const auto start = random_simplex_point(n, perimeter, rng());
    const auto trace = maximize_flexibility(n, perimeter, start, 1e-10);
    ASSERT_TRUE(trace.converged);
    EXPECT_LE(trace.iterations, 64 * (n - 1));
    for (std::size_t k = 0; k < trace.iterates.size(); ++k) {
      const auto& x = trace.iterates[k];
      EXPECT_NEAR(std::accumulate(x.begin(), x.end(), 0.0), perimeter, 1e-12 * std::max(1.0, perimeter));
      for (double v : x) {
        EXPECT_GT(v, 0.0);
        EXPECT_LT(v, kPi);
      }
      if (k > 0) {
        EXPECT_GE(trace.volumes[k], trace.volumes[k - 1] - 1e-9);
      }
    }
    for (double v : trace.iterates.back()) EXPECT_NEAR(v, perimeter / static_cast<double>(n), 1e-10);
  }
}

TEST(FlexibilityProperty, RegularPointIsOptimal) {
  std::mt19937_64 rng(79);
  for (std::size_t n : {4u, 6u, 8u}) {
    for (int trial = 0; trial < 10; ++trial) {
      const double perimeter = std::uniform_real_distribution<double>(0.5, static_cast<double>(n) * kPi - 0.5)(rng);
      const double best = volume_at(std::vector<double>(n, perimeter / static_cast<double>(n)));
      const auto x = random_simplex_point(n, perimeter, rng());
      EXPECT_LE(volume_at(x), best + 1e-9);
    }
  }
}

TEST(RandomSimplexPoint, DeterministicAndInDomain) {
  for (double perimeter : {0.3, 3.0, 9.0, 14.0}) {
    const auto a = random_simplex_point(5, perimeter, 11);
    EXPECT_EQ(a, random_simplex_point(5, perimeter, 11));
    EXPECT_NE(a, random_simplex_point(5, perimeter, 12));
    EXPECT_NEAR(std::accumulate(a.begin(), a.end(), 0.0), perimeter, 1e-12 * perimeter);
    for (double v : a) {
      EXPECT_GT(v, 0.0);
      EXPECT_LT(v, kPi);
    }
  }
  EXPECT_THROW(random_simplex_point(5, 5.0 * kPi, 1), Error);
  EXPECT_THROW(random_simplex_point(5, 0.0, 1), Error);
}

}  // namespace
}  // namespace polyvol
