// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <numbers>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "polyvol/euclidean.hpp"
#include "polyvol/flexibility.hpp"
#include "polyvol/kernels.hpp"
#include "polyvol/spherical.hpp"

namespace polyvol {
namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string format(const char* fmt, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

std::vector<double> uniform_point(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> x(n);
  for (auto& v : x) v = u(rng);
  return x;
}

Verdict spherical_verdict(const std::vector<double>& r) {
  return spherical_feasibility(SideLengths::spherical(r)).verdict;
}

double closed_volume(const std::vector<double>& r) { return spherical_closed_form(SideLengths::spherical(r)).value; }

Outcome evaluator_equivalence() {
  std::mt19937_64 rng(1001);
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  int cases = 0;
  while (cases < 200) {
    const std::size_t n = 4 + static_cast<std::size_t>(cases % 7);
    const auto r = uniform_point(rng, n, 0.05, kPi - 0.05);
    if (spherical_verdict(r) != Verdict::Interior) continue;
    const auto sides = SideLengths::spherical(r);
    const double series = witten_series(sides, 1e-8).value;
    const double closed = spherical_closed_form(sides).value;
    const double allowed = 2e-8 + 1e-8 * std::fabs(closed);
    worst = std::max(worst, std::fabs(series - closed) / allowed);
    ++cases;
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {worst <= 1.0 && seconds < 60.0,
          format("200 cases, worst error/allowance %.3g, %.1f s", worst, seconds)};
}

Outcome triangle_normalization() {
  std::mt19937_64 rng(1002);
  int interior = 0;
  int empty = 0;
  double worst = 0.0;
  while (interior < 50 || empty < 50) {
    const auto r = uniform_point(rng, 3, 0.01, kPi - 0.01);
    const Verdict v = spherical_verdict(r);
    if (v == Verdict::Interior && interior < 50) {
      worst = std::max(worst, std::fabs(closed_volume(r) - 1.0));
      ++interior;
    } else if (v == Verdict::Empty && empty < 50) {
      worst = std::max(worst, std::fabs(closed_volume(r)));
      ++empty;
    }
  }
  return {worst <= 1e-10, format("50 interior, 50 empty, worst deviation %.3g", worst)};
}

Outcome regular_euclidean_values() {
  bool pass = std::fabs(testing::regular_euclidean_oracle(4) - 2.0) <= 1e-15 &&
              std::fabs(testing::regular_euclidean_oracle(5) - 2.5) <= 1e-15;
  double worst = 0.0;
  for (int n = 4; n <= 20; ++n) {
    const double got = euclidean_closed_form(SideLengths::euclidean(std::vector<double>(n, 1.0))).value;
    const double want = testing::regular_euclidean_oracle(n);
    worst = std::max(worst, std::fabs(got - want) / std::fabs(want));
  }
  pass = pass && worst <= 1e-10;
  return {pass, format("n=4..20, spot values 2 and 5/2, worst relative error %.3g", worst)};
}

Outcome homogeneity() {
  std::mt19937_64 rng(1004);
  // The allowance scales with V(r), not with the lambda^(n-3) V(r) being
  // compared, so lambda stays within a factor of two of 1.
  std::uniform_real_distribution<double> lambda_dist(0.5, 2.0);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 4 + static_cast<std::size_t>(trial % 9);
    const auto r = SideLengths::euclidean(uniform_point(rng, n, 0.05, 2.0));
    const double lambda = lambda_dist(rng);
    const double v = euclidean_closed_form(r).value;
    const double scaled = euclidean_closed_form(scale(r, lambda)).value;
    const double error = std::fabs(scaled - std::pow(lambda, static_cast<double>(n) - 3.0) * v);
    worst = std::max(worst, error / (1e-9 * std::max(1.0, std::fabs(v))));
  }
  return {worst <= 1.0, format("100 cases, n=4..12, lambda in [1/2, 2], worst error/allowance %.3g", worst)};
}

Outcome small_sides() {
  std::mt19937_64 rng(1005);
  double worst = 0.0;
  int cases = 0;
  while (cases < 50) {
    const std::size_t n = 4 + static_cast<std::size_t>(cases % 9);
    auto r = uniform_point(rng, n, 0.05, 2.0);
    if (euclidean_feasibility(SideLengths::euclidean(r)).verdict != Verdict::Interior) continue;
    const double total = std::accumulate(r.begin(), r.end(), 0.0);
    for (auto& v : r) v *= 0.05 / total;
    const double e = euclidean_closed_form(SideLengths::euclidean(r)).value;
    const double s = closed_volume(r);
    worst = std::max(worst, std::fabs(s - e) / std::fabs(e));
    ++cases;
  }
  return {worst <= 1e-4, format("50 cases, n=4..12, perimeter 0.05, worst relative gap %.3g", worst)};
}

Outcome positivity() {
  std::mt19937_64 rng(1006);
  double lowest = INFINITY;
  for (int trial = 0; trial < 10000; ++trial) {
    const std::size_t n = 5 + static_cast<std::size_t>(trial % 8);
    const auto r = uniform_point(rng, n, 1e-6, kPi - 1e-6);
    lowest = std::min(lowest, trig_sum(SideLengths::spherical(r), 1e-10));
  }
  return {lowest >= -1e-9, format("10000 points, n=5..12, minimum %.3g", lowest)};
}

Outcome optimizer() {
  std::mt19937_64 rng(1007);
  int runs = 0;
  int failures = 0;
  std::size_t most_iterations = 0;
  while (runs < 50) {
    const std::size_t n = 4 + static_cast<std::size_t>(runs % 3);
    const double perimeter = std::uniform_real_distribution<double>(0.2, static_cast<double>(n) * kPi - 0.2)(rng);
    const double x_star = perimeter / static_cast<double>(n);
    if (spherical_verdict(std::vector<double>(n, x_star)) != Verdict::Interior) continue;
    const auto start = random_simplex_point(n, perimeter, rng());
    const OptimizerTrace trace = maximize_flexibility(n, perimeter, start, 1e-9);
    bool ok = trace.converged && trace.iterations <= 64 * (n - 1);
    for (std::size_t k = 1; k < trace.volumes.size(); ++k) ok = ok && trace.volumes[k] >= trace.volumes[k - 1] - 1e-9;
    for (double v : trace.iterates.back()) ok = ok && std::fabs(v - x_star) <= 1e-8;
    failures += ok ? 0 : 1;
    most_iterations = std::max(most_iterations, trace.iterations);
    ++runs;
  }
  return {failures == 0, format("50 runs, %d failing, at most %zu iterations", failures, most_iterations)};
}

// Counts sign changes, skipping values not certified away from zero.
int sign_changes(const std::vector<double>& values, double certainty) {
  int changes = 0;
  int last = 0;
  for (double v : values) {
    const int s = v > certainty ? 1 : (v < -certainty ? -1 : 0);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

Outcome regular_maximum() {
  constexpr double kDerivativeTol = 1e-11;
  bool pass = true;
  std::string detail;
  for (int n : {4, 5, 6}) {
    std::vector<double> volumes;
    std::vector<double> derivatives;
    std::size_t nearest = 0;
    for (int j = 1; j <= 999; ++j) {
      const double x = j * kPi / 1000.0;
      if (std::fabs(x - kPi / 2) < std::fabs((nearest + 1) * kPi / 1000.0 - kPi / 2)) nearest = volumes.size();
      volumes.push_back(closed_volume(std::vector<double>(static_cast<std::size_t>(n), x)));
      derivatives.push_back(regular_volume_derivative(n, x, kDerivativeTol));
    }
    const std::size_t argmax = std::max_element(volumes.begin(), volumes.end()) - volumes.begin();
    const int changes = sign_changes(derivatives, 10.0 * kDerivativeTol);
    const double at_half_pi = regular_volume_derivative(n, kPi / 2, kDerivativeTol);
    const bool ok = argmax == nearest && changes == 1 && std::fabs(at_half_pi) <= 1e-10;
    pass = pass && ok;
    detail += format("n=%d argmax %zu/%zu changes %d V'(pi/2) %.2g; ", n, argmax + 1, nearest + 1, changes, at_half_pi);
  }
  detail.resize(detail.size() - 2);
  return {pass, detail};
}

// Same conditions as the unit tests: the reduced polygon is strictly feasible
// and no wall is near the query, so the derivative is smooth there.
SegmentQuery random_segment_query(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> t_dist(0.05, 0.95);
  while (true) {
    const double t = t_dist(rng);
    auto q = SegmentQuery::along(uniform_point(rng, n, 0.05, kPi - 0.05), t);
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

// The regular polygon is strictly feasible, so V_n does not vanish nearby,
// and no wall is near x.
bool regular_point_smooth(int n, double x) {
  const std::vector<double> r(static_cast<std::size_t>(n), x);
  return spherical_feasibility(SideLengths::spherical(r)).min_margin >= 0.1 &&
         testing::wall_distance(r, std::vector<double>(static_cast<std::size_t>(n), 1.0)) >= 1e-3;
}

Outcome gradient_checks() {
  constexpr double kH = 1e-5;
  std::mt19937_64 rng(1009);
  double worst_segment = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 4 + static_cast<std::size_t>(trial % 5);
    const auto q = random_segment_query(rng, n);
    const double got = segment_derivative(q, n == 5 ? 1e-8 : 1e-10);
    double fd = 0.0;
    if (n == 4) {
      fd = testing::central_difference([&](double t) { return closed_volume(q.point(t)); }, q.t, kH) * kPi / 8.0;
    } else {
      fd = testing::central_difference(
          [&](double t) { return trig_sum(SideLengths::spherical(q.point(t)), 1e-13); }, q.t, kH);
    }
    worst_segment = std::max(worst_segment, std::fabs(got - fd) / std::fabs(fd));
  }

  std::uniform_real_distribution<double> x_dist(0.3, kPi - 0.3);
  double worst_regular = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 5 + trial % 4;
    double x = 0.0;
    do {
      x = x_dist(rng);
    } while (std::fabs(x - kPi / 2) < 0.05 || !regular_point_smooth(n, x));
    const double fd = testing::central_difference([&](double y) { return regular_volume(n, y, 1e-13); }, x, kH);
    worst_regular = std::max(worst_regular, std::fabs(regular_volume_derivative(n, x, 1e-10) - fd) / std::fabs(fd));
  }
  return {worst_segment <= 1e-6 && worst_regular <= 1e-6,
          format("100 segment queries worst %.3g, 100 regular queries worst %.3g", worst_segment, worst_regular)};
}

Outcome degenerate_pentagon() {
  const double x = 4.0 * kPi / 5.0;
  const std::vector<double> regular(5, x);
  // Zero-sum perturbation of size 1e-2 keeps the perimeter at 4 pi.
  const std::vector<double> perturbed{x + 1e-2, x - 1e-2, x + 5e-3, x - 5e-3, x};
  const double a = closed_volume(regular);
  const double b = closed_volume(perturbed);
  return {std::fabs(a - b) <= 1e-8, format("V(regular) %.3g, V(perturbed) %.3g", a, b)};
}

}  // namespace
}  // namespace polyvol

int main() {
  using polyvol::Outcome;
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"evaluator equivalence", polyvol::evaluator_equivalence},
      {"triangle normalization", polyvol::triangle_normalization},
      {"regular euclidean values", polyvol::regular_euclidean_values},
      {"homogeneity", polyvol::homogeneity},
      {"small-side agreement", polyvol::small_sides},
      {"positivity", polyvol::positivity},
      {"optimizer", polyvol::optimizer},
      {"regular maximum", polyvol::regular_maximum},
      {"gradient checks", polyvol::gradient_checks},
      {"degenerate pentagon", polyvol::degenerate_pentagon},
  };
  std::printf("kernel backend: %s\n", std::string(polyvol::kernels::to_string(polyvol::kernels::active_backend())).c_str());
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criteria[i].second();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %2zu %s: %s [%.1f s]\n", outcome.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                outcome.detail.c_str(), seconds);
    std::fflush(stdout);
    failures += outcome.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
