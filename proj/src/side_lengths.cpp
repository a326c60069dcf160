#include "polyvol/side_lengths.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "polyvol/compensated.hpp"
#include "polyvol/error.hpp"

namespace polyvol {
namespace {

void check_count(std::size_t n) {
  if (n < kMinSides || n > kMaxSides) {
    throw Error(ErrorKind::OutOfRange, "number of sides must be in [3, 24], got " + std::to_string(n));
  }
}

}  // namespace

std::string_view to_string(Space space) {
  return space == Space::Spherical ? "spherical" : "euclidean";
}

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Interior: return "interior";
    case Verdict::Boundary: return "boundary";
    case Verdict::Empty: return "empty";
  }
  return "?";
}

std::string_view to_string(Method method) {
  switch (method) {
    case Method::Series: return "series";
    case Method::ClosedForm: return "closed";
    case Method::ExactClosedForm: return "exact";
  }
  return "?";
}

SideLengths SideLengths::spherical(std::vector<double> values) {
  check_count(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double r = values[i];
    if (!(r > 0.0 && r < std::numbers::pi)) {
      throw Error(ErrorKind::Domain,
                  "spherical side " + std::to_string(i + 1) + " must lie in (0, pi)");
    }
  }
  return SideLengths(Space::Spherical, std::move(values));
}

SideLengths SideLengths::euclidean(std::vector<double> values) {
  check_count(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double r = values[i];
    if (!(r > 0.0 && std::isfinite(r))) {
      throw Error(ErrorKind::Domain,
                  "euclidean side " + std::to_string(i + 1) + " must be positive and finite");
    }
  }
  return SideLengths(Space::Euclidean, std::move(values));
}

SideLengths SideLengths::spherical_pi_multiples(std::vector<Rational> multiples) {
  check_count(multiples.size());
  std::vector<double> values;
  values.reserve(multiples.size());
  for (std::size_t i = 0; i < multiples.size(); ++i) {
    if (multiples[i] <= 0 || multiples[i] >= 1) {
      throw Error(ErrorKind::Domain,
                  "spherical side " + std::to_string(i + 1) + " must lie in (0, pi)");
    }
    values.push_back(std::numbers::pi * to_double(multiples[i]));
  }
  SideLengths r(Space::Spherical, std::move(values));
  r.pi_multiples_ = std::move(multiples);
  return r;
}

double SideLengths::perimeter() const {
  CompensatedSum s;
  for (double r : values_) s += r;
  return s.value();
}

std::vector<int> subset_indices(std::uint32_t subset) {
  std::vector<int> out;
  for (int i = 0; subset != 0; ++i, subset >>= 1) {
    if (subset & 1u) out.push_back(i);
  }
  return out;
}

}  // namespace polyvol
