#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "polyvol/rational.hpp"

namespace polyvol {

inline constexpr std::size_t kMinSides = 3;
inline constexpr std::size_t kMaxSides = 24;

enum class Space { Spherical, Euclidean };

std::string_view to_string(Space space);

/// Side-lengths r = (r_1, ..., r_n) of a polygon in S^3 (radians, each in
/// (0, pi)) or E^3 (positive lengths).
///
/// Spherical side-lengths may additionally carry their exact value as a
/// rational multiple of pi, which enables exact evaluation.
class SideLengths {
 public:
  static SideLengths spherical(std::vector<double> values);
  static SideLengths euclidean(std::vector<double> values);
  /// r_i = pi * multiples[i]; each multiple must lie strictly in (0, 1).
  static SideLengths spherical_pi_multiples(std::vector<Rational> multiples);

  Space space() const { return space_; }
  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  double perimeter() const;

  bool has_exact_form() const { return pi_multiples_.has_value(); }
  /// Present only for sides built with spherical_pi_multiples().
  const std::optional<std::vector<Rational>>& pi_multiples() const { return pi_multiples_; }

 private:
  SideLengths(Space space, std::vector<double> values) : space_(space), values_(std::move(values)) {}

  Space space_;
  std::vector<double> values_;
  std::optional<std::vector<Rational>> pi_multiples_;
};

enum class Verdict { Interior, Boundary, Empty };

std::string_view to_string(Verdict verdict);

/// Outcome of a nonemptiness test for the moduli space.
///
/// Spherical margins are r_Ibar + (|I|-1) pi - r_I over odd-cardinality I;
/// Euclidean margin is perimeter - 2 max r_i. Witnesses are subsets (bit i
/// set for side i) whose inequality is tight (Boundary) or violated (Empty),
/// most violated first, capped at kMaxWitnesses.
struct FeasibilityReport {
  static constexpr std::size_t kMaxWitnesses = 16;

  Verdict verdict = Verdict::Interior;
  double min_margin = 0.0;
  std::vector<std::uint32_t> witnesses;
};

/// 0-based indices of the bits set in a subset mask.
std::vector<int> subset_indices(std::uint32_t subset);

enum class Method { Series, ClosedForm, ExactClosedForm };

std::string_view to_string(Method method);

struct VolumeResult {
  double value = 0.0;
  Method method = Method::ClosedForm;
  /// Rigorous bound on |value - exact| from truncation; zero for closed forms.
  double error_bound = 0.0;
  FeasibilityReport feasibility;
  /// Exact mode only: value = exact_coefficient * pi^pi_power.
  std::optional<Rational> exact_coefficient;
  int pi_power = 0;
  /// Series: number of terms summed. Closed form: number of subsets visited.
  std::uint64_t terms = 0;
  /// Closed form: subsets whose (r_I - r_Ibar) / 2 pi is an integer.
  std::uint64_t wall_subsets = 0;
};

}  // namespace polyvol
