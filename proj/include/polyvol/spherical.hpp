#pragma once

#include "polyvol/side_lengths.hpp"

namespace polyvol {

/// Nonemptiness of the spherical moduli space: r_I <= r_Ibar + (|I|-1) pi for
/// every odd-cardinality I. Uses exact arithmetic when the sides carry
/// rational multiples of pi, otherwise a rounding-scaled tolerance decides
/// tightness.
FeasibilityReport spherical_feasibility(const SideLengths& r);

/// (2^(n-1)/pi) sum_k sin(k r_1)...sin(k r_n) / k^(n-2), truncated so the
/// tail bound is at most tol. Rejects n = 3.
VolumeResult witten_series(const SideLengths& r, double tol);

/// The bare sum sum_k sin(k r_1)...sin(k r_n) / k^(n-2), tail at most tol.
double trig_sum(const SideLengths& r, double tol);

/// Bernoulli closed form. Even n sums (-1)^|I| B_(n-2)({(r_I - r_Ibar)/2 pi})
/// over all I with factor (2 pi)^(n-3) / (2 (n-2)!); odd n sums over odd |I|
/// with factor (2 pi)^(n-3) / (n-2)!.
///
/// With `exact` set the sides must be rational multiples of pi; the result
/// then carries the rational c with value = c pi^(n-3).
VolumeResult spherical_closed_form(const SideLengths& r, bool exact = false);

}  // namespace polyvol
