#pragma once

#include "polyvol/side_lengths.hpp"

namespace polyvol {

/// Closure condition r_i <= sum_{j != i} r_j; margin is perimeter - 2 max r_i.
FeasibilityReport euclidean_feasibility(const SideLengths& r);

/// Closed-form volume of the Euclidean polygon space.
///
///   even n: -1/(4 (n-3)!) sum_I (-1)^|I| |r_I - r_Ibar|^(n-3)
///   odd n:  -1/(2 (n-3)!) sum_{|I| odd} sign(r_I - r_Ibar) (r_I - r_Ibar)^(n-3)
///
/// Triangles bypass the formula: 1 if Interior, 0 otherwise.
VolumeResult euclidean_closed_form(const SideLengths& r);

/// Volume for n unit sides,
/// -1/(2 (n-3)!) sum_{k=0}^{floor(n/2)} (-1)^k C(n,k) (n-2k)^(n-3),
/// summed in exact integers.
double regular_euclidean_volume(int n);

/// Multiplies every side by lambda > 0. Euclidean sides only.
SideLengths scale(const SideLengths& r, double lambda);

}  // namespace polyvol
