#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "polyvol/rational.hpp"

namespace polyvol::cli {

/// Comma-separated side-lengths. Tokens are decimals ("0.5", "1e-3"), plain
/// rationals ("1/3"), or rational multiples of pi ("pi", "pi/2", "3pi/7",
/// "2*pi/3", "3/4pi").
struct ParsedSides {
  std::vector<double> values;
  /// Set when every token is a multiple of pi; feeds exact mode.
  std::optional<std::vector<Rational>> pi_multiples;
};

/// Throws polyvol::Error(Domain) on malformed input.
ParsedSides parse_sides(std::string_view text);

}  // namespace polyvol::cli
