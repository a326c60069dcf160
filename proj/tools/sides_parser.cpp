#include "sides_parser.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <string>

#include "polyvol/error.hpp"

namespace polyvol::cli {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

[[noreturn]] void malformed(std::string_view token) {
  throw Error(ErrorKind::Domain, "malformed side-length '" + std::string(token) + "'");
}

double parse_decimal(std::string_view token) {
  double v = 0.0;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) malformed(token);
  return v;
}

Rational parse_pi_multiple(std::string_view token, std::size_t at) {
  std::string_view coeff = trim(token.substr(0, at));
  std::string_view divisor = trim(token.substr(at + 2));
  if (!coeff.empty() && coeff.back() == '*') coeff = trim(coeff.substr(0, coeff.size() - 1));
  Rational multiple = 1;
  try {
    if (coeff == "-") {
      multiple = -1;
    } else if (!coeff.empty()) {
      multiple = parse_rational(coeff);
    }
    if (!divisor.empty()) {
      if (divisor.front() != '/') malformed(token);
      const Rational d = parse_rational(trim(divisor.substr(1)));
      if (d == 0) malformed(token);
      multiple /= d;
    }
  } catch (const Error&) {
    malformed(token);
  }
  return multiple;
}

}  // namespace

ParsedSides parse_sides(std::string_view text) {
  ParsedSides out;
  std::vector<Rational> multiples;
  bool all_pi = true;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    const std::string_view token = trim(text.substr(start, comma == std::string_view::npos ? text.npos : comma - start));
    if (token.empty()) malformed(token);

    if (const auto at = token.find("pi"); at != std::string_view::npos) {
      const Rational m = parse_pi_multiple(token, at);
      multiples.push_back(m);
      out.values.push_back(std::numbers::pi * to_double(m));
    } else if (token.find('/') != std::string_view::npos) {
      all_pi = false;
      try {
        out.values.push_back(to_double(parse_rational(token)));
      } catch (const Error&) {
        malformed(token);
      }
    } else {
      all_pi = false;
      out.values.push_back(parse_decimal(token));
    }

    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (all_pi) out.pi_multiples = std::move(multiples);
  return out;
}

}  // namespace polyvol::cli
