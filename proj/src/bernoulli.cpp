#include "polyvol/bernoulli.hpp"

#include <cmath>
#include <string>

#include "polyvol/error.hpp"

namespace polyvol {

std::string to_string(const Rational& q) {
  const BigInt num = boost::multiprecision::numerator(q);
  const BigInt den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Rational parse_rational(std::string_view text) {
  auto parse_int = [&](std::string_view s) {
    std::size_t i = 0;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) i = 1;
    if (i == s.size()) throw Error(ErrorKind::Domain, "malformed rational '" + std::string(text) + "'");
    for (std::size_t j = i; j < s.size(); ++j) {
      if (s[j] < '0' || s[j] > '9') {
        throw Error(ErrorKind::Domain, "malformed rational '" + std::string(text) + "'");
      }
    }
    return BigInt(std::string(s[0] == '+' ? s.substr(1) : s));
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  const BigInt num = parse_int(text.substr(0, slash));
  const BigInt den = parse_int(text.substr(slash + 1));
  if (den == 0) throw Error(ErrorKind::Domain, "zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigInt c = 1;
  for (unsigned i = 1; i <= k; ++i) {
    c *= n - k + i;
    c /= i;
  }
  return c;
}

BigInt factorial(unsigned n) {
  BigInt f = 1;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return f;
}

BernoulliTable::BernoulliTable(int max_degree) : max_degree_(max_degree) {
  const auto size = static_cast<std::size_t>(max_degree) + 1;
  numbers_.reserve(size);
  // sum_{k=0}^{m} C(m+1, k) B_k = 0 for m >= 1.
  numbers_.emplace_back(1);
  for (int m = 1; m <= max_degree; ++m) {
    Rational acc = 0;
    for (int k = 0; k < m; ++k) acc += Rational(binomial(m + 1, k)) * numbers_[k];
    numbers_.push_back(-acc / (m + 1));
  }

  // B_n(x) = (B + x)^n: coefficient of x^j is C(n, j) B_{n-j}.
  coeffs_.resize(size);
  coeffs_double_.resize(size);
  coeffs_dd_.resize(size);
  for (int n = 0; n <= max_degree; ++n) {
    auto& c = coeffs_[n];
    c.reserve(n + 1);
    for (int j = 0; j <= n; ++j) c.push_back(Rational(binomial(n, j)) * numbers_[n - j]);
    auto& cd = coeffs_double_[n];
    cd.reserve(n + 1);
    for (const auto& q : c) cd.push_back(to_double(q));
    auto& cdd = coeffs_dd_[n];
    cdd.reserve(n + 1);
    for (const auto& q : c) cdd.push_back(to_double_double(q));
  }
}

BernoulliTable BernoulliTable::build(int max_degree) {
  if (max_degree < 0 || max_degree > kMaxBernoulliDegree) {
    throw Error(ErrorKind::OutOfRange,
                "Bernoulli degree must be in [0, " + std::to_string(kMaxBernoulliDegree) + "]");
  }
  return BernoulliTable(max_degree);
}

const BernoulliTable& BernoulliTable::shared() {
  static const BernoulliTable table = build(kMaxBernoulliDegree);
  return table;
}

void BernoulliTable::check_degree(int n) const {
  if (n < 0 || n > max_degree_) {
    throw Error(ErrorKind::OutOfRange, "Bernoulli degree " + std::to_string(n) + " exceeds table");
  }
}

const Rational& BernoulliTable::number(int n) const {
  check_degree(n);
  return numbers_[n];
}

std::span<const Rational> BernoulliTable::coefficients(int n) const {
  check_degree(n);
  return coeffs_[n];
}

std::span<const double> BernoulliTable::coefficients_double(int n) const {
  check_degree(n);
  return coeffs_double_[n];
}

std::span<const DoubleDouble> BernoulliTable::coefficients_dd(int n) const {
  check_degree(n);
  return coeffs_dd_[n];
}

double BernoulliTable::eval(int n, double x) const {
  check_degree(n);
  const auto& c = coeffs_double_[n];
  double acc = c.back();
  for (int j = n - 1; j >= 0; --j) acc = acc * x + c[j];
  return acc;
}

Rational BernoulliTable::eval(int n, const Rational& x) const {
  check_degree(n);
  const auto& c = coeffs_[n];
  Rational acc = c.back();
  for (int j = n - 1; j >= 0; --j) acc = acc * x + c[j];
  return acc;
}

double frac(double x) {
  static constexpr double kBelowOne = 0x1.fffffffffffffp-1;
  const double f = x - std::floor(x);
  return f < 1.0 ? f : kBelowOne;
}

Rational frac(const Rational& x) {
  const BigInt num = boost::multiprecision::numerator(x);
  const BigInt den = boost::multiprecision::denominator(x);
  BigInt r = num % den;
  if (r < 0) r += den;
  return Rational(r, den);
}

}  // namespace polyvol
