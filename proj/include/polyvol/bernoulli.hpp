#pragma once

#include <span>
#include <vector>

#include "polyvol/rational.hpp"

namespace polyvol {

inline constexpr int kMaxBernoulliDegree = 64;

/// Exact coefficients of the Bernoulli polynomials B_0 .. B_max_degree.
///
/// B_n(x) = sum_k C(n,k) B_k x^(n-k), where B_k = B_k(0) are the Bernoulli
/// numbers (B_1 = -1/2). Coefficients are stored in ascending powers of x.
/// A built table is immutable.
class BernoulliTable {
 public:
  /// Throws Error(OutOfRange) unless 0 <= max_degree <= kMaxBernoulliDegree.
  static BernoulliTable build(int max_degree);

  /// Shared table of the maximal degree, built on first use.
  static const BernoulliTable& shared();

  int max_degree() const { return max_degree_; }

  /// B_n(0).
  const Rational& number(int n) const;

  /// Coefficients of B_n, index j holds the coefficient of x^j.
  std::span<const Rational> coefficients(int n) const;
  std::span<const double> coefficients_double(int n) const;
  std::span<const DoubleDouble> coefficients_dd(int n) const;

  /// Horner evaluation of B_n.
  double eval(int n, double x) const;
  Rational eval(int n, const Rational& x) const;

 private:
  explicit BernoulliTable(int max_degree);
  void check_degree(int n) const;

  int max_degree_;
  std::vector<Rational> numbers_;
  std::vector<std::vector<Rational>> coeffs_;
  std::vector<std::vector<double>> coeffs_double_;
  std::vector<std::vector<DoubleDouble>> coeffs_dd_;
};

inline BernoulliTable build_table(int max_degree) { return BernoulliTable::build(max_degree); }

inline double eval_poly(const BernoulliTable& table, int n, double x) { return table.eval(n, x); }
inline Rational eval_poly(const BernoulliTable& table, int n, const Rational& x) {
  return table.eval(n, x);
}

/// x - floor(x), in [0,1). Values that round up to 1 are pulled back to the
/// largest double below 1.
double frac(double x);
Rational frac(const Rational& x);

}  // namespace polyvol
