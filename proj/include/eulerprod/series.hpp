#pragma once

#include <map>

#include "eulerprod/core.hpp"
#include "eulerprod/poly.hpp"

namespace eulerprod {

/// Exact integer power series in `vars` variables, truncated above total
/// degree `degree_bound`. Only nonzero coefficients are stored.
class TruncatedSeries {
 public:
  TruncatedSeries(int vars, int degree_bound);  // the series 1

  static TruncatedSeries from_polynomial(const SparsePolynomial& h, int degree_bound);

  int vars() const { return vars_; }
  int degree_bound() const { return degree_bound_; }
  const std::map<MultiIndex, BigInt>& coefficients() const { return coefficients_; }
  BigInt coefficient(const MultiIndex& monomial) const;

  /// *this *= (1 - X^lambda)^exponent, any integer exponent.
  void multiply_binomial_power(const MultiIndex& lambda, const BigInt& exponent);

  TruncatedSeries& operator*=(const TruncatedSeries& other);

  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a.degree_bound_ == b.degree_bound_ && a.coefficients_ == b.coefficients_;
  }

 private:
  void add(const MultiIndex& monomial, const BigInt& value);

  int vars_;
  int degree_bound_;
  std::map<MultiIndex, BigInt> coefficients_;
};

int degree(const MultiIndex& m);

}  // namespace eulerprod
