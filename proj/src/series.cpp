#include "eulerprod/series.hpp"

#include <numeric>

#include "eulerprod/error.hpp"
#include "eulerprod/exponent.hpp"

namespace eulerprod {

int degree(const MultiIndex& m) { return std::accumulate(m.begin(), m.end(), 0); }

TruncatedSeries::TruncatedSeries(int vars, int degree_bound) : vars_(vars), degree_bound_(degree_bound) {
  coefficients_[MultiIndex(static_cast<std::size_t>(vars), 0)] = 1;
}

TruncatedSeries TruncatedSeries::from_polynomial(const SparsePolynomial& h, int degree_bound) {
  TruncatedSeries s(h.num_vars(), degree_bound);
  for (const Term& t : h.terms()) {
    if (total_degree(t.exponent) <= degree_bound) s.add(to_multi_index(t.exponent), t.coefficient);
  }
  return s;
}

BigInt TruncatedSeries::coefficient(const MultiIndex& monomial) const {
  auto it = coefficients_.find(monomial);
  return it == coefficients_.end() ? BigInt(0) : it->second;
}

void TruncatedSeries::add(const MultiIndex& monomial, const BigInt& value) {
  if (value == 0) return;
  auto [it, inserted] = coefficients_.emplace(monomial, value);
  if (!inserted) {
    it->second += value;
    if (it->second == 0) coefficients_.erase(it);
  }
}

void TruncatedSeries::multiply_binomial_power(const MultiIndex& lambda, const BigInt& exponent) {
  if (static_cast<int>(lambda.size()) != vars_) throw Error(ErrorKind::InvalidArgument, "monomial has the wrong length");
  const int d = degree(lambda);
  if (d <= 0) throw Error(ErrorKind::ZeroExponentVector, "binomial factor with the zero monomial");
  if (exponent == 0) return;
  const int kmax = degree_bound_ / d;
  // (-1)^k C(g, k) with the generalized binomial coefficient.
  std::vector<BigInt> factor(static_cast<std::size_t>(kmax) + 1);
  BigInt binom = 1;
  factor[0] = 1;
  for (int k = 1; k <= kmax; ++k) {
    binom = binom * (exponent - (k - 1)) / k;
    factor[k] = (k % 2 == 0) ? binom : BigInt(-binom);
  }
  std::map<MultiIndex, BigInt> old;
  old.swap(coefficients_);
  for (const auto& [mono, value] : old) {
    const int base = degree(mono);
    MultiIndex shifted = mono;
    for (int k = 0; k <= kmax && base + k * d <= degree_bound_; ++k) {
      if (factor[k] != 0) add(shifted, value * factor[k]);
      for (std::size_t i = 0; i < shifted.size(); ++i) shifted[i] += lambda[i];
    }
  }
}

TruncatedSeries& TruncatedSeries::operator*=(const TruncatedSeries& other) {
  if (other.vars_ != vars_) throw Error(ErrorKind::InvalidArgument, "series have different variable counts");
  if (&other == this) {
    const TruncatedSeries copy = other;
    return *this *= copy;
  }
  std::map<MultiIndex, BigInt> old;
  old.swap(coefficients_);
  for (const auto& [a, va] : old) {
    const int da = degree(a);
    for (const auto& [b, vb] : other.coefficients_) {
      if (da + degree(b) > degree_bound_) continue;
      MultiIndex m = a;
      for (std::size_t i = 0; i < m.size(); ++i) m[i] += b[i];
      add(m, va * vb);
    }
  }
  return *this;
}

}  // namespace eulerprod
