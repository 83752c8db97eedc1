#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eulerprod/core.hpp"

namespace eulerprod {

struct Term {
  long long coefficient = 0;
  ExponentVector exponent;  // length n+1
};

/// h = 1 + sum_j a_j X^{alpha_j} in the variables X1..X{n+1}.
///
/// Terms are kept in canonical order (see grlex_before); the constant 1 is
/// implicit. A polynomial with no terms is the constant 1.
class SparsePolynomial {
 public:
  SparsePolynomial() = default;
  /// Validates and sorts. Throws on zero coefficients, zero or repeated
  /// exponents, negative entries or a wrong exponent length.
  SparsePolynomial(int n, std::vector<Term> terms);

  int n() const { return n_; }
  int num_vars() const { return n_ + 1; }
  std::size_t size() const { return terms_.size(); }  // r
  bool is_one() const { return terms_.empty(); }

  const std::vector<Term>& terms() const { return terms_; }
  const Term& term(std::size_t j) const;
  long long coefficient(std::size_t j) const { return term(j).coefficient; }
  const ExponentVector& exponent(std::size_t j) const { return term(j).exponent; }
  /// alpha_{(n)j}: the first n entries of column j.
  ExponentVector head(std::size_t j) const { return exponent(j).head(n_); }
  /// alpha_{n+1,j}
  long long last(std::size_t j) const { return exponent(j)(n_); }

  /// (n+1) x r exponent matrix.
  ExponentMatrix alpha() const;

  /// Index of the term with this exponent, if any.
  std::optional<std::size_t> find(const ExponentVector& exponent) const;

  /// Standing assumption alpha_{(n)j} != 0 for all j.
  bool alpha_n_nonzero() const { return alpha_n_nonzero_; }

  long long max_degree() const;

  std::string to_string() const;

  friend bool operator==(const SparsePolynomial& a, const SparsePolynomial& b);

 private:
  int n_ = 1;
  std::vector<Term> terms_;
  bool alpha_n_nonzero_ = true;
};

/// Integer coefficients, constant term first.
struct UnivariatePolynomial {
  std::vector<BigInt> coefficients;

  UnivariatePolynomial() = default;
  explicit UnivariatePolynomial(std::vector<BigInt> c);
  static UnivariatePolynomial from_ints(std::initializer_list<long long> c);

  int degree() const;  // -1 for the zero polynomial
  bool is_zero() const { return coefficients.empty(); }
  bool is_constant() const { return degree() <= 0; }
  BigInt operator[](std::size_t i) const;
  void trim();

  std::string to_string(char variable = 'T') const;
  friend bool operator==(const UnivariatePolynomial&, const UnivariatePolynomial&) = default;
};

UnivariatePolynomial operator*(const UnivariatePolynomial& a, const UnivariatePolynomial& b);
UnivariatePolynomial derivative(const UnivariatePolynomial& f);
/// gcd over Q, returned as a primitive integer polynomial with positive
/// leading coefficient (constant 1 when coprime).
UnivariatePolynomial polynomial_gcd(const UnivariatePolynomial& a, const UnivariatePolynomial& b);
bool is_squarefree(const UnivariatePolynomial& f);
/// f / gcd(f, f'), normalized so the constant term is positive.
UnivariatePolynomial squarefree_part(const UnivariatePolynomial& f);
/// Exact quotient over Z when b divides a, otherwise nullopt.
std::optional<UnivariatePolynomial> exact_divide(const UnivariatePolynomial& a,
                                                 const UnivariatePolynomial& b);
/// Complex roots via the companion matrix.
std::vector<Complex> roots(const UnivariatePolynomial& f);
std::vector<Complex> roots(const std::vector<Complex>& coefficients);

/// Grammar: optional sign, terms joined by + or -, each term a product of
/// integers and powers X<k>^<e> with 1 <= k <= n+1.
SparsePolynomial parse_polynomial(std::string_view text, int n);

Complex evaluate(const SparsePolynomial& h, const VectorXc& x);

SparsePolynomial operator*(const SparsePolynomial& a, const SparsePolynomial& b);

/// Indices j with alpha_j on the rational ray through alpha_e (Lambda_e).
std::vector<std::size_t> ray_indices(const SparsePolynomial& h, std::size_t e);

/// [h]_e: the terms on the ray of alpha_e plus the constant 1.
SparsePolynomial main_part(const SparsePolynomial& h, std::size_t e);

struct RayReduction {
  UnivariatePolynomial polynomial;  // ~[h]_e(T)
  ExponentVector primitive;         // alpha_e hat
};

/// Writes h_main (all terms on the ray of `ray`) as a polynomial in
/// T = X^{primitive}. Throws NonCollinearTerm otherwise.
RayReduction ray_reduce(const SparsePolynomial& h_main, const ExponentVector& ray);

/// ray_reduce(main_part(h, e), alpha_e).
RayReduction reduced_main_part(const SparsePolynomial& h, std::size_t e);

/// Substitutes T = X^{primitive}; inverse of ray_reduce.
SparsePolynomial substitute_ray(const UnivariatePolynomial& f, const ExponentVector& primitive,
                                int n);

/// Permutes the first n variables: X_i -> X_{perm[i]}.
SparsePolynomial permute_variables(const SparsePolynomial& h, const std::vector<int>& perm);

/// Rebuilds h from its terms taken in the given order (canonicalization
/// restores the term order; used for invariance checks).
SparsePolynomial reorder_terms(const SparsePolynomial& h, const std::vector<std::size_t>& order);

}  // namespace eulerprod
