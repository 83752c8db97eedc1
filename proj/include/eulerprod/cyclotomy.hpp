#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "eulerprod/core.hpp"
#include "eulerprod/poly.hpp"

namespace eulerprod {

/// C(h) = 1 / sum_j |a_j|.
Rational distance_constant(const SparsePolynomial& h);

/// All beta in N^r with |beta| = k, in increasing lexicographic order.
std::vector<MultiIndex> compositions(std::size_t r, int k);

/// alpha * beta as a monomial in N^{n+1}.
MultiIndex monomial_of(const SparsePolynomial& h, const MultiIndex& beta);

/// Exponent gamma(beta) of the cyclotomic expansion
///   h = prod_beta (1 - X^{alpha beta})^{gamma(beta)},
/// from the Moebius/multinomial formula in exact integers.
/// Throws NonIntegerGamma if the division by |beta| is not exact.
BigInt gamma_exponent(const SparsePolynomial& h, const MultiIndex& beta);

struct ExpansionTable {
  int beta_bound = 0;
  std::map<MultiIndex, BigInt> entries;  // nonzero gamma only
  Rational distance_constant;

  BigInt gamma(const MultiIndex& beta) const;
  /// Lines "beta=(b1,...,br) gamma=g".
  std::string to_text() const;
};

struct ExpansionOptions {
  std::size_t entry_budget = 5'000'000;
  bool parallel = false;
};

/// gamma(beta) for 1 <= |beta| <= B. Throws ResourceLimit over budget.
ExpansionTable expansion_table(const SparsePolynomial& h, int B, const ExpansionOptions& options = {});

/// Same, restricted to beta supported on Lambda_e.
ExpansionTable main_part_expansion(const SparsePolynomial& h, std::size_t e, int B,
                                   const ExpansionOptions& options = {});

struct ExpansionCheck {
  bool passed = false;
  int degree_bound = 0;
  std::size_t factors = 0;  // beta with nonzero gamma used in the product
  std::optional<MultiIndex> first_mismatch;
  BigInt expected = 0;  // coefficient of h
  BigInt found = 0;     // coefficient of the truncated product
};

/// Multiplies (1 - X^{alpha beta})^{gamma(beta)} over all beta of degree
/// at most D and compares with h below degree D, exactly.
ExpansionCheck verify_expansion(const SparsePolynomial& h, int D);

/// Gamma(lambda) = sum of gamma(beta) over alpha beta = lambda, for every
/// monomial of total degree <= D, computed from the coefficients of log h
/// by Moebius inversion along rays. Nonzero values only.
std::map<MultiIndex, BigInt> monomial_exponents(const SparsePolynomial& h, int D,
                                                std::size_t budget = 2'000'000);

/// Coefficients of log h through s_mu = |mu| [X^mu] log h, which are
/// integers and satisfy s_mu = |mu| h_mu - sum_j a_j s_{mu - alpha_j}.
/// Memoized; one instance per polynomial.
class LogSeriesOracle {
 public:
  explicit LogSeriesOracle(SparsePolynomial h) : h_(std::move(h)) {}

  BigInt s(const MultiIndex& mu);
  /// Gamma(lambda) by Moebius inversion along the ray of lambda.
  BigInt aggregated_gamma(const MultiIndex& lambda);
  /// gamma(beta); throws AmbiguousAggregation when alpha is not injective
  /// at beta.
  BigInt gamma(const MultiIndex& beta);

 private:
  SparsePolynomial h_;
  std::map<MultiIndex, BigInt> memo_;
};

/// Every beta with alpha beta = lambda.
std::vector<MultiIndex> preimages(const SparsePolynomial& h, const MultiIndex& lambda);

/// gamma(beta) from the log-series route. Throws AmbiguousAggregation when
/// another beta' maps to the same monomial; the aggregated value is then
/// available from monomial_exponents.
BigInt gamma_log_oracle(const SparsePolynomial& h, const MultiIndex& beta);

enum class CyclotomyKind { Cyclotomic, NotCyclotomicCertified, UnknownUpToBound };

std::string to_string(CyclotomyKind kind);

struct CyclotomyWitness {
  std::vector<int> substitution;  // X_l -> t^{k_l}; empty for univariate input
  UnivariatePolynomial specialization;
  std::optional<Complex> root;  // a root off the unit circle, when one was found
  std::string reason;
};

struct CyclotomyVerdict {
  CyclotomyKind kind = CyclotomyKind::UnknownUpToBound;
  /// lambda -> exponent with h = prod (1 - X^lambda)^exponent.
  std::map<MultiIndex, BigInt> factorization;
  std::optional<CyclotomyWitness> witness;
  int beta_bound = 0;
  int degree_bound = 0;
};

/// Exponents gamma_m with f = prod_m (1 - T^m)^{gamma_m}, m <= K.
std::map<int, BigInt> univariate_exponents(const UnivariatePolynomial& f, int K);

/// Decides whether f (f(0) = 1) is a finite product of (1 - T^m)^{+-1}.
CyclotomyVerdict is_cyclotomic_univariate(const UnivariatePolynomial& f);

/// Semi-decision for the multivariate case; see the README for the order
/// of the checks.
CyclotomyVerdict is_cyclotomic_multivariate(const SparsePolynomial& h, int B, int D);

struct CyclotomicRemoval {
  SparsePolynomial residual;
  std::map<MultiIndex, BigInt> removed;  // h = residual * prod (1 - X^lambda)^removed
};

/// Divides out factors Phi_k(X^lambda0) for lambda0 primitive, drawn from
/// the Gamma-support of log h and the primitive columns.
CyclotomicRemoval remove_cyclotomic_factors(const SparsePolynomial& h);

/// Exact quotient h / P(X^lambda0) when it exists.
std::optional<SparsePolynomial> divide_by_ray_factor(const SparsePolynomial& h, const ExponentVector& lambda0,
                                                     const UnivariatePolynomial& factor);

/// Phi_k(T) normalized to constant term 1.
UnivariatePolynomial cyclotomic_polynomial(int k);

}  // namespace eulerprod
