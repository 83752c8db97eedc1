#include <doctest.h>

#include "eulerprod/arith.hpp"
#include "eulerprod/cyclotomy.hpp"
#include "eulerprod/error.hpp"
#include "eulerprod/igusa.hpp"
#include "fixtures.hpp"

using namespace eulerprod;

namespace {

BigInt necklace(long long a, int m) {
  BigInt total = 0;
  for (int d = 1; d <= m; ++d) {
    if (m % d != 0 || mobius(static_cast<std::uint64_t>(d)) == 0) continue;
    total += mobius(static_cast<std::uint64_t>(d)) * boost::multiprecision::pow(BigInt(a), static_cast<unsigned>(m / d));
  }
  return total / m;
}

}  // namespace

TEST_CASE("necklace exponents of a linear factor") {
  for (long long a : {-3, -1, 2, 5}) {
    const SparsePolynomial h =
        parse_polynomial((a > 0 ? "1 - " : "1 + ") + std::to_string(std::llabs(a)) + "*X1", 1);
    for (int m = 1; m <= 12; ++m) CHECK(gamma_exponent(h, {m}) == necklace(a, m));
  }
}

TEST_CASE("distance constant and compositions") {
  CHECK(compositions(3, 2).size() == 6);
  CHECK(compositions(2, 0).size() == 1);
  CHECK(distance_constant(igusa_h(2)) > 0);
  CHECK(monomial_of(igusa_h(2), {1, 1, 0}) == MultiIndex{1, 1, 2});
}

TEST_CASE("expansion table matches gamma_exponent") {
  const SparsePolynomial h = igusa_h(2);
  const ExpansionTable table = expansion_table(h, 5);
  for (int k = 1; k <= 5; ++k) {
    for (const auto& beta : compositions(h.size(), k)) CHECK(table.gamma(beta) == gamma_exponent(h, beta));
  }
  for (const auto& [beta, g] : table.entries) CHECK(g != 0);
  ExpansionOptions parallel;
  parallel.parallel = true;
  CHECK(expansion_table(h, 5, parallel).entries == table.entries);
}

TEST_CASE("verify_expansion reconstructs the fixtures") {
  for (const auto& f : testing::fixture_set()) {
    INFO(f.name);
    const ExpansionCheck check = verify_expansion(f.h, 6);
    CHECK(check.passed);
    CHECK(!check.first_mismatch);
  }
}

TEST_CASE("log-series oracle") {
  const SparsePolynomial h = parse_polynomial("1 + 3*X1*X3 - X2*X3", 2);
  LogSeriesOracle oracle(h);
  for (int k = 1; k <= 5; ++k) {
    for (const auto& beta : compositions(h.size(), k)) CHECK(oracle.gamma(beta) == gamma_exponent(h, beta));
  }
  // X1 * X2 is both a column and the sum of two others.
  const SparsePolynomial g = parse_polynomial("1 + X1 + X2 + X1*X2", 1);
  LogSeriesOracle og(g);
  const MultiIndex lambda{1, 1};
  BigInt sum = 0;
  for (const auto& beta : preimages(g, lambda)) sum += gamma_exponent(g, beta);
  CHECK(preimages(g, lambda).size() == 2);
  CHECK(og.aggregated_gamma(lambda) == sum);
  CHECK_THROWS_AS(og.gamma({1, 1, 0}), Error);
}

TEST_CASE("univariate cyclotomy") {
  CHECK(is_cyclotomic_univariate(UnivariatePolynomial::from_ints({1, 0, -1})).kind == CyclotomyKind::Cyclotomic);
  CHECK(is_cyclotomic_univariate(UnivariatePolynomial::from_ints({1, 1, 1})).kind == CyclotomyKind::Cyclotomic);
  const auto v = is_cyclotomic_univariate(UnivariatePolynomial::from_ints({1, -1, -1}));
  CHECK(v.kind == CyclotomyKind::NotCyclotomicCertified);
  REQUIRE(v.witness);
  REQUIRE(v.witness->root);
  CHECK(std::abs(std::abs(*v.witness->root) - 1.0) > 0.1);
  for (int k = 1; k <= 12; ++k) {
    const auto phi = cyclotomic_polynomial(k);
    CHECK(phi.degree() == static_cast<int>(euler_phi(static_cast<std::uint64_t>(k))));
  }
}

TEST_CASE("multivariate cyclotomy and removal") {
  const SparsePolynomial cyc = parse_polynomial("1 + X1*X2 + X1^2*X2^2", 1);
  const CyclotomyVerdict v = is_cyclotomic_multivariate(cyc, 8, 8);
  CHECK(v.kind == CyclotomyKind::Cyclotomic);
  CHECK(v.factorization.at({1, 1}) == -1);
  CHECK(v.factorization.at({3, 3}) == 1);
  CHECK(is_cyclotomic_multivariate(igusa_h(2), 6, 6).kind == CyclotomyKind::NotCyclotomicCertified);

  const CyclotomicRemoval r = remove_cyclotomic_factors(parse_polynomial("1 - X1*X2", 1));
  CHECK(r.residual.is_one());
  CHECK(r.removed.at({1, 1}) == 1);

  const SparsePolynomial product = parse_polynomial("1 - X1*X3", 2) * parse_polynomial("1 + X1*X3 - X2*X3", 2);
  const CyclotomicRemoval r2 = remove_cyclotomic_factors(product);
  CHECK(r2.residual == parse_polynomial("1 + X1*X3 - X2*X3", 2));
}
