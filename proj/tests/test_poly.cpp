#include <doctest.h>

#include <algorithm>

#include "eulerprod/error.hpp"
#include "eulerprod/exponent.hpp"
#include "eulerprod/igusa.hpp"
#include "eulerprod/poly.hpp"
#include "eulerprod/series.hpp"

using namespace eulerprod;

TEST_CASE("exponent helpers") {
  const ExponentVector a = make_exponent({2, 4, 6});
  CHECK(primitive_vector(a) == make_exponent({1, 2, 3}));
  CHECK(multiple_of(a, make_exponent({1, 2, 3})) == 2);
  CHECK(multiple_of(make_exponent({1, 2, 4}), make_exponent({1, 2, 3})) == -1);
  CHECK(collinear(a, make_exponent({1, 2, 3})));
  CHECK_FALSE(collinear(a, make_exponent({1, 2, 2})));
  CHECK(total_degree(a) == 12);
  CHECK(format_exponent(a) == "(2,4,6)");
  CHECK(parse_exponent("(2,4,6)") == a);
  CHECK(parse_exponent("2, 4, 6") == a);
  CHECK_THROWS_AS(parse_exponent("(2,x)"), Error);
  CHECK_THROWS_AS(primitive_vector(make_exponent({0, 0})), Error);
  CHECK(from_multi_index(to_multi_index(a)) == a);
}

TEST_CASE("grlex canonical order") {
  CHECK(grlex_before(make_exponent({0, 1, 1}), make_exponent({1, 1, 1})));
  CHECK(grlex_before(make_exponent({1, 0, 1}), make_exponent({0, 1, 1})));
  CHECK_FALSE(grlex_before(make_exponent({0, 1, 1}), make_exponent({1, 0, 1})));
}

TEST_CASE("parse and render") {
  const SparsePolynomial h = parse_polynomial("1 + X1*X2*X3 - X2*X3 - X1*X3", 2);
  CHECK(h.to_string() == "1 - X1*X3 - X2*X3 + X1*X2*X3");
  CHECK(h == igusa_h(2));
  CHECK(h.size() == 3);
  CHECK(h.n() == 2);
  CHECK(h.coefficient(2) == 1);
  CHECK(h.last(0) == 1);
  CHECK(h.find(make_exponent({0, 1, 1})) == std::optional<std::size_t>(1));
  CHECK(parse_polynomial(h.to_string(), 2) == h);

  const SparsePolynomial g = parse_polynomial("1 - 3*X1^2*X2 + 2 * X2^4", 1);
  CHECK(g.to_string() == "1 - 3*X1^2*X2 + 2*X2^4");
  CHECK(g.max_degree() == 4);
}

TEST_CASE("parse rejects malformed input") {
  CHECK_THROWS_AS(parse_polynomial("X1 + X2", 1), Error);
  CHECK_THROWS_AS(parse_polynomial("2 + X1", 1), Error);
  CHECK_THROWS_AS(parse_polynomial("1 + X1 + X1", 1), Error);
  CHECK_THROWS_AS(parse_polynomial("1 + X3", 1), Error);
  CHECK_THROWS_AS(parse_polynomial("1 +* X1", 1), Error);
  CHECK_THROWS_AS(parse_polynomial("1 + 0*X1", 1), Error);
  try {
    parse_polynomial("1 + X1 + X1", 1);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::RepeatedExponent);
  }
}

TEST_CASE("evaluate") {
  const SparsePolynomial h = igusa_h(2);
  VectorXc x(3);
  x << 0.5, 0.25, 2.0;
  const Complex expected = 1.0 - 0.5 * 2.0 - 0.25 * 2.0 + 0.5 * 0.25 * 2.0;
  CHECK(std::abs(evaluate(h, x) - expected) < 1e-15);
}

TEST_CASE("univariate arithmetic") {
  const auto f = UnivariatePolynomial::from_ints({1, 0, -1});  // 1 - T^2
  const auto g = UnivariatePolynomial::from_ints({1, 1});
  CHECK(f.degree() == 2);
  CHECK(derivative(f) == UnivariatePolynomial::from_ints({0, -2}));
  const auto q = exact_divide(f, g);
  REQUIRE(q);
  CHECK(*q == UnivariatePolynomial::from_ints({1, -1}));
  CHECK(!exact_divide(f, UnivariatePolynomial::from_ints({1, 2})));
  CHECK(polynomial_gcd(f, g).degree() == 1);
  CHECK(is_squarefree(f));
  CHECK_FALSE(is_squarefree(g * g));
  CHECK(squarefree_part(g * g * f).degree() == 2);
  auto roots_f = roots(f);
  std::sort(roots_f.begin(), roots_f.end(), [](Complex a, Complex b) { return a.real() < b.real(); });
  REQUIRE(roots_f.size() == 2);
  CHECK(std::abs(roots_f[0] + 1.0) < 1e-12);
  CHECK(std::abs(roots_f[1] - 1.0) < 1e-12);
}

TEST_CASE("ray reduction round trip") {
  const SparsePolynomial h = parse_polynomial("1 - X1*X2 + 2*X1^2*X2^2 + X2", 1);
  const auto idx = h.find(make_exponent({1, 1}));
  REQUIRE(idx);
  CHECK(ray_indices(h, *idx).size() == 2);
  const RayReduction red = reduced_main_part(h, *idx);
  CHECK(red.primitive == make_exponent({1, 1}));
  CHECK(red.polynomial == UnivariatePolynomial::from_ints({1, -1, 2}));
  CHECK(substitute_ray(red.polynomial, red.primitive, 1) == main_part(h, *idx));
  CHECK_THROWS_AS(ray_reduce(h, make_exponent({1, 1})), Error);
}

TEST_CASE("variable permutation") {
  const SparsePolynomial h = parse_polynomial("1 + 2*X1*X3 - X2^2*X3", 2);
  const SparsePolynomial g = permute_variables(h, {1, 0});
  CHECK(g == parse_polynomial("1 + 2*X2*X3 - X1^2*X3", 2));
  CHECK(permute_variables(g, {1, 0}) == h);
}

TEST_CASE("truncated series") {
  TruncatedSeries s(1, 5);
  s.multiply_binomial_power({1}, BigInt(-1));  // 1/(1 - X) = 1 + X + ... + X^5
  for (int k = 0; k <= 5; ++k) CHECK(s.coefficient({k}) == 1);
  s.multiply_binomial_power({1}, BigInt(1));
  CHECK(s.coefficient({0}) == 1);
  for (int k = 1; k <= 5; ++k) CHECK(s.coefficient({k}) == 0);

  const SparsePolynomial h = parse_polynomial("1 - 2*X1*X2", 1);
  const auto t = TruncatedSeries::from_polynomial(h, 4);
  CHECK(t.coefficient({1, 1}) == -2);
  CHECK(t.coefficient({2, 2}) == 0);
}
