#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "eulerprod/exponent.hpp"
#include "eulerprod/error.hpp"
#include "eulerprod/igusa.hpp"
#include "eulerprod/puiseux.hpp"

using namespace eulerprod;

namespace {

struct Setup {
  SparsePolynomial h = igusa_h(2);
  std::size_t e = 0;  // (1,0,1)
  BasePoint base;
  DirectionConfig dir;
};

Setup fixture() {
  Setup s;
  REQUIRE(s.h.exponent(0) == make_exponent({1, 0, 1}));
  s.base = make_base_point(s.h, 1, 0, {Rational(-1), Rational(7, 10)}, VectorXr::Zero(2));
  s.dir = choose_direction(s.h, 0, 2, true);
  return s;
}

}  // namespace

TEST_CASE("base point validation") {
  const SparsePolynomial h = igusa_h(2);
  const BasePoint b = make_base_point(h, 1, 0, {Rational(-1), Rational(7, 10)}, VectorXr::Zero(2));
  CHECK(base_pairing(h, b, 0) == 0);
  CHECK(base_pairing(h, b, 1) == Rational(17, 10));
  CHECK(base_pairing(h, b, 2) == Rational(7, 10));
  CHECK_THROWS_AS(make_base_point(h, 1, 0, {Rational(-1, 2), Rational(7, 10)}, VectorXr::Zero(2)), Error);
  CHECK_THROWS_AS(make_base_point(h, 1, 0, {Rational(-1), Rational(-1, 10)}, VectorXr::Zero(2)), Error);
}

TEST_CASE("seeded base point is reproducible and generic") {
  const SparsePolynomial h = igusa_h(2);
  const BasePoint a = base_point(h, 1, 2, 7), b = base_point(h, 1, 2, 7);
  CHECK(a.sigma0 == b.sigma0);
  CHECK(a.tau0 == b.tau0);
  CHECK(base_pairing(h, a, 2) == 0);
  CHECK(base_pairing(h, a, 0) != base_pairing(h, a, 1));
  for (Eigen::Index i = 0; i < 2; ++i) CHECK(std::abs(a.tau0(i)) <= 1.0);
}

TEST_CASE("direction search") {
  const SparsePolynomial h = igusa_h(2);
  const DirectionConfig plain = choose_direction(h, 0, std::nullopt, false);
  CHECK(plain.theta == std::vector<long long>{1, 1});
  const DirectionConfig parity = choose_direction(h, 0, 2, true);
  CHECK(parity.theta == std::vector<long long>{2, 1});
  CHECK(parity.ray_pairing % 2 == 0);
  CHECK(parity.pairings[2] % 2 == 1);
  for (long long v : parity.pairings) CHECK(v >= 1);
}

TEST_CASE("ray polynomial, e' and leading terms of the fixture") {
  const Setup s = fixture();
  const RayPolynomial ray = ray_polynomial(s.h, s.e, s.dir, 53, s.base.tau0);
  CHECK(ray.integer == UnivariatePolynomial::from_ints({1, 0, -1}));
  REQUIRE(ray.roots.size() == 2);
  const GeneralizedPolynomial W = generalized_polynomial(s.h, s.base, s.dir, 53);
  for (Complex c0 : ray.roots) {
    CHECK(std::abs(std::abs(c0) - 1.0) < 1e-12);
    CHECK(select_e_prime(W, c0) == 2);
    const PuiseuxBranch b = branch_leading_terms(W, c0, 2);
    CHECK(std::abs(b.c1 - 0.5) < 1e-12);
    REQUIRE(b.theta1_exact);
    CHECK(*b.theta1_exact == Rational(7, 10));
    CHECK(b.descending == (c0.real() < 0));
  }
}

TEST_CASE("tracked branch matches the closed form") {
  const Setup s = fixture();
  const GeneralizedPolynomial W = generalized_polynomial(s.h, s.base, s.dir, 53);
  const PuiseuxBranch tracked = track_branch(W, -1.0, geometric_grid());
  REQUIRE(tracked.theta1);
  CHECK(std::abs(*tracked.theta1 - 0.7) < 1e-4);
  CHECK(std::abs(tracked.c1 - 0.5) < 1e-4);
  for (double r : tracked.residual_profile) CHECK(r < 1e-10);
}

TEST_CASE("descending branch and Newton checks") {
  const Setup s = fixture();
  for (std::uint64_t p : {53, 101, 997}) {
    const GeneralizedPolynomial W = generalized_polynomial(s.h, s.base, s.dir, p);
    const RayPolynomial ray = ray_polynomial(s.h, s.e, s.dir, p, s.base.tau0);
    const auto branch = descending_branch(W, ray);
    REQUIRE(branch);
    CHECK(branch->c0.real() < 0);
    const Complex omega = continue_branch(W, branch->c0, 1.0 / static_cast<double>(p));
    CHECK(std::abs(W(1.0 / static_cast<double>(p), omega)) < 1e-12);
    const ZeroLattice lattice = zero_lattice(*branch, omega, p, 0, 3);
    CHECK(lattice.positive_real_part);
    for (const auto& pt : lattice.points) {
      const ZeroCheck zc = verify_zero(s.h, s.base, s.dir, p, pt.t);
      CHECK(zc.residual <= 1e-10);
      CHECK(std::abs(zc.t - pt.t) < 1e-8);
    }
  }
}

TEST_CASE("window count") {
  const double lp = std::log(997.0);
  const PrimeCount pc = window_count(997, Complex(-0.99, 0.0), 1.0, 1.0);
  CHECK(pc.floor_bound == static_cast<long long>(std::floor(lp / (2 * std::numbers::pi))));
  CHECK(std::llabs(pc.count - pc.floor_bound) <= 1);
  CHECK(pc.count == std::max(0LL, pc.m_last - pc.m_first + 1));
}

TEST_CASE("interference") {
  std::vector<SingularCandidate> cands{{{1, 0, 0}, 1.0, Complex(0.5, 0.5)}};
  CHECK(interference_check({Complex(0.5, 0.5004)}, cands).flagged);
  CHECK_FALSE(interference_check({Complex(0.5, 0.6)}, cands).flagged);
  CHECK(std::isinf(interference_check({}, cands).min_distance));
}

TEST_CASE("not descending raises") {
  const Setup s = fixture();
  const GeneralizedPolynomial W = generalized_polynomial(s.h, s.base, s.dir, 53);
  const PuiseuxBranch up = branch_leading_terms(W, 1.0, 2);
  CHECK_FALSE(up.descending);
  try {
    zero_lattice(up, 1.0, 53, 0, 1);
    FAIL("expected NotDescending");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotDescending);
  }
}
