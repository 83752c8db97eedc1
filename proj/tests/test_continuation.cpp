#include <doctest.h>

#include "eulerprod/continuation.hpp"
#include "eulerprod/error.hpp"
#include "eulerprod/igusa.hpp"

using namespace eulerprod;

namespace {

ZetaZeroTable test_zeros() { return ZetaZeroTable::load(std::string(EULERPROD_TEST_DATA) + "/zeta_zeros.txt"); }

VectorXc point(std::initializer_list<Complex> xs) {
  VectorXc s(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (Complex x : xs) s(i++) = x;
  return s;
}

}  // namespace

TEST_CASE("m_delta grows as delta shrinks") {
  const Rational C(1);
  CHECK(m_delta(C, 1.5) <= m_delta(C, 0.5));
  CHECK(m_delta(C, 0.5) <= m_delta(C, 0.1));
  CHECK(m_delta(C, 0.1) >= 2);
}

TEST_CASE("local point") {
  const VectorXc x = local_point(2.0, point({Complex(1, 0), Complex(0, 1)}), 1);
  REQUIRE(x.size() == 3);
  CHECK(std::abs(x(0) - 0.5) < 1e-15);
  CHECK(std::abs(std::abs(x(1)) - 1.0) < 1e-15);
  CHECK(std::abs(x(2) - 0.5) < 1e-15);
}

TEST_CASE("continued value agrees with the product in the convergence region") {
  const ZetaZeroTable zeros = test_zeros();
  const SparsePolynomial h = igusa_h(2);
  const VectorXc s = point({3.0, 3.0});
  ContinuationContext ctx = make_context(h, 1.5, &zeros);
  const ContinuationResult r = continued_value(h, 1, s, ctx);
  const DirectProduct d = direct_euler_product(h, 1, s, 10000);
  CHECK(std::abs(r.value - d.value) < 1e-6);
  CHECK_FALSE(d.outside_absolute_convergence);
  CHECK(r.ledger.size() >= 3);
  for (std::size_t k = r.ledger.size() - 3; k < r.ledger.size(); ++k) CHECK(std::abs(r.ledger[k].increment) < 1e-10);
}

TEST_CASE("collapse to a single zeta factor") {
  const ZetaZeroTable zeros = test_zeros();
  const SparsePolynomial h = parse_polynomial("1 - X1*X2", 2);
  const VectorXc s = point({0.3, 0.4});
  const ContinuationResult r = continued_value(h, 1, s, make_context(h, 0.1, &zeros));
  CHECK(std::abs(r.value - 1.0 / zeta(0.7)) < 1e-10);
}

TEST_CASE("domain and singularity guards") {
  const ZetaZeroTable zeros = test_zeros();
  const SparsePolynomial h = igusa_h(2);
  ContinuationContext ctx = make_context(h, 0.5, &zeros);
  try {
    continued_value(h, 1, point({-0.9, -0.9}), ctx);
    FAIL("expected OutsideDomain");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::OutsideDomain);
  }
  // 1 - X1*X2 at s1 + s2 = 1 sits on the pole of zeta.
  const SparsePolynomial g = parse_polynomial("1 - X1*X2", 2);
  try {
    continued_value(g, 1, point({0.5, 0.5}), make_context(g, 0.1, &zeros));
    FAIL("expected NearSingularity");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NearSingularity);
  }
}

TEST_CASE("singular candidates respect Re t >= 0") {
  const ZetaZeroTable zeros = test_zeros();
  const SparsePolynomial h = igusa_h(2);
  ContinuationContext ctx = make_context(h, 0.5, &zeros);
  ctx.beta_bound = 20;
  VectorXc s0(3);
  s0 << -1.0, 0.7, 1.0;
  const auto cands = singular_candidates(h, s0, {2, 1}, ctx);
  CHECK_FALSE(cands.empty());
  for (const auto& c : cands) CHECK(c.t.real() >= 0);
}
