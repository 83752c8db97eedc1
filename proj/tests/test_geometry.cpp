#include <doctest.h>

#include "eulerprod/exponent.hpp"
#include "eulerprod/geometry.hpp"
#include "eulerprod/igusa.hpp"

using namespace eulerprod;

TEST_CASE("W_c(0) for the Igusa polynomial") {
  const SparsePolynomial h = igusa_h(2);
  const HalfspaceSystem w = w_system(h, 1, 0);
  CHECK(w.rows.size() == 3);
  CHECK(w.contains(RationalVector{Rational(1), Rational(1)}));
  CHECK_FALSE(w.contains(RationalVector{Rational(-2), Rational(0)}));
  VectorXr sigma(2);
  sigma << -0.5, -0.4;
  CHECK(membership(h, 1, 0, sigma));  // -0.9 + 1 > 0
  CHECK_FALSE(membership(h, 1, 0.2, sigma));
}

TEST_CASE("faces and witnesses") {
  const SparsePolynomial h = igusa_h(2);
  const auto all = faces(h, 1);
  REQUIRE(all.size() == 3);
  for (const auto& f : all) {
    CHECK(f.supporting);
    REQUIRE(f.witness);
    CHECK(f.nondegenerate);
    CHECK(f.hypothesis_H);
    CHECK(f.coprime_condition);
    // On the face: sigma . alpha_(n)e + c alpha_{n+1,e} = 0, strictly positive elsewhere.
    for (std::size_t j = 0; j < h.size(); ++j) {
      Rational v = h.last(j);
      for (int i = 0; i < h.n(); ++i) v += (*f.witness)[static_cast<std::size_t>(i)] * h.exponent(j)(i);
      if (j == f.e) {
        CHECK(v == 0);
      } else {
        CHECK(v > 0);
      }
    }
  }
  CHECK(all[2].ray_polynomial == UnivariatePolynomial::from_ints({1, 1}));
}

TEST_CASE("a column dominated by another is not a supporting face") {
  // The pairing of (1,1,2) is the sum of the other two, so it cannot vanish alone.
  const SparsePolynomial h = parse_polynomial("1 + X1*X3 + X2*X3 + X1*X2*X3^2", 2);
  const auto f = face_report(h, 1, *h.find(make_exponent({1, 1, 2})));
  CHECK_FALSE(f.supporting);
  CHECK_FALSE(f.witness);
}

TEST_CASE("rank, H and degeneracy") {
  CHECK(exponent_rank(igusa_h(3)) == 3);
  CHECK(rank_condition(igusa_h(3)));
  const SparsePolynomial flat = parse_polynomial("1 + X1*X2 + X1^2*X2^2*X3", 2);
  CHECK(exponent_rank(flat) == 1);
  CHECK_FALSE(rank_condition(flat));
  const SparsePolynomial degenerate = parse_polynomial("1 + 2*X1*X3 + X1^2*X3^2 + X2*X3", 2);
  CHECK_FALSE(is_nondegenerate_face(degenerate, 0));
  // X1*X3 and X1*X3^2 share the ray (1,0) in the first n coordinates without sharing the full ray.
  const SparsePolynomial not_h = parse_polynomial("1 + X1*X3 + X1*X3^2 + X2*X3", 2);
  CHECK_FALSE(hypothesis_H(not_h, 0));
}

TEST_CASE("classification verdicts") {
  CHECK(classify_boundary(igusa_h(2), 1).kind == BoundaryKind::StrongBoundary);
  CHECK(classify_boundary(parse_polynomial("1 - X1*X2", 1), 1).kind == BoundaryKind::EntireMeromorphic);
  CHECK(classify_boundary(parse_polynomial("1 + X1*X2 + X1^2*X2^2*X3", 2), 1).kind ==
        BoundaryKind::RankConditionFailed);
  const BoundaryVerdict v = classify_boundary(parse_polynomial("1 - X1*X3", 2) * igusa_h(2), 1);
  CHECK(v.removal.removed.size() == 1);
  CHECK(v.residual_cyclotomy.has_value());
}

TEST_CASE("feasible point for a strict system") {
  std::vector<HalfspaceRow> rows{{{1, 0}, Rational(0)}, {{0, 1}, Rational(0)}, {{-1, -1}, Rational(1)}};
  const auto pt = feasible_point(2, rows);
  REQUIRE(pt);
  HalfspaceSystem sys{2, rows};
  CHECK(sys.contains(*pt));
  rows.push_back({{1, 1}, Rational(-1)});
  CHECK_FALSE(feasible_point(2, rows));
}
