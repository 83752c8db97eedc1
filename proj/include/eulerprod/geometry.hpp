#pragma once

#include <optional>
#include <string>
#include <vector>

#include "eulerprod/core.hpp"
#include "eulerprod/cyclotomy.hpp"
#include "eulerprod/poly.hpp"

namespace eulerprod {

/// normal . sigma + offset > 0
struct HalfspaceRow {
  std::vector<long long> normal;
  Rational offset;

  friend bool operator==(const HalfspaceRow&, const HalfspaceRow&) = default;
};

struct HalfspaceSystem {
  int n = 0;
  std::vector<HalfspaceRow> rows;  // all strict

  bool contains(const RationalVector& sigma) const;
  bool contains(const VectorXr& sigma) const;
};

/// Rows sigma . alpha_{(n)j} + c alpha_{n+1,j} - delta > 0, one per term.
HalfspaceSystem w_system(const SparsePolynomial& h, long long c, const Rational& delta);

/// sigma in W_c(delta).
bool membership(const SparsePolynomial& h, long long c, double delta, const VectorXr& sigma);

/// A rational point with every `strict` row positive and, if given, the
/// `equality` row zero. Fourier-Motzkin elimination with back substitution.
std::optional<RationalVector> feasible_point(int n, const std::vector<HalfspaceRow>& strict,
                                             const std::optional<HalfspaceRow>& equality = std::nullopt);

/// Row set normalized to primitive integer normals, sorted; used to compare
/// systems that differ by positive scaling of rows.
std::vector<HalfspaceRow> normalized_rows(const HalfspaceSystem& system);

struct FaceReport {
  std::size_t e = 0;  // first column on the ray
  ExponentVector polar;
  ExponentVector primitive;
  std::vector<std::size_t> lambda_e;
  bool supporting = false;
  std::optional<RationalVector> witness;  // sigma on the face, strictly inside the other rows
  UnivariatePolynomial ray_polynomial;    // ~[h]_e
  bool nondegenerate = false;
  bool hypothesis_H = false;
  bool coprime_condition = false;
};

/// One report per ray of columns (proportional columns merged), in column
/// order. Non-supporting rays are kept with supporting = false.
std::vector<FaceReport> faces(const SparsePolynomial& h, long long c);

/// The report for the ray of column e.
FaceReport face_report(const SparsePolynomial& h, long long c, std::size_t e);

bool is_nondegenerate_face(const SparsePolynomial& h, std::size_t e);

/// Rank of the n x r block alpha_{(n)}, exact.
int exponent_rank(const SparsePolynomial& h);
bool rank_condition(const SparsePolynomial& h);

/// Columns with alpha_j off the ray of alpha_e.
std::vector<std::size_t> off_ray_indices(const SparsePolynomial& h, std::size_t e);
/// Columns with alpha_{(n)j} off the ray of alpha_{(n)e}.
std::vector<std::size_t> off_head_ray_indices(const SparsePolynomial& h, std::size_t e);

bool hypothesis_H(const SparsePolynomial& h, std::size_t e);

struct CoprimeCheck {
  std::size_t j0 = 0;
  std::vector<std::size_t> coset;
  ExponentVector shift;       // lexicographically minimal exponent of the coset
  UnivariatePolynomial a;     // ~[h]_e
  UnivariatePolynomial b;     // coset polynomial in T = X^{primitive}
  UnivariatePolynomial gcd;
  bool coprime = false;
};

std::vector<CoprimeCheck> coprime_checks(const SparsePolynomial& h, std::size_t e);
bool coprime_condition(const SparsePolynomial& h, std::size_t e);

enum class BoundaryKind { EntireMeromorphic, StrongBoundary, WeakBoundary, RankConditionFailed, Inconclusive };

std::string to_string(BoundaryKind kind);

struct BoundaryVerdict {
  BoundaryKind kind = BoundaryKind::Inconclusive;
  std::vector<FaceReport> qualifying;  // faces carrying the verdict
  std::vector<FaceReport> faces;       // all rays of the residual polynomial
  CyclotomicRemoval removal;
  std::optional<CyclotomyVerdict> residual_cyclotomy;
  int rank = 0;
  std::vector<std::string> diagnostics;
};

struct ClassifyOptions {
  bool allow_flagged = false;  // accept alpha_{(n)j} = 0
  int cyclotomy_degree_bound = 0;  // 0: twice the degree of h
};

BoundaryVerdict classify_boundary(const SparsePolynomial& h, long long c, const ClassifyOptions& options = {});

std::string format_rational(const Rational& q);

}  // namespace eulerprod
