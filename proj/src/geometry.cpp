#include "eulerprod/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "eulerprod/error.hpp"
#include "eulerprod/exponent.hpp"

namespace eulerprod {

namespace {

struct Row {
  RationalVector a;
  Rational b;
};

Rational evaluate_row(const Row& row, const RationalVector& x) {
  Rational v = row.b;
  for (std::size_t i = 0; i < x.size(); ++i) v += row.a[i] * x[i];
  return v;
}

Row to_row(const HalfspaceRow& h) {
  Row row;
  for (long long v : h.normal) row.a.emplace_back(v);
  row.b = h.offset;
  return row;
}

// Drops exact duplicates after scaling each row by its largest |coefficient|.
void dedupe(std::vector<Row>& rows) {
  for (Row& row : rows) {
    Rational scale = 0;
    for (const Rational& v : row.a) scale = std::max(scale, Rational(abs(v)));
    if (scale == 0) continue;
    for (Rational& v : row.a) v /= scale;
    row.b /= scale;
  }
  std::vector<Row> out;
  for (Row& row : rows) {
    bool seen = false;
    for (const Row& kept : out) {
      if (kept.a == row.a && kept.b == row.b) seen = true;
    }
    if (!seen) out.push_back(std::move(row));
  }
  rows = std::move(out);
}

Rational choose_between(const std::optional<Rational>& lower, const std::optional<Rational>& upper) {
  using boost::multiprecision::numerator;
  using boost::multiprecision::denominator;
  auto floor_of = [](const Rational& q) {
    BigInt f = numerator(q) / denominator(q);
    if (f * denominator(q) > numerator(q)) f -= 1;
    return Rational(f);
  };
  if (lower && upper) {
    const Rational mid = (*lower + *upper) / 2;
    const Rational rounded = floor_of(mid + Rational(1, 2));
    if (*lower < rounded && rounded < *upper) return rounded;
    return mid;
  }
  if (lower) return floor_of(*lower) + 1;
  if (upper) return -floor_of(-*upper) - 1;
  return 0;
}

// Strict system only; x has `m` variables.
std::optional<RationalVector> solve_strict(std::vector<Row> rows, std::size_t m) {
  std::vector<std::vector<Row>> stages(m + 1);
  dedupe(rows);
  stages[m] = rows;
  for (std::size_t k = m; k-- > 0;) {
    const std::vector<Row>& current = stages[k + 1];
    std::vector<Row> next;
    std::vector<const Row*> pos;
    std::vector<const Row*> neg;
    for (const Row& row : current) {
      if (row.a[k] > 0) {
        pos.push_back(&row);
      } else if (row.a[k] < 0) {
        neg.push_back(&row);
      } else {
        next.push_back(row);
      }
    }
    for (const Row* p : pos) {
      for (const Row* q : neg) {
        Row combined;
        const Rational wp = -q->a[k];
        const Rational wq = p->a[k];
        combined.a.resize(m);
        for (std::size_t i = 0; i < combined.a.size(); ++i) combined.a[i] = wp * p->a[i] + wq * q->a[i];
        combined.a[k] = 0;
        combined.b = wp * p->b + wq * q->b;
        next.push_back(std::move(combined));
      }
    }
    dedupe(next);
    stages[k] = std::move(next);
  }
  for (const Row& row : stages[0]) {
    if (row.b <= 0) return std::nullopt;
  }
  RationalVector x(m, 0);
  for (std::size_t k = 0; k < m; ++k) {
    std::optional<Rational> lower;
    std::optional<Rational> upper;
    for (const Row& row : stages[k + 1]) {
      if (row.a[k] == 0) continue;
      Rational rest = row.b;
      for (std::size_t i = 0; i < k; ++i) rest += row.a[i] * x[i];
      const Rational bound = -rest / row.a[k];
      if (row.a[k] > 0) {
        if (!lower || bound > *lower) lower = bound;
      } else {
        if (!upper || bound < *upper) upper = bound;
      }
    }
    if (lower && upper && !(*lower < *upper)) return std::nullopt;
    x[k] = choose_between(lower, upper);
  }
  return x;
}

}  // namespace

std::string format_rational(const Rational& q) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

bool HalfspaceSystem::contains(const RationalVector& sigma) const {
  if (static_cast<int>(sigma.size()) != n) throw Error(ErrorKind::InvalidArgument, "point has the wrong dimension");
  return std::all_of(rows.begin(), rows.end(), [&](const HalfspaceRow& row) {
    return evaluate_row(to_row(row), sigma) > 0;
  });
}

bool HalfspaceSystem::contains(const VectorXr& sigma) const {
  if (sigma.size() != n) throw Error(ErrorKind::InvalidArgument, "point has the wrong dimension");
  return std::all_of(rows.begin(), rows.end(), [&](const HalfspaceRow& row) {
    double v = to_double(row.offset);
    for (int i = 0; i < n; ++i) v += static_cast<double>(row.normal[static_cast<std::size_t>(i)]) * sigma(i);
    return v > 0;
  });
}

HalfspaceSystem w_system(const SparsePolynomial& h, long long c, const Rational& delta) {
  HalfspaceSystem system;
  system.n = h.n();
  for (std::size_t j = 0; j < h.size(); ++j) {
    HalfspaceRow row;
    for (int i = 0; i < h.n(); ++i) row.normal.push_back(h.exponent(j)(i));
    row.offset = Rational(c * h.last(j)) - delta;
    system.rows.push_back(std::move(row));
  }
  return system;
}

bool membership(const SparsePolynomial& h, long long c, double delta, const VectorXr& sigma) {
  if (sigma.size() != h.n()) throw Error(ErrorKind::InvalidArgument, "sigma must have n entries");
  for (std::size_t j = 0; j < h.size(); ++j) {
    double v = static_cast<double>(c * h.last(j));
    for (int i = 0; i < h.n(); ++i) v += static_cast<double>(h.exponent(j)(i)) * sigma(i);
    if (!(v > delta)) return false;
  }
  return true;
}

std::optional<RationalVector> feasible_point(int n, const std::vector<HalfspaceRow>& strict,
                                             const std::optional<HalfspaceRow>& equality) {
  const std::size_t m = static_cast<std::size_t>(n);
  std::vector<Row> rows;
  for (const HalfspaceRow& r : strict) rows.push_back(to_row(r));
  if (!equality) return solve_strict(std::move(rows), m);

  const Row eq = to_row(*equality);
  std::size_t pivot = m;
  for (std::size_t i = m; i-- > 0;) {
    if (eq.a[i] != 0) {
      pivot = i;
      break;
    }
  }
  if (pivot == m) {
    if (eq.b != 0) return std::nullopt;
    return solve_strict(std::move(rows), m);
  }
  // x_pivot = -(b + sum_{i != pivot} a_i x_i) / a_pivot, substituted away.
  std::vector<Row> reduced;
  for (const Row& row : rows) {
    const Rational factor = row.a[pivot] / eq.a[pivot];
    Row out;
    out.b = row.b - factor * eq.b;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == pivot) continue;
      out.a.push_back(row.a[i] - factor * eq.a[i]);
    }
    reduced.push_back(std::move(out));
  }
  auto partial = solve_strict(std::move(reduced), m - 1);
  if (!partial) return std::nullopt;
  RationalVector x(m, 0);
  Rational rest = eq.b;
  for (std::size_t i = 0, k = 0; i < m; ++i) {
    if (i == pivot) continue;
    x[i] = (*partial)[k++];
    rest += eq.a[i] * x[i];
  }
  x[pivot] = -rest / eq.a[pivot];
  return x;
}

std::vector<HalfspaceRow> normalized_rows(const HalfspaceSystem& system) {
  std::vector<HalfspaceRow> out;
  for (const HalfspaceRow& row : system.rows) {
    long long g = 0;
    for (long long v : row.normal) g = std::gcd(g, v);
    HalfspaceRow scaled = row;
    if (g > 1) {
      for (long long& v : scaled.normal) v /= g;
      scaled.offset /= g;
    }
    if (std::find(out.begin(), out.end(), scaled) == out.end()) out.push_back(std::move(scaled));
  }
  std::sort(out.begin(), out.end(), [](const HalfspaceRow& a, const HalfspaceRow& b) {
    if (a.normal != b.normal) return a.normal < b.normal;
    return a.offset < b.offset;
  });
  return out;
}

// ---------------------------------------------------------------- hypothesis checks

bool is_nondegenerate_face(const SparsePolynomial& h, std::size_t e) {
  return is_squarefree(reduced_main_part(h, e).polynomial);
}

int exponent_rank(const SparsePolynomial& h) {
  const int rows = h.n();
  const int cols = static_cast<int>(h.size());
  std::vector<RationalVector> m(static_cast<std::size_t>(rows), RationalVector(static_cast<std::size_t>(cols)));
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m[i][j] = h.exponent(static_cast<std::size_t>(j))(i);
  }
  int rank = 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int pivot = -1;
    for (int i = rank; i < rows; ++i) {
      if (m[i][col] != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(m[rank], m[pivot]);
    for (int i = 0; i < rows; ++i) {
      if (i == rank || m[i][col] == 0) continue;
      const Rational f = m[i][col] / m[rank][col];
      for (int k = col; k < cols; ++k) m[i][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

bool rank_condition(const SparsePolynomial& h) { return exponent_rank(h) > 1; }

std::vector<std::size_t> off_ray_indices(const SparsePolynomial& h, std::size_t e) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < h.size(); ++j) {
    if (!collinear(h.exponent(j), h.exponent(e))) out.push_back(j);
  }
  return out;
}

std::vector<std::size_t> off_head_ray_indices(const SparsePolynomial& h, std::size_t e) {
  std::vector<std::size_t> out;
  const ExponentVector head_e = h.head(e);
  for (std::size_t j = 0; j < h.size(); ++j) {
    if (!collinear(h.head(j), head_e)) out.push_back(j);
  }
  return out;
}

bool hypothesis_H(const SparsePolynomial& h, std::size_t e) {
  const ExponentVector head_e = h.head(e);
  for (std::size_t j : off_ray_indices(h, e)) {
    if (collinear(h.head(j), head_e)) return false;
  }
  return true;
}

std::vector<CoprimeCheck> coprime_checks(const SparsePolynomial& h, std::size_t e) {
  const RayReduction ray = reduced_main_part(h, e);
  std::vector<CoprimeCheck> out;
  for (std::size_t j0 : off_head_ray_indices(h, e)) {
    CoprimeCheck check;
    check.j0 = j0;
    check.a = ray.polynomial;
    for (std::size_t j = 0; j < h.size(); ++j) {
      if (collinear(ExponentVector(h.exponent(j) - h.exponent(j0)), h.exponent(e))) check.coset.push_back(j);
    }
    check.shift = h.exponent(check.coset.front());
    for (std::size_t j : check.coset) {
      if (lex_less(h.exponent(j), check.shift)) check.shift = h.exponent(j);
    }
    std::vector<BigInt> b;
    for (std::size_t j : check.coset) {
      const ExponentVector diff = h.exponent(j) - check.shift;
      const long long q = is_zero(diff) ? 0 : multiple_of(diff, ray.primitive);
      if (q < 0 || (q == 0 && !is_zero(diff))) {
        throw Error(ErrorKind::RayReductionFailed,
                    format_exponent(h.exponent(j)) + " does not reduce along " + format_exponent(ray.primitive));
      }
      if (b.size() <= static_cast<std::size_t>(q)) b.resize(static_cast<std::size_t>(q) + 1, 0);
      b[static_cast<std::size_t>(q)] += h.coefficient(j);
    }
    check.b = UnivariatePolynomial(std::move(b));
    check.gcd = polynomial_gcd(check.a, check.b);
    check.coprime = check.gcd.degree() <= 0;
    out.push_back(std::move(check));
  }
  return out;
}

bool coprime_condition(const SparsePolynomial& h, std::size_t e) {
  const auto checks = coprime_checks(h, e);
  return std::all_of(checks.begin(), checks.end(), [](const CoprimeCheck& c) { return c.coprime; });
}

FaceReport face_report(const SparsePolynomial& h, long long c, std::size_t e) {
  FaceReport report;
  const std::vector<std::size_t> ray = ray_indices(h, e);
  report.e = ray.front();
  report.polar = h.exponent(report.e);
  report.primitive = primitive_vector(report.polar);
  report.lambda_e = ray;

  const HalfspaceSystem system = w_system(h, c, 0);
  std::vector<HalfspaceRow> strict;
  for (std::size_t j = 0; j < h.size(); ++j) {
    if (std::find(ray.begin(), ray.end(), j) == ray.end()) strict.push_back(system.rows[j]);
  }
  report.witness = feasible_point(h.n(), strict, system.rows[report.e]);
  report.supporting = report.witness.has_value();
  if (report.witness) {
    // Re-check the certificate by substitution.
    Rational on_face = system.rows[report.e].offset;
    for (int i = 0; i < h.n(); ++i) on_face += system.rows[report.e].normal[i] * (*report.witness)[i];
    const bool inside = std::all_of(strict.begin(), strict.end(), [&](const HalfspaceRow& row) {
      return evaluate_row(to_row(row), *report.witness) > 0;
    });
    if (on_face != 0 || !inside) throw Error(ErrorKind::Internal, "face witness failed its substitution check");
  }

  report.ray_polynomial = reduced_main_part(h, report.e).polynomial;
  report.nondegenerate = is_squarefree(report.ray_polynomial);
  report.hypothesis_H = hypothesis_H(h, report.e);
  report.coprime_condition = coprime_condition(h, report.e);
  return report;
}

std::vector<FaceReport> faces(const SparsePolynomial& h, long long c) {
  std::vector<FaceReport> out;
  std::vector<ExponentVector> seen;
  for (std::size_t j = 0; j < h.size(); ++j) {
    const ExponentVector p = primitive_vector(h.exponent(j));
    if (std::find(seen.begin(), seen.end(), p) != seen.end()) continue;
    seen.push_back(p);
    out.push_back(face_report(h, c, j));
  }
  return out;
}

std::string to_string(BoundaryKind kind) {
  switch (kind) {
    case BoundaryKind::EntireMeromorphic: return "EntireMeromorphic";
    case BoundaryKind::StrongBoundary: return "StrongBoundary";
    case BoundaryKind::WeakBoundary: return "WeakBoundary";
    case BoundaryKind::RankConditionFailed: return "RankConditionFailed";
    case BoundaryKind::Inconclusive: return "Inconclusive";
  }
  return "?";
}

BoundaryVerdict classify_boundary(const SparsePolynomial& h, long long c, const ClassifyOptions& options) {
  if (c == 0) throw Error(ErrorKind::InvalidArgument, "c must be nonzero");
  if (!h.alpha_n_nonzero() && !options.allow_flagged) {
    throw Error(ErrorKind::FlaggedPolynomial, "some alpha_(n)j is zero; pass the override to classify anyway");
  }
  BoundaryVerdict verdict;
  verdict.removal = remove_cyclotomic_factors(h);
  const SparsePolynomial& residual = verdict.removal.residual;
  if (residual.is_one()) {
    verdict.kind = BoundaryKind::EntireMeromorphic;
    verdict.diagnostics.push_back("h is a finite product of cyclotomic factors");
    return verdict;
  }
  const int D = options.cyclotomy_degree_bound > 0 ? options.cyclotomy_degree_bound
                                                   : static_cast<int>(2 * residual.max_degree());
  verdict.residual_cyclotomy = is_cyclotomic_multivariate(residual, D, D);
  if (verdict.residual_cyclotomy->kind == CyclotomyKind::UnknownUpToBound) {
    verdict.diagnostics.push_back("cyclotomicity of the residual is unknown up to degree " + std::to_string(D));
  }
  verdict.rank = exponent_rank(residual);
  if (verdict.rank <= 1) {
    verdict.kind = BoundaryKind::RankConditionFailed;
    verdict.diagnostics.push_back("rank of alpha_(n) is " + std::to_string(verdict.rank));
    return verdict;
  }
  verdict.faces = faces(residual, c);
  for (const FaceReport& f : verdict.faces) {
    if (f.supporting && f.nondegenerate && f.hypothesis_H) verdict.qualifying.push_back(f);
  }
  if (!verdict.qualifying.empty()) {
    verdict.kind = BoundaryKind::StrongBoundary;
    return verdict;
  }
  for (const FaceReport& f : verdict.faces) {
    if (f.supporting && f.nondegenerate && f.coprime_condition) verdict.qualifying.push_back(f);
  }
  if (!verdict.qualifying.empty()) {
    verdict.kind = BoundaryKind::WeakBoundary;
    return verdict;
  }
  verdict.kind = BoundaryKind::Inconclusive;
  for (const FaceReport& f : verdict.faces) {
    std::string line = "face " + format_exponent(f.polar) + ":";
    line += f.supporting ? " supporting" : " not supporting";
    line += f.nondegenerate ? ", nondegenerate" : ", degenerate";
    line += f.hypothesis_H ? ", (H) holds" : ", (H) fails";
    line += f.coprime_condition ? ", coprime" : ", not coprime";
    verdict.diagnostics.push_back(line);
  }
  return verdict;
}

}  // namespace eulerprod
