#include "eulerprod/igusa.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <numeric>

#include "eulerprod/arith.hpp"
#include "eulerprod/error.hpp"
#include "eulerprod/parallel.hpp"

namespace eulerprod {

SparsePolynomial igusa_h(int n) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "igusa_h needs n >= 2");
  if (n > 20) throw Error(ErrorKind::ResourceLimit, "igusa_h has 2^n - 1 terms; n > 20 refused");
  std::vector<Term> terms;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    Term t;
    t.exponent = ExponentVector::Zero(n + 1);
    for (int i = 0; i < n; ++i) t.exponent(i) = (mask >> i) & 1u;
    t.exponent(n) = 1;
    t.coefficient = std::popcount(mask) % 2 == 0 ? 1 : -1;
    terms.push_back(t);
  }
  return SparsePolynomial(n, std::move(terms));
}

Complex igusa_local_factor(std::uint64_t p, const VectorXc& s) {
  const double lp = std::log(static_cast<double>(p));
  Complex prod = 1.0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    const Complex one_minus = 1.0 - std::exp(-(s(i) - 1.0) * lp);
    if (std::abs(one_minus) < 1e-15) {
      throw Error(ErrorKind::DegenerateGeometricSeries, "p^{-(s_i - 1)} = 1 at i = " + std::to_string(i + 1));
    }
    prod *= one_minus;
  }
  return 1.0 + (1.0 / prod - 1.0) * (1.0 - 1.0 / static_cast<double>(p));
}

Complex igusa_local_series(std::uint64_t p, const VectorXc& s, int max_total) {
  const auto n = static_cast<int>(s.size());
  const double lp = std::log(static_cast<double>(p));
  const double pd = static_cast<double>(p);
  // layer[k] = sum_{|nu| = k} p^{-s.nu}, built one variable at a time.
  std::vector<Complex> layer(static_cast<std::size_t>(max_total) + 1, 0.0);
  layer[0] = 1.0;
  for (int i = 0; i < n; ++i) {
    const Complex x = std::exp(-s(i) * lp);
    std::vector<Complex> next(layer.size(), 0.0);
    for (int k = 0; k <= max_total; ++k) {
      Complex xp = 1.0;
      for (int a = 0; a + k <= max_total; ++a, xp *= x) next[static_cast<std::size_t>(k + a)] += layer[static_cast<std::size_t>(k)] * xp;
    }
    layer = std::move(next);
  }
  Complex total = layer[0];
  for (int k = 1; k <= max_total; ++k) {
    // phi(p^k) = p^k (1 - 1/p)
    total += std::pow(pd, k) * (1.0 - 1.0 / pd) * layer[static_cast<std::size_t>(k)];
  }
  return total;
}

double igusa_local_series_tail(std::uint64_t p, const VectorXr& sigma, int max_total) {
  // With q_i = p^{1 - sigma_i} < 1 the full series of |terms| is prod 1/(1 - q_i);
  // the part beyond max_total is at most that minus the truncated sum.
  const double lp = std::log(static_cast<double>(p));
  double full = 1;
  std::vector<double> q;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    q.push_back(std::exp((1 - sigma(i)) * lp));
    full /= 1 - q.back();
  }
  std::vector<double> layer(static_cast<std::size_t>(max_total) + 1, 0);
  layer[0] = 1;
  for (double qi : q) {
    std::vector<double> next(layer.size(), 0);
    for (int k = 0; k <= max_total; ++k) {
      double xp = 1;
      for (int a = 0; a + k <= max_total; ++a, xp *= qi) next[static_cast<std::size_t>(k + a)] += layer[static_cast<std::size_t>(k)] * xp;
    }
    layer = std::move(next);
  }
  const double partial = std::accumulate(layer.begin(), layer.end(), 0.0);
  return std::max(0.0, full - partial);
}

Complex igusa_partial_sum(const VectorXc& s, std::uint64_t M, bool parallel) {
  if (M < 1) throw Error(ErrorKind::InvalidArgument, "M must be at least 1");
  const auto n = static_cast<int>(s.size());
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "s must be nonempty");
  if (std::pow(static_cast<double>(M), n) > 2e10) throw Error(ErrorKind::ResourceLimit, "M^n exceeds 2e10 terms");
  if (M > std::numeric_limits<std::uint32_t>::max()) throw Error(ErrorKind::ResourceLimit, "M too large");
  const std::vector<std::uint32_t> phi = totient_table(static_cast<std::uint32_t>(M));
  // powers[i][m] = m^{-s_i}
  std::vector<std::vector<Complex>> powers(static_cast<std::size_t>(n), std::vector<Complex>(M + 1));
  for (int i = 0; i < n; ++i) {
    for (std::uint64_t m = 1; m <= M; ++m) powers[static_cast<std::size_t>(i)][m] = std::exp(-s(i) * std::log(static_cast<double>(m)));
  }
  // phi(a b) = phi(a) phi(b) d / phi(d), d = gcd(a, b), and d <= M divides b.
  std::vector<Complex> partial(M + 1, 0.0);
  parallel_for(M, parallel, [&](std::size_t idx) {
    const std::uint64_t m1 = idx + 1;
    Complex acc = 0.0;
    std::vector<std::uint64_t> index(static_cast<std::size_t>(n), 1);
    index[0] = m1;
    while (true) {
      unsigned long long prod = index[0];
      long double ph = phi[index[0]];
      Complex weight = powers[0][index[0]];
      for (int i = 1; i < n; ++i) {
        const std::uint64_t b = index[static_cast<std::size_t>(i)];
        const std::uint64_t d = std::gcd(prod, b);
        ph = ph * phi[b] * static_cast<long double>(d) / phi[d];
        prod *= b;
        weight *= powers[static_cast<std::size_t>(i)][b];
      }
      acc += static_cast<double>(ph) * weight;
      int i = n - 1;
      while (i >= 1 && index[static_cast<std::size_t>(i)] == M) index[static_cast<std::size_t>(i--)] = 1;
      if (i < 1) break;
      ++index[static_cast<std::size_t>(i)];
    }
    partial[m1] = acc;
  });
  Complex total = 0.0;
  for (std::uint64_t m = 1; m <= M; ++m) total += partial[m];
  return total;
}

double igusa_partial_sum_tail(const VectorXr& sigma, std::uint64_t M) {
  // phi(m_1 ... m_n) <= m_1 ... m_n, so the omitted terms are bounded by the
  // omitted part of prod_i zeta(sigma_i - 1).
  double full = 1, kept = 1;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    if (!(sigma(i) > 2)) throw Error(ErrorKind::InvalidArgument, "tail bound needs sigma_i > 2");
    full *= zeta(Complex(sigma(i) - 1, 0)).real();
    double sum = 0;
    for (std::uint64_t m = M; m >= 1; --m) sum += std::pow(static_cast<double>(m), 1 - sigma(i));
    kept *= sum;
  }
  return std::max(0.0, full - kept);
}

Complex igusa_product_value(const VectorXc& s, std::uint64_t P) {
  Complex value = 1.0;
  for (Eigen::Index i = 0; i < s.size(); ++i) value *= zeta(s(i) - 1.0);
  for (std::uint64_t p : primes_up_to(P)) {
    const double pd = static_cast<double>(p);
    const double lp = std::log(pd);
    Complex prod = 1.0;
    for (Eigen::Index i = 0; i < s.size(); ++i) prod *= 1.0 - std::exp(-(s(i) - 1.0) * lp);
    value *= 1.0 - 1.0 / pd + prod / pd;
  }
  return value;
}

HalfspaceSystem igusa_boundary(int n) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "igusa_boundary needs n >= 2");
  HalfspaceSystem system;
  system.n = n;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    HalfspaceRow row;
    for (int i = 0; i < n; ++i) row.normal.push_back((mask >> i) & 1u);
    row.offset = 1 - std::popcount(mask);
    system.rows.push_back(row);
  }
  return system;
}

HalfspaceSystem shift_to_s(const HalfspaceSystem& w_rows) {
  HalfspaceSystem out = w_rows;
  for (auto& row : out.rows) {
    // normal . (s - 1) + offset
    for (long long a : row.normal) row.offset -= a;
  }
  return out;
}

bool boundary_matches(const HalfspaceSystem& boundary, const SparsePolynomial& h) {
  return normalized_rows(boundary) == normalized_rows(shift_to_s(w_system(h, 1, 0)));
}

bool igusa_consistency(int n) { return boundary_matches(igusa_boundary(n), igusa_h(n)); }

IgusaInstance igusa_instance(int n) { return {n, igusa_h(n), igusa_boundary(n)}; }

}  // namespace eulerprod
