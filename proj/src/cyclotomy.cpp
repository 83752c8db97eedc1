#include "eulerprod/cyclotomy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "eulerprod/arith.hpp"
#include "eulerprod/error.hpp"
#include "eulerprod/exponent.hpp"
#include "eulerprod/parallel.hpp"
#include "eulerprod/series.hpp"

namespace eulerprod {

namespace {

BigInt power(const BigInt& base, int k) {
  BigInt out = 1;
  for (int i = 0; i < k; ++i) out *= base;
  return out;
}

// |b|! / prod b_i!
BigInt multinomial(const MultiIndex& b) {
  BigInt out = 1;
  int running = 0;
  for (int bi : b) {
    for (int i = 1; i <= bi; ++i) {
      ++running;
      out = out * running / i;
    }
  }
  return out;
}

std::vector<int> divisors(int n) {
  std::vector<int> out;
  for (int d = 1; d <= n; ++d) {
    if (n % d == 0) out.push_back(d);
  }
  return out;
}

int gcd_of(const MultiIndex& m) {
  int g = 0;
  for (int x : m) g = std::gcd(g, x);
  return g;
}

bool grlex_before_index(const MultiIndex& a, const MultiIndex& b) {
  return grlex_before(from_multi_index(a), from_multi_index(b));
}

// 1 - T^m
UnivariatePolynomial one_minus_power(int m) {
  std::vector<BigInt> c(static_cast<std::size_t>(m) + 1, 0);
  c[0] = 1;
  c[m] = -1;
  return UnivariatePolynomial(std::move(c));
}

UnivariatePolynomial polynomial_power(const UnivariatePolynomial& f, const BigInt& k) {
  UnivariatePolynomial out = UnivariatePolynomial::from_ints({1});
  for (BigInt i = 0; i < k; ++i) out = out * f;
  return out;
}

UnivariatePolynomial specialize(const SparsePolynomial& h, const std::vector<int>& k) {
  std::vector<BigInt> c{1};
  for (const Term& t : h.terms()) {
    long long degree = 0;
    for (int i = 0; i < h.num_vars(); ++i) degree += k[static_cast<std::size_t>(i)] * t.exponent(i);
    if (c.size() <= static_cast<std::size_t>(degree)) c.resize(static_cast<std::size_t>(degree) + 1, 0);
    c[static_cast<std::size_t>(degree)] += t.coefficient;
  }
  return UnivariatePolynomial(std::move(c));
}

// Monoid generated by the columns, truncated at total degree D.
std::vector<MultiIndex> monoid_elements(const SparsePolynomial& h, int D, std::size_t budget) {
  std::set<MultiIndex> seen;
  std::vector<MultiIndex> frontier{MultiIndex(static_cast<std::size_t>(h.num_vars()), 0)};
  seen.insert(frontier.front());
  while (!frontier.empty()) {
    std::vector<MultiIndex> next;
    for (const MultiIndex& m : frontier) {
      for (const Term& t : h.terms()) {
        MultiIndex sum = m;
        for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += static_cast<int>(t.exponent(static_cast<Eigen::Index>(i)));
        if (degree(sum) > D) continue;
        if (seen.insert(sum).second) {
          next.push_back(sum);
          if (seen.size() > budget) throw Error(ErrorKind::ResourceLimit, "monomial budget exceeded in log series");
        }
      }
    }
    frontier = std::move(next);
  }
  seen.erase(MultiIndex(static_cast<std::size_t>(h.num_vars()), 0));
  return {seen.begin(), seen.end()};
}

}  // namespace

Rational distance_constant(const SparsePolynomial& h) {
  if (h.size() == 0) throw Error(ErrorKind::InvalidArgument, "distance constant needs r >= 1");
  BigInt total = 0;
  for (const Term& t : h.terms()) total += t.coefficient < 0 ? -t.coefficient : t.coefficient;
  return Rational(1) / Rational(total);
}

std::vector<MultiIndex> compositions(std::size_t r, int k) {
  std::vector<MultiIndex> out;
  if (r == 0) return out;
  MultiIndex current(r, 0);
  auto fill = [&](auto&& self, std::size_t pos, int remaining) -> void {
    if (pos + 1 == r) {
      current[pos] = remaining;
      out.push_back(current);
      return;
    }
    for (int b = 0; b <= remaining; ++b) {
      current[pos] = b;
      self(self, pos + 1, remaining - b);
    }
  };
  fill(fill, 0, k);
  return out;
}

MultiIndex monomial_of(const SparsePolynomial& h, const MultiIndex& beta) {
  if (beta.size() != h.size()) throw Error(ErrorKind::InvalidArgument, "beta must have r entries");
  MultiIndex m(static_cast<std::size_t>(h.num_vars()), 0);
  for (std::size_t j = 0; j < beta.size(); ++j) {
    for (std::size_t i = 0; i < m.size(); ++i) m[i] += beta[j] * static_cast<int>(h.exponent(j)(static_cast<Eigen::Index>(i)));
  }
  return m;
}

BigInt gamma_exponent(const SparsePolynomial& h, const MultiIndex& beta) {
  if (beta.size() != h.size()) throw Error(ErrorKind::InvalidArgument, "beta must have r entries");
  const int norm = std::accumulate(beta.begin(), beta.end(), 0);
  if (norm <= 0 || std::any_of(beta.begin(), beta.end(), [](int b) { return b < 0; })) {
    throw Error(ErrorKind::InvalidArgument, "beta must be a nonzero vector in N^r");
  }
  // |beta| gamma(beta) = sum_{m | gcd} mu(m) (-1)^{|b|} |b|!/prod b_i! prod a_j^{b_j}, b = beta/m
  BigInt total = 0;
  for (int m : divisors(gcd_of(beta))) {
    const int mu = mobius(static_cast<std::uint64_t>(m));
    if (mu == 0) continue;
    MultiIndex b(beta.size());
    int b_norm = 0;
    for (std::size_t j = 0; j < beta.size(); ++j) {
      b[j] = beta[j] / m;
      b_norm += b[j];
    }
    BigInt term = multinomial(b);
    for (std::size_t j = 0; j < b.size(); ++j) term *= power(BigInt(h.coefficient(j)), b[j]);
    if (b_norm % 2 == 1) term = -term;
    total += mu > 0 ? term : BigInt(-term);
  }
  if (total % norm != 0) {
    std::ostringstream msg;
    msg << "gamma at beta=" << format_exponent(from_multi_index(beta)) << " is not an integer";
    throw Error(ErrorKind::NonIntegerGamma, msg.str());
  }
  return total / norm;
}

BigInt ExpansionTable::gamma(const MultiIndex& beta) const {
  auto it = entries.find(beta);
  return it == entries.end() ? BigInt(0) : it->second;
}

std::string ExpansionTable::to_text() const {
  std::string out;
  for (const auto& [beta, g] : entries) {
    out += "beta=" + format_exponent(from_multi_index(beta)) + " gamma=" + g.str() + "\n";
  }
  return out;
}

namespace {

ExpansionTable build_table(const SparsePolynomial& h, int B, const std::vector<std::size_t>& support,
                           const ExpansionOptions& options) {
  if (B < 1) throw Error(ErrorKind::InvalidArgument, "beta bound must be at least 1");
  ExpansionTable table;
  table.beta_bound = B;
  table.distance_constant = distance_constant(h);
  // number of beta with 1 <= |beta| <= B is C(B + s, s) - 1
  double count = 1;
  for (std::size_t i = 1; i <= support.size(); ++i) count = count * (B + static_cast<double>(i)) / static_cast<double>(i);
  if (count - 1 > static_cast<double>(options.entry_budget)) {
    throw Error(ErrorKind::ResourceLimit, "expansion table would hold " + std::to_string(static_cast<long long>(count - 1)) +
                                               " entries, budget " + std::to_string(options.entry_budget));
  }
  std::vector<MultiIndex> betas;
  for (int k = 1; k <= B; ++k) {
    for (const MultiIndex& local : compositions(support.size(), k)) {
      MultiIndex beta(h.size(), 0);
      for (std::size_t i = 0; i < support.size(); ++i) beta[support[i]] = local[i];
      betas.push_back(std::move(beta));
    }
  }
  std::vector<BigInt> values(betas.size());
  parallel_for(betas.size(), options.parallel, [&](std::size_t i) { values[i] = gamma_exponent(h, betas[i]); });
  for (std::size_t i = 0; i < betas.size(); ++i) {
    if (values[i] != 0) table.entries.emplace(betas[i], values[i]);
  }
  return table;
}

}  // namespace

ExpansionTable expansion_table(const SparsePolynomial& h, int B, const ExpansionOptions& options) {
  std::vector<std::size_t> all(h.size());
  std::iota(all.begin(), all.end(), 0);
  return build_table(h, B, all, options);
}

ExpansionTable main_part_expansion(const SparsePolynomial& h, std::size_t e, int B, const ExpansionOptions& options) {
  return build_table(h, B, ray_indices(h, e), options);
}

ExpansionCheck verify_expansion(const SparsePolynomial& h, int D) {
  if (D < 1) throw Error(ErrorKind::InvalidArgument, "degree bound must be at least 1");
  ExpansionCheck check;
  check.degree_bound = D;
  TruncatedSeries product(h.num_vars(), D);
  std::vector<int> weights;
  for (const Term& t : h.terms()) weights.push_back(static_cast<int>(total_degree(t.exponent)));

  // beta with sum_j beta_j deg(alpha_j) <= D, in lexicographic order.
  MultiIndex beta(h.size(), 0);
  auto visit = [&](auto&& self, std::size_t pos, int budget) -> void {
    if (pos == beta.size()) {
      if (std::all_of(beta.begin(), beta.end(), [](int b) { return b == 0; })) return;
      const BigInt g = gamma_exponent(h, beta);
      if (g == 0) return;
      product.multiply_binomial_power(monomial_of(h, beta), g);
      ++check.factors;
      return;
    }
    for (int b = 0; b * weights[pos] <= budget; ++b) {
      beta[pos] = b;
      self(self, pos + 1, budget - b * weights[pos]);
    }
    beta[pos] = 0;
  };
  visit(visit, 0, D);

  const TruncatedSeries target = TruncatedSeries::from_polynomial(h, D);
  std::set<MultiIndex> monomials;
  for (const auto& [m, v] : product.coefficients()) monomials.insert(m);
  for (const auto& [m, v] : target.coefficients()) monomials.insert(m);
  for (const MultiIndex& m : monomials) {
    const BigInt expected = target.coefficient(m);
    const BigInt found = product.coefficient(m);
    if (expected == found) continue;
    if (!check.first_mismatch || grlex_before_index(m, *check.first_mismatch)) {
      check.first_mismatch = m;
      check.expected = expected;
      check.found = found;
    }
  }
  check.passed = !check.first_mismatch.has_value();
  return check;
}

BigInt LogSeriesOracle::s(const MultiIndex& mu) {
  if (degree(mu) == 0) return 0;
  auto it = memo_.find(mu);
  if (it != memo_.end()) return it->second;
  const int norm = degree(mu);
  BigInt value = 0;
  MultiIndex rest(mu.size());
  for (const Term& t : h_.terms()) {
    bool fits = true;
    bool same = true;
    for (std::size_t i = 0; i < mu.size(); ++i) {
      rest[i] = mu[i] - static_cast<int>(t.exponent(static_cast<Eigen::Index>(i)));
      if (rest[i] < 0) fits = false;
      if (rest[i] != 0) same = false;
    }
    if (!fits) continue;
    if (same) {
      value += BigInt(norm) * t.coefficient;
    } else {
      value -= BigInt(t.coefficient) * s(rest);
    }
  }
  memo_.emplace(mu, value);
  return value;
}

BigInt LogSeriesOracle::aggregated_gamma(const MultiIndex& lambda) {
  const int n = gcd_of(lambda);
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "Gamma at the zero monomial");
  MultiIndex base(lambda.size());
  for (std::size_t i = 0; i < lambda.size(); ++i) base[i] = lambda[i] / n;
  const int base_degree = degree(base);
  // n |lambda0| Gamma(n lambda0) = sum_{d | n} mu(n/d) (-s_{d lambda0})
  BigInt total = 0;
  for (int d : divisors(n)) {
    const int mu = mobius(static_cast<std::uint64_t>(n / d));
    if (mu == 0) continue;
    MultiIndex point(lambda.size());
    for (std::size_t i = 0; i < lambda.size(); ++i) point[i] = base[i] * d;
    const BigInt v = s(point);
    total += mu > 0 ? BigInt(-v) : v;
  }
  const BigInt scale = BigInt(n) * base_degree;
  if (total % scale != 0) {
    throw Error(ErrorKind::NonIntegerGamma,
                "log-series exponent at " + format_exponent(from_multi_index(lambda)) + " is not an integer");
  }
  return total / scale;
}

BigInt LogSeriesOracle::gamma(const MultiIndex& beta) {
  const MultiIndex lambda = monomial_of(h_, beta);
  const auto pre = preimages(h_, lambda);
  if (pre.size() > 1) {
    throw Error(ErrorKind::AmbiguousAggregation, std::to_string(pre.size()) + " exponent vectors beta map to " +
                                                     format_exponent(from_multi_index(lambda)));
  }
  return aggregated_gamma(lambda);
}

std::vector<MultiIndex> preimages(const SparsePolynomial& h, const MultiIndex& lambda) {
  std::vector<MultiIndex> out;
  MultiIndex beta(h.size(), 0);
  MultiIndex remaining = lambda;
  auto visit = [&](auto&& self, std::size_t pos) -> void {
    if (pos == beta.size()) {
      if (std::all_of(remaining.begin(), remaining.end(), [](int x) { return x == 0; })) out.push_back(beta);
      return;
    }
    const ExponentVector& col = h.exponent(pos);
    int b = 0;
    while (true) {
      beta[pos] = b;
      self(self, pos + 1);
      bool fits = true;
      for (std::size_t i = 0; i < remaining.size(); ++i) {
        if (remaining[i] < col(static_cast<Eigen::Index>(i))) fits = false;
      }
      if (!fits) break;
      for (std::size_t i = 0; i < remaining.size(); ++i) remaining[i] -= static_cast<int>(col(static_cast<Eigen::Index>(i)));
      ++b;
    }
    for (std::size_t i = 0; i < remaining.size(); ++i) remaining[i] += b * static_cast<int>(col(static_cast<Eigen::Index>(i)));
    beta[pos] = 0;
  };
  visit(visit, 0);
  std::erase_if(out, [](const MultiIndex& b) { return std::all_of(b.begin(), b.end(), [](int x) { return x == 0; }); });
  return out;
}

BigInt gamma_log_oracle(const SparsePolynomial& h, const MultiIndex& beta) {
  LogSeriesOracle oracle(h);
  return oracle.gamma(beta);
}

std::map<MultiIndex, BigInt> monomial_exponents(const SparsePolynomial& h, int D, std::size_t budget) {
  std::map<MultiIndex, BigInt> out;
  LogSeriesOracle oracle(h);
  std::vector<MultiIndex> elements = monoid_elements(h, D, budget);
  std::sort(elements.begin(), elements.end(),
            [](const MultiIndex& a, const MultiIndex& b) { return degree(a) < degree(b); });
  for (const MultiIndex& lambda : elements) {
    BigInt g = oracle.aggregated_gamma(lambda);
    if (g != 0) out.emplace(lambda, std::move(g));
  }
  return out;
}

// ---------------------------------------------------------------- cyclotomicity

std::string to_string(CyclotomyKind kind) {
  switch (kind) {
    case CyclotomyKind::Cyclotomic: return "Cyclotomic";
    case CyclotomyKind::NotCyclotomicCertified: return "NotCyclotomicCertified";
    case CyclotomyKind::UnknownUpToBound: return "UnknownUpToBound";
  }
  return "?";
}

std::map<int, BigInt> univariate_exponents(const UnivariatePolynomial& f, int K) {
  if (f.is_zero() || f[0] != 1) throw Error(ErrorKind::InvalidArgument, "f(0) must be 1");
  // s_m = m [T^m] log f = m f_m - sum_{i=1}^{m-1} f_i s_{m-i}
  std::vector<BigInt> s(static_cast<std::size_t>(K) + 1, 0);
  for (int m = 1; m <= K; ++m) {
    BigInt v = f[static_cast<std::size_t>(m)] * m;
    for (int i = 1; i < m && i <= f.degree(); ++i) v -= f[static_cast<std::size_t>(i)] * s[static_cast<std::size_t>(m - i)];
    s[static_cast<std::size_t>(m)] = v;
  }
  std::map<int, BigInt> out;
  for (int m = 1; m <= K; ++m) {
    BigInt total = 0;
    for (int d : divisors(m)) {
      const int mu = mobius(static_cast<std::uint64_t>(m / d));
      if (mu != 0) total += mu > 0 ? BigInt(-s[static_cast<std::size_t>(d)]) : s[static_cast<std::size_t>(d)];
    }
    if (total % m != 0) throw Error(ErrorKind::NonIntegerGamma, "univariate exponent is not an integer");
    if (total != 0) out.emplace(m, total / m);
  }
  return out;
}

namespace {

// Exact reconstruction with exponents up to K. Cyclotomic f of degree d has
// every exponent in [-d, d], which gives a cheap early exit.
std::optional<std::map<int, BigInt>> reconstruct_univariate(const UnivariatePolynomial& f, int K) {
  const int d = f.degree();
  const auto exponents = univariate_exponents(f, K);
  for (const auto& [m, g] : exponents) {
    if (abs(g) > d) return std::nullopt;
  }
  UnivariatePolynomial lhs = UnivariatePolynomial::from_ints({1});
  UnivariatePolynomial rhs = f;
  for (const auto& [m, g] : exponents) {
    if (g > 0) {
      lhs = lhs * polynomial_power(one_minus_power(m), g);
    } else {
      rhs = rhs * polynomial_power(one_minus_power(m), -g);
    }
  }
  if (lhs == rhs) return exponents;
  return std::nullopt;
}

std::optional<Complex> off_circle_root(const UnivariatePolynomial& f) {
  std::optional<Complex> best;
  double best_gap = 1e-6;
  for (const Complex& z : roots(squarefree_part(f))) {
    const double gap = std::abs(std::abs(z) - 1.0);
    if (gap > best_gap) {
      best_gap = gap;
      best = z;
    }
  }
  return best;
}

}  // namespace

CyclotomyVerdict is_cyclotomic_univariate(const UnivariatePolynomial& f) {
  if (f.is_zero() || f[0] != 1) throw Error(ErrorKind::InvalidArgument, "f(0) must be 1");
  CyclotomyVerdict verdict;
  const int d = f.degree();
  if (d <= 0) {
    verdict.kind = CyclotomyKind::Cyclotomic;
    return verdict;
  }
  // phi(k) >= sqrt(k/2) bounds the index of any cyclotomic factor by 2d^2.
  int K = 2 * d * d + 2;
  verdict.degree_bound = K;
  auto record = [&](const std::map<int, BigInt>& exponents) {
    verdict.kind = CyclotomyKind::Cyclotomic;
    for (const auto& [m, g] : exponents) verdict.factorization.emplace(MultiIndex{m}, g);
  };
  if (auto exponents = reconstruct_univariate(f, K)) {
    record(*exponents);
    return verdict;
  }
  if (auto root = off_circle_root(f)) {
    verdict.kind = CyclotomyKind::NotCyclotomicCertified;
    verdict.witness = CyclotomyWitness{{}, f, root, "root of modulus " + std::to_string(std::abs(*root))};
    return verdict;
  }
  // Every root is within 1e-6 of the unit circle: retry with a larger bound.
  K *= 4;
  verdict.degree_bound = K;
  if (auto exponents = reconstruct_univariate(f, K)) {
    record(*exponents);
    return verdict;
  }
  verdict.kind = CyclotomyKind::UnknownUpToBound;
  return verdict;
}

CyclotomyVerdict is_cyclotomic_multivariate(const SparsePolynomial& h, int B, int D) {
  if (B < 1 || D < 1) throw Error(ErrorKind::InvalidArgument, "bounds must be positive");
  CyclotomyVerdict verdict;
  verdict.beta_bound = B;
  verdict.degree_bound = D;
  if (h.is_one()) {
    verdict.kind = CyclotomyKind::Cyclotomic;
    return verdict;
  }
  const std::size_t vars = static_cast<std::size_t>(h.num_vars());
  auto try_substitution = [&](const std::vector<int>& k) {
    const UnivariatePolynomial f = specialize(h, k);
    const CyclotomyVerdict uni = is_cyclotomic_univariate(f);
    if (uni.kind != CyclotomyKind::NotCyclotomicCertified) return false;
    verdict.kind = CyclotomyKind::NotCyclotomicCertified;
    verdict.witness = uni.witness;
    verdict.witness->substitution = k;
    return true;
  };

  if (try_substitution(std::vector<int>(vars, 1))) return verdict;

  // Finite Gamma-support below D, checked up to 2D, then exact reconstruction.
  std::optional<std::map<MultiIndex, BigInt>> support;
  try {
    support = monomial_exponents(h, 2 * D);
  } catch (const Error& err) {
    if (err.kind() != ErrorKind::ResourceLimit) throw;
  }
  if (support && std::all_of(support->begin(), support->end(),
                             [D](const auto& entry) { return degree(entry.first) <= D; })) {
    int lhs_degree = 0;
    int rhs_degree = static_cast<int>(h.max_degree());
    for (const auto& [lambda, g] : *support) {
      const int w = degree(lambda) * abs(g).convert_to<int>();
      (g > 0 ? lhs_degree : rhs_degree) += w;
    }
    const int bound = std::max(lhs_degree, rhs_degree);
    TruncatedSeries lhs(static_cast<int>(vars), bound);
    TruncatedSeries rhs = TruncatedSeries::from_polynomial(h, bound);
    for (const auto& [lambda, g] : *support) {
      if (g > 0) {
        lhs.multiply_binomial_power(lambda, g);
      } else {
        rhs.multiply_binomial_power(lambda, -g);
      }
    }
    if (lhs == rhs) {
      verdict.kind = CyclotomyKind::Cyclotomic;
      verdict.factorization = *support;
      return verdict;
    }
  }

  std::vector<int> k(vars, 1);
  while (true) {
    std::size_t i = vars;
    while (i > 0 && k[i - 1] == 3) k[--i] = 1;
    if (i == 0) break;
    ++k[i - 1];
    if (try_substitution(k)) return verdict;
  }
  verdict.kind = CyclotomyKind::UnknownUpToBound;
  return verdict;
}

UnivariatePolynomial cyclotomic_polynomial(int k) {
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "cyclotomic index must be positive");
  UnivariatePolynomial numerator = UnivariatePolynomial::from_ints({1});
  UnivariatePolynomial denominator = UnivariatePolynomial::from_ints({1});
  for (int d : divisors(k)) {
    const int mu = mobius(static_cast<std::uint64_t>(k / d));
    if (mu > 0) numerator = numerator * one_minus_power(d);
    if (mu < 0) denominator = denominator * one_minus_power(d);
  }
  auto q = exact_divide(numerator, denominator);
  if (!q) throw Error(ErrorKind::Internal, "cyclotomic division was not exact");
  return *q;
}

std::optional<SparsePolynomial> divide_by_ray_factor(const SparsePolynomial& h, const ExponentVector& lambda0,
                                                     const UnivariatePolynomial& factor) {
  if (factor.is_zero() || factor[0] != 1) throw Error(ErrorKind::InvalidArgument, "factor must have constant term 1");
  // Split h into cosets rep + Z lambda0 and divide each chain separately.
  std::map<MultiIndex, std::vector<BigInt>> chains;
  auto place = [&](const ExponentVector& e, long long c) {
    long long t = -1;
    for (Eigen::Index i = 0; i < e.size(); ++i) {
      if (lambda0(i) > 0) t = t < 0 ? e(i) / lambda0(i) : std::min(t, e(i) / lambda0(i));
    }
    const ExponentVector rep = e - lambda0 * t;
    auto& chain = chains[to_multi_index(rep)];
    if (chain.size() <= static_cast<std::size_t>(t)) chain.resize(static_cast<std::size_t>(t) + 1, 0);
    chain[static_cast<std::size_t>(t)] += c;
  };
  place(ExponentVector::Zero(h.num_vars()), 1);
  for (const Term& t : h.terms()) place(t.exponent, t.coefficient);

  std::vector<Term> terms;
  for (const auto& [rep, chain] : chains) {
    auto q = exact_divide(UnivariatePolynomial(chain), factor);
    if (!q) return std::nullopt;
    const ExponentVector base = from_multi_index(rep);
    for (int k = 0; k <= q->degree(); ++k) {
      const BigInt& c = q->coefficients[static_cast<std::size_t>(k)];
      if (c == 0) continue;
      const ExponentVector e = base + lambda0 * k;
      if (is_zero(e)) {
        if (c != 1) return std::nullopt;
        continue;
      }
      terms.push_back({c.convert_to<long long>(), e});
    }
  }
  return SparsePolynomial(h.n(), std::move(terms));
}

CyclotomicRemoval remove_cyclotomic_factors(const SparsePolynomial& h) {
  CyclotomicRemoval out{h, {}};
  while (!out.residual.is_one()) {
    const SparsePolynomial& current = out.residual;
    const long long deg = current.max_degree();
    auto order = [](const ExponentVector& a, const ExponentVector& b) { return grlex_before(a, b); };
    std::set<ExponentVector, decltype(order)> candidates(order);
    for (const Term& t : current.terms()) candidates.insert(primitive_vector(t.exponent));
    try {
      for (const auto& [lambda, g] : monomial_exponents(current, static_cast<int>(2 * deg))) {
        candidates.insert(primitive_vector(from_multi_index(lambda)));
      }
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::ResourceLimit) throw;
    }
    bool divided = false;
    for (const ExponentVector& lambda0 : candidates) {
      const long long step = total_degree(lambda0);
      const long long ratio = deg / step;
      for (long long k = 1; k <= 2 * ratio * ratio + 2 && !divided; ++k) {
        if (static_cast<long long>(euler_phi(static_cast<std::uint64_t>(k))) > ratio) continue;
        auto q = divide_by_ray_factor(current, lambda0, cyclotomic_polynomial(static_cast<int>(k)));
        if (!q) continue;
        for (int d : divisors(static_cast<int>(k))) {
          const int mu = mobius(static_cast<std::uint64_t>(k / d));
          if (mu == 0) continue;
          BigInt& slot = out.removed[to_multi_index(lambda0 * d)];
          slot += mu;
        }
        out.residual = std::move(*q);
        divided = true;
      }
      if (divided) break;
    }
    if (!divided) break;
  }
  std::erase_if(out.removed, [](const auto& entry) { return entry.second == 0; });
  return out;
}

}  // namespace eulerprod
