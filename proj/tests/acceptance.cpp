// One line per acceptance criterion; exits nonzero when any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include "eulerprod/exponent.hpp"
#include "eulerprod/arith.hpp"
#include "eulerprod/continuation.hpp"
#include "eulerprod/cyclotomy.hpp"
#include "eulerprod/error.hpp"
#include "eulerprod/geometry.hpp"
#include "eulerprod/igusa.hpp"
#include "eulerprod/puiseux.hpp"
#include "fixtures.hpp"

using namespace eulerprod;

namespace {

// Tolerances and budgets.
constexpr int kNecklaceMaxM = 20;
constexpr double kNecklaceSeconds = 1.0;
constexpr int kReconstructionDegree = 8;
constexpr double kReconstructionSeconds = 30.0;
constexpr int kOracleBetaBound = 6;
constexpr double kContinuationTolerance = 1e-6;
constexpr double kContinuationSeconds = 60.0;
constexpr std::uint64_t kDirectPrimeCutoff = 10000;
constexpr double kCollapseTolerance = 1e-10;
constexpr double kIgusaIdentityTolerance = 1e-3;
constexpr std::uint64_t kIgusaCutoff = 3000;
constexpr double kLocalFactorTolerance = 1e-12;
constexpr int kLocalSeriesDegree = 60;
constexpr double kIgusaSeconds = 120.0;
constexpr double kRootTolerance = 1e-12;
constexpr double kTrackingAgreement = 1e-4;
constexpr double kZeroResidual = 1e-10;
constexpr long long kCountSlack = 1;
constexpr double kInterferenceDistance = 1e-3;
constexpr int kPermutationTrials = 20;

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int index, const std::string& name, const std::function<Outcome()>& body) {
  const auto start = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
  if (!o.pass) ++failures;
  std::printf("[%s] %2d %-28s %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", index, name.c_str(), o.detail.c_str(), seconds);
  std::fflush(stdout);
}

double since(Clock::time_point start) { return std::chrono::duration<double>(Clock::now() - start).count(); }

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

const ZetaZeroTable& zeros() {
  static const ZetaZeroTable table = ZetaZeroTable::load(std::string(EULERPROD_TEST_DATA) + "/zeta_zeros.txt");
  return table;
}

Outcome necklace() {
  const auto start = Clock::now();
  int checked = 0;
  for (long long a = -5; a <= 5; ++a) {
    if (a == 0) continue;
    std::ostringstream text;
    text << (a > 0 ? "1 - " : "1 + ") << std::llabs(a) << "*X1";
    const SparsePolynomial h = parse_polynomial(text.str(), 1);
    for (int m = 1; m <= kNecklaceMaxM; ++m) {
      BigInt expected = 0;
      for (int d = 1; d <= m; ++d) {
        if (m % d == 0) {
          expected += mobius(static_cast<std::uint64_t>(d)) * boost::multiprecision::pow(BigInt(a), static_cast<unsigned>(m / d));
        }
      }
      if (expected % m != 0) return {false, "necklace sum not divisible"};
      if (gamma_exponent(h, {m}) != expected / m) return {false, "mismatch at a=" + std::to_string(a) + " m=" + std::to_string(m)};
      ++checked;
    }
  }
  const double t = since(start);
  return {t < kNecklaceSeconds, std::to_string(checked) + " exact identities, m <= 20"};
}

Outcome reconstruction() {
  const auto start = Clock::now();
  int passed = 0;
  std::string failed;
  const auto set = testing::fixture_set();
  for (const auto& f : set) {
    if (verify_expansion(f.h, kReconstructionDegree).passed) {
      ++passed;
    } else {
      failed += " " + f.name;
    }
  }
  const double t = since(start);
  return {passed == static_cast<int>(set.size()) && t < kReconstructionSeconds,
          std::to_string(passed) + "/" + std::to_string(set.size()) + " fixtures at D = 8" + failed};
}

Outcome dual_oracle() {
  std::size_t direct = 0, aggregated = 0;
  for (const auto& f : testing::fixture_set()) {
    LogSeriesOracle oracle(f.h);
    std::map<MultiIndex, BigInt> sums;
    for (int k = 1; k <= kOracleBetaBound; ++k) {
      for (const auto& beta : compositions(f.h.size(), k)) {
        const BigInt g = gamma_exponent(f.h, beta);
        const MultiIndex lambda = monomial_of(f.h, beta);
        if (preimages(f.h, lambda).size() == 1) {
          if (oracle.gamma(beta) != g) return {false, f.name + ": gamma mismatch"};
          ++direct;
        }
        sums[lambda] += g;
      }
    }
    // Monomials hit by several beta are compared through the aggregated exponent,
    // provided every preimage has |beta| <= 6.
    for (const auto& [lambda, sum] : sums) {
      const auto pre = preimages(f.h, lambda);
      if (pre.size() < 2) continue;
      const bool complete = std::all_of(pre.begin(), pre.end(), [](const MultiIndex& b) {
        return std::accumulate(b.begin(), b.end(), 0) <= kOracleBetaBound;
      });
      if (!complete) continue;
      if (oracle.aggregated_gamma(lambda) != sum) return {false, f.name + ": aggregated mismatch"};
      ++aggregated;
    }
  }
  return {true, std::to_string(direct) + " beta exact, " + std::to_string(aggregated) + " shared monomials exact"};
}

Outcome continuation() {
  const auto start = Clock::now();
  const SparsePolynomial h = igusa_h(2);
  VectorXc s(2);
  s << 3.0, 3.0;
  const ContinuationResult r = continued_value(h, 1, s, make_context(h, 1.5, &zeros()));
  const DirectProduct d = direct_euler_product(h, 1, s, kDirectPrimeCutoff);
  const double diff = std::abs(r.value - d.value);
  return {diff <= kContinuationTolerance && since(start) < kContinuationSeconds,
          "|difference| = " + sci(diff) + " <= 1e-6"};
}

Outcome collapse() {
  const SparsePolynomial h = parse_polynomial("1 - X1*X2", 2);
  VectorXc s(2);
  s << 0.3, 0.4;
  const ContinuationResult r = continued_value(h, 1, s, make_context(h, 0.1, &zeros()));
  const double diff = std::abs(r.value - 1.0 / zeta(0.7));
  return {diff <= kCollapseTolerance, "|Z - 1/zeta(0.7)| = " + sci(diff) + " <= 1e-10"};
}

Outcome igusa_identity() {
  const auto start = Clock::now();
  VectorXc s(2);
  s << 4.0, 4.0;
  VectorXr sigma(2);
  sigma << 4.0, 4.0;
  const double diff = std::abs(igusa_partial_sum(s, kIgusaCutoff) - igusa_product_value(s, kIgusaCutoff));
  const double tail = igusa_partial_sum_tail(sigma, kIgusaCutoff);
  VectorXc sl(2);
  sl << 3.0, 4.0;
  double local = 0;
  for (std::uint64_t p : {2, 3, 5}) {
    local = std::max(local, std::abs(igusa_local_factor(p, sl) - igusa_local_series(p, sl, kLocalSeriesDegree)));
  }
  return {diff <= kIgusaIdentityTolerance && local <= kLocalFactorTolerance && since(start) < kIgusaSeconds,
          "identity " + sci(diff) + " (tail bound " + sci(tail) + "), local factors " + sci(local)};
}

Outcome verdicts() {
  const bool ok = classify_boundary(igusa_h(2), 1).kind == BoundaryKind::StrongBoundary &&
                  classify_boundary(igusa_h(3), 1).kind == BoundaryKind::StrongBoundary &&
                  classify_boundary(parse_polynomial("1 - X1*X2", 2), 1).kind == BoundaryKind::EntireMeromorphic &&
                  classify_boundary(parse_polynomial("1 + X1*X2 + X1^2*X2^2*X3", 2), 1).kind ==
                      BoundaryKind::RankConditionFailed;
  return {ok, "Strong, Strong, EntireMeromorphic, RankConditionFailed"};
}

struct PuiseuxFixture {
  SparsePolynomial h = igusa_h(2);
  std::size_t e = 0;
  BasePoint base;
  DirectionConfig dir;
};

PuiseuxFixture puiseux_fixture() {
  PuiseuxFixture f;
  f.e = *f.h.find(make_exponent({1, 0, 1}));
  f.base = make_base_point(f.h, 1, f.e, {Rational(-1), Rational(7, 10)}, VectorXr::Zero(2));
  DirectionConfig dir;
  dir.theta = {2, 1};
  for (std::size_t j = 0; j < f.h.size(); ++j) dir.pairings.push_back(2 * f.h.exponent(j)(0) + f.h.exponent(j)(1));
  dir.ray_pairing = 2;
  dir.parity = true;
  f.dir = dir;
  return f;
}

Outcome puiseux() {
  const PuiseuxFixture f = puiseux_fixture();
  const std::size_t column_111 = *f.h.find(make_exponent({1, 1, 1}));
  const GeneralizedPolynomial W = generalized_polynomial(f.h, f.base, f.dir, 53);
  const RayPolynomial ray = ray_polynomial(f.h, f.e, f.dir, 53, f.base.tau0);
  if (ray.integer != UnivariatePolynomial::from_ints({1, 0, -1})) return {false, "ray polynomial is not 1 - T^2"};
  if (ray.roots.size() != 2) return {false, "expected two roots"};
  double root_err = 0, c1_err = 0, theta_err = 0, track_c1 = 0, track_theta = 0;
  bool descending_ok = true, e_prime_ok = true, exact_ok = true;
  for (Complex c0 : ray.roots) {
    const Complex target = c0.real() < 0 ? -1.0 : 1.0;
    root_err = std::max(root_err, std::abs(c0 - target));
    const std::size_t e_prime = select_e_prime(W, c0);
    e_prime_ok = e_prime_ok && e_prime == column_111;
    const PuiseuxBranch closed = branch_leading_terms(W, c0, e_prime);
    c1_err = std::max(c1_err, std::abs(closed.c1 - 0.5));
    exact_ok = exact_ok && closed.theta1_exact && *closed.theta1_exact == Rational(7, 10);
    theta_err = std::max(theta_err, std::abs(*closed.theta1 - 0.7));
    descending_ok = descending_ok && closed.descending == (target.real() < 0);
    const PuiseuxBranch tracked = track_branch(W, c0, geometric_grid());
    if (!tracked.theta1) return {false, "tracking lost the branch"};
    track_c1 = std::max(track_c1, std::abs(tracked.c1 - closed.c1));
    track_theta = std::max(track_theta, std::abs(*tracked.theta1 - *closed.theta1));
  }
  const auto chosen = descending_branch(W, ray);
  descending_ok = descending_ok && chosen && std::abs(chosen->c0 + 1.0) < kRootTolerance;
  const bool ok = root_err <= kRootTolerance && e_prime_ok && exact_ok && c1_err <= kRootTolerance &&
                  theta_err <= kRootTolerance && track_c1 <= kTrackingAgreement &&
                  track_theta <= kTrackingAgreement && descending_ok;
  return {ok, "roots " + sci(root_err) + ", tracked c1 " + sci(track_c1) + ", tracked theta1 " + sci(track_theta) +
                  ", descending c0 = -1"};
}

Outcome accumulation() {
  const PuiseuxFixture f = puiseux_fixture();
  FaceAnalysisOptions opts;
  opts.base = f.base;
  opts.direction = f.dir;
  opts.primes = {53, 101, 997};
  opts.m_lo = 0;
  opts.m_hi = 10;
  const FaceAnalysis a = analyze_face(f.h, 1, f.e, opts, &zeros());
  double worst = 0;
  std::size_t points = 0;
  long long count_gap = 0;
  std::string counts;
  for (const auto& pa : a.primes) {
    if (pa.checks.size() != 11) return {false, "p = " + std::to_string(pa.p) + " has " + std::to_string(pa.checks.size()) + " checked points"};
    for (const auto& zc : pa.checks) worst = std::max(worst, zc.residual);
    points += pa.checks.size();
    count_gap = std::max(count_gap, std::llabs(pa.window.count - pa.window.floor_bound));
    counts += " " + std::to_string(pa.window.count) + "/" + std::to_string(pa.window.floor_bound);
  }
  const bool clear = !a.interference.flagged && !(a.interference.min_distance < kInterferenceDistance);
  const bool ok = a.primes.size() == 3 && worst <= kZeroResidual && count_gap <= kCountSlack && clear;
  return {ok, std::to_string(points) + " zeros, max residual " + sci(worst) + ", counts" + counts +
                  ", min singular distance " + sci(a.interference.min_distance)};
}

Outcome invariance() {
  std::mt19937_64 rng(20240607);
  int checks = 0;
  for (const auto& f : testing::fixture_set()) {
    const BoundaryKind kind = classify_boundary(f.h, 1).kind;
    for (int trial = 0; trial < kPermutationTrials; ++trial) {
      std::vector<std::size_t> order(f.h.size());
      std::iota(order.begin(), order.end(), 0);
      std::shuffle(order.begin(), order.end(), rng);
      std::vector<int> perm(static_cast<std::size_t>(f.h.n()));
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      if (classify_boundary(reorder_terms(f.h, order), 1).kind != kind) return {false, f.name + ": term order"};
      if (classify_boundary(permute_variables(f.h, perm), 1).kind != kind) return {false, f.name + ": variables"};
      checks += 2;
    }
  }
  return {true, std::to_string(checks) + " permuted classifications unchanged"};
}

}  // namespace

int main() {
  report(1, "necklace identity", necklace);
  report(2, "expansion reconstruction", reconstruction);
  report(3, "dual-oracle gamma", dual_oracle);
  report(4, "continuation consistency", continuation);
  report(5, "cyclotomic collapse", collapse);
  report(6, "igusa identity", igusa_identity);
  report(7, "verdicts", verdicts);
  report(8, "puiseux fixture", puiseux);
  report(9, "zero accumulation", accumulation);
  report(10, "geometry invariance", invariance);
  std::printf("%d of 10 criteria passed\n", 10 - failures);
  return failures == 0 ? 0 : 1;
}
