#include "eulerprod/continuation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "eulerprod/cyclotomy.hpp"
#include "eulerprod/error.hpp"
#include "eulerprod/exponent.hpp"
#include "eulerprod/parallel.hpp"

namespace eulerprod {

namespace {

// (s, c) . alpha_j
Complex pairing(const SparsePolynomial& h, std::size_t j, const VectorXc& s, long long c) {
  Complex v = static_cast<double>(c * h.last(j));
  for (int i = 0; i < h.n(); ++i) v += static_cast<double>(h.exponent(j)(i)) * s(i);
  return v;
}

struct ZeroLocator {
  const ZetaZeroTable* zeros;

  // Nearest of 1 and 1/2 +- i gamma_k to z.
  std::pair<Complex, double> nearest(const Complex& z) const {
    Complex best = 1.0;
    double dist = std::abs(z - 1.0);
    if (zeros == nullptr || zeros->size() == 0) return {best, dist};
    const auto ords = zeros->ordinates();
    const double y = std::abs(z.imag());
    auto it = std::lower_bound(ords.begin(), ords.end(), y);
    for (auto cand : {it, it == ords.begin() ? it : it - 1}) {
      if (cand == ords.end()) continue;
      const Complex rho(0.5, z.imag() < 0 ? -*cand : *cand);
      const double d = std::abs(z - rho);
      if (d < dist) {
        dist = d;
        best = rho;
      }
    }
    return {best, dist};
  }
};

}  // namespace

std::uint64_t m_delta(const Rational& C, double delta) {
  if (!(delta > 0)) throw Error(ErrorKind::InvalidArgument, "delta must be positive");
  if (C <= 0 || C > 1) throw Error(ErrorKind::InvalidArgument, "C must lie in (0, 1]");
  const long double base = 1.0L / C.convert_to<long double>();
  const long double value = std::pow(base, 1.0L / static_cast<long double>(delta));
  if (!std::isfinite(value) || value > 1e15L) throw Error(ErrorKind::ResourceLimit, "M_delta is too large");
  auto floor_value = static_cast<std::uint64_t>(std::floor(value));
  // Guard floor against rounding just below an exact integer power.
  const auto near = static_cast<std::uint64_t>(std::llround(value));
  if (near > floor_value && std::fabs(value - static_cast<long double>(near)) < 1e-12L * value) floor_value = near;
  return floor_value + 1;
}

ContinuationContext make_context(const SparsePolynomial& h, double delta, const ZetaZeroTable* zeros) {
  ContinuationContext ctx;
  ctx.delta = delta;
  ctx.m_delta = m_delta(distance_constant(h), delta);
  ctx.zeros = zeros;
  return ctx;
}

VectorXc local_point(double p, const VectorXc& s, long long c) {
  const double lp = std::log(p);
  VectorXc x(s.size() + 1);
  for (Eigen::Index i = 0; i < s.size(); ++i) x(i) = std::exp(-s(i) * lp);
  x(s.size()) = std::exp(-static_cast<double>(c) * lp);
  return x;
}

DirectProduct direct_euler_product(const SparsePolynomial& h, long long c, const VectorXc& s, std::uint64_t P) {
  if (s.size() != h.n()) throw Error(ErrorKind::InvalidArgument, "s must have n entries");
  DirectProduct out;
  out.prime_cutoff = P;
  for (std::size_t j = 0; j < h.size(); ++j) {
    if (pairing(h, j, s, c).real() <= 1.0) out.outside_absolute_convergence = true;
  }
  Complex value = 1.0;
  for (std::uint64_t p : primes_up_to(P)) value *= evaluate(h, local_point(static_cast<double>(p), s, c));
  out.value = value;
  return out;
}

ContinuationResult continued_value(const SparsePolynomial& h, long long c, const VectorXc& s,
                                   const ContinuationContext& ctx) {
  if (s.size() != h.n()) throw Error(ErrorKind::InvalidArgument, "s must have n entries");
  std::vector<Complex> pairings;
  for (std::size_t j = 0; j < h.size(); ++j) {
    pairings.push_back(pairing(h, j, s, c));
    if (!(pairings.back().real() > ctx.delta)) {
      throw Error(ErrorKind::OutsideDomain, "Re((s,c).alpha_" + std::to_string(j) + ") = " +
                                                std::to_string(pairings.back().real()) + " is not above delta = " +
                                                std::to_string(ctx.delta));
    }
  }
  ContinuationResult result;
  result.m_delta = ctx.m_delta;
  result.tail_tolerance = ctx.tail_tolerance;

  Complex finite = 1.0;
  for (std::uint64_t p : primes_up_to(ctx.m_delta)) finite *= evaluate(h, local_point(static_cast<double>(p), s, c));
  result.finite_product = finite;

  const ZeroLocator locator{ctx.zeros};
  Complex log_part = 0.0;
  int quiet = 0;
  for (int k = 1; k <= ctx.beta_bound; ++k) {
    const std::vector<MultiIndex> betas = compositions(h.size(), k);
    std::vector<Complex> terms(betas.size(), 0.0);
    std::vector<char> contributes(betas.size(), 0);
    std::vector<SingularProximity> proximity(betas.size());
    parallel_for(betas.size(), ctx.parallel, [&](std::size_t i) {
      const BigInt g = gamma_exponent(h, betas[i]);
      if (g == 0) return;
      Complex z = 0.0;
      for (std::size_t j = 0; j < betas[i].size(); ++j) z += static_cast<double>(betas[i][j]) * pairings[j];
      const auto [rho, dist] = locator.nearest(z);
      proximity[i] = {betas[i], rho, dist};
      contributes[i] = 1;
      if (dist < ctx.singular_guard) return;
      terms[i] = -g.convert_to<double>() * log_zeta_sieved(z, ctx.m_delta, ctx.zeta);
    });
    StagnationEntry entry;
    entry.shell = k;
    for (std::size_t i = 0; i < betas.size(); ++i) {
      if (!contributes[i]) continue;
      ++entry.contributing;
      if (!result.nearest || proximity[i].distance < result.nearest->distance) result.nearest = proximity[i];
      if (proximity[i].distance < ctx.singular_guard) {
        throw Error(ErrorKind::NearSingularity,
                    "beta=" + format_exponent(from_multi_index(proximity[i].beta)) + " puts z within " +
                        std::to_string(proximity[i].distance) + " of rho=" + std::to_string(proximity[i].rho.real()) +
                        (proximity[i].rho.imag() < 0 ? "" : "+") + std::to_string(proximity[i].rho.imag()) + "i");
      }
      entry.increment += terms[i];
    }
    log_part += entry.increment;
    result.ledger.push_back(entry);
    quiet = std::abs(entry.increment) < ctx.tail_tolerance / 10 ? quiet + 1 : 0;
    if (quiet == 3) {
      result.certified_bound = k;
      break;
    }
  }
  if (result.certified_bound == 0) {
    throw Error(ErrorKind::ResourceLimit,
                "no stagnation certificate within " + std::to_string(ctx.beta_bound) + " shells");
  }
  result.log_zeta_part = log_part;
  result.value = finite * std::exp(log_part);
  return result;
}

std::vector<SingularCandidate> singular_candidates(const SparsePolynomial& h, const VectorXc& s0,
                                                   const std::vector<long long>& theta,
                                                   const ContinuationContext& ctx) {
  if (s0.size() != h.num_vars()) throw Error(ErrorKind::InvalidArgument, "s0 must have n+1 entries");
  if (static_cast<int>(theta.size()) != h.n()) throw Error(ErrorKind::InvalidArgument, "theta must have n entries");
  std::vector<Complex> s_pair;
  std::vector<double> t_pair;
  for (std::size_t j = 0; j < h.size(); ++j) {
    Complex v = 0.0;
    long long w = 0;
    for (int i = 0; i <= h.n(); ++i) v += static_cast<double>(h.exponent(j)(i)) * s0(i);
    for (int i = 0; i < h.n(); ++i) w += theta[static_cast<std::size_t>(i)] * h.exponent(j)(i);
    if (w < 1) throw Error(ErrorKind::InvalidArgument, "theta.alpha_(n)j must be at least 1");
    if (v.real() < -1e-12) throw Error(ErrorKind::OutsideDomain, "s0 lies outside the closure of W_c(0)");
    s_pair.push_back(v);
    t_pair.push_back(static_cast<double>(w));
  }
  std::vector<Complex> rhos{1.0};
  if (ctx.zeros != nullptr) {
    for (double y : ctx.zeros->ordinates()) {
      rhos.emplace_back(0.5, y);
      rhos.emplace_back(0.5, -y);
    }
  }
  std::vector<SingularCandidate> out;
  MultiIndex beta(h.size(), 0);
  // beta with |beta| <= B and real pairing sum below 1, in lexicographic order.
  auto visit = [&](auto&& self, std::size_t pos, int remaining, double real_sum) -> void {
    if (pos == beta.size()) {
      if (remaining == ctx.beta_bound) return;
      if (gamma_exponent(h, beta) == 0) return;
      Complex num = 0.0;
      double den = 0;
      for (std::size_t j = 0; j < beta.size(); ++j) {
        num += static_cast<double>(beta[j]) * s_pair[j];
        den += beta[j] * t_pair[j];
      }
      for (const Complex& rho : rhos) {
        const Complex t = (rho - num) / den;
        if (t.real() >= 0) out.push_back({beta, rho, t});
      }
      return;
    }
    const double step = std::max(0.0, s_pair[pos].real());
    for (int b = 0; b <= remaining; ++b) {
      const double sum = real_sum + b * step;
      if (sum >= 1.0) break;
      beta[pos] = b;
      self(self, pos + 1, remaining - b, sum);
    }
    beta[pos] = 0;
  };
  visit(visit, 0, ctx.beta_bound, 0.0);
  return out;
}

}  // namespace eulerprod
