#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "eulerprod/arith.hpp"
#include "eulerprod/core.hpp"
#include "eulerprod/poly.hpp"

namespace eulerprod {

/// floor(C^{-1/delta}) + 1. Throws InvalidArgument unless 0 < C <= 1, delta > 0.
std::uint64_t m_delta(const Rational& C, double delta);

struct ContinuationContext {
  double delta = 1.0;
  std::uint64_t m_delta = 2;
  int beta_bound = 400;           // cap on the shell index; the certified bound is reported
  double tail_tolerance = 1e-9;
  double singular_guard = 1e-6;   // distance to a zero or the pole of zeta
  const ZetaZeroTable* zeros = nullptr;
  ZetaOptions zeta;
  bool parallel = false;
};

/// Fills m_delta from C(h) and delta.
ContinuationContext make_context(const SparsePolynomial& h, double delta, const ZetaZeroTable* zeros);

/// Arguments of h at a prime: (p^{-s_1}, ..., p^{-s_n}, p^{-c}).
VectorXc local_point(double p, const VectorXc& s, long long c);

struct DirectProduct {
  Complex value;
  std::uint64_t prime_cutoff = 0;
  bool outside_absolute_convergence = false;  // some Re(s.alpha_(n)j) + c alpha_{n+1,j} <= 1
};

/// prod_{p <= P} h(p^{-s}, p^{-c}).
DirectProduct direct_euler_product(const SparsePolynomial& h, long long c, const VectorXc& s, std::uint64_t P);

struct StagnationEntry {
  int shell = 0;                 // |beta|
  std::size_t contributing = 0;  // beta with gamma != 0
  Complex increment;             // change of the log-value from this shell
};

struct SingularProximity {
  MultiIndex beta;
  Complex rho;
  double distance = 0;
};

struct ContinuationResult {
  Complex value;
  Complex log_zeta_part;  // sum of -gamma log zeta_M over the certified shells
  Complex finite_product;  // prod_{p <= M} h(...)
  std::uint64_t m_delta = 0;
  int certified_bound = 0;
  double tail_tolerance = 0;
  std::vector<StagnationEntry> ledger;
  std::optional<SingularProximity> nearest;
};

/// Z(s) = prod_{p <= M} h(p^{-s}, p^{-c}) * prod_beta zeta_M(z_beta)^{-gamma(beta)},
/// z_beta = sum_j beta_j ((s, c) . alpha_j), summed shell by shell until
/// three consecutive shells each move the log-value by less than
/// tail_tolerance / 10.
///
/// Throws OutsideDomain off W_c(delta), NearSingularity when some z_beta
/// with gamma(beta) != 0 comes within the guard of 1 or a tabulated zero,
/// ResourceLimit when the shell cap is reached without a certificate.
ContinuationResult continued_value(const SparsePolynomial& h, long long c, const VectorXc& s,
                                   const ContinuationContext& ctx);

struct SingularCandidate {
  MultiIndex beta;
  Complex rho;
  Complex t;
};

/// t(beta, rho) = (rho - sum_j beta_j s0.alpha_j) / (sum_j beta_j theta.alpha_(n)j)
/// for |beta| <= ctx.beta_bound, gamma(beta) != 0, rho = 1 or 1/2 +- i*ordinate,
/// keeping Re t >= 0. s0 has n+1 entries with last entry c; beta whose real
/// pairing sum reaches 1 are pruned.
std::vector<SingularCandidate> singular_candidates(const SparsePolynomial& h, const VectorXc& s0,
                                                   const std::vector<long long>& theta,
                                                   const ContinuationContext& ctx);

}  // namespace eulerprod
