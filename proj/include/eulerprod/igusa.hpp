#pragma once

#include <cstdint>
#include <vector>

#include "eulerprod/core.hpp"
#include "eulerprod/geometry.hpp"
#include "eulerprod/poly.hpp"

namespace eulerprod {

/// 1 + sum over nonempty I of (-1)^{#I} X^{alpha_I}, alpha_I = (1_I, 1).
SparsePolynomial igusa_h(int n);

/// 1 + (prod_i (1 - p^{-(s_i - 1)})^{-1} - 1)(1 - 1/p). Throws
/// DegenerateGeometricSeries when some p^{-(s_i - 1)} = 1.
Complex igusa_local_factor(std::uint64_t p, const VectorXc& s);

/// sum over nu in N^n with |nu| <= max_total of phi(p^{|nu|}) p^{-s.nu}.
Complex igusa_local_series(std::uint64_t p, const VectorXc& s, int max_total);

/// Tail of igusa_local_series beyond max_total for real parts sigma_i > 1:
/// p^{-k} sum_{|nu| = k} prod_i p^{-(sigma_i - 1) nu_i} summed over k > max_total.
double igusa_local_series_tail(std::uint64_t p, const VectorXr& sigma, int max_total);

/// sum over (m_1..m_n) in [1, M]^n of phi(m_1 ... m_n) prod m_i^{-s_i}.
Complex igusa_partial_sum(const VectorXc& s, std::uint64_t M, bool parallel = false);

/// Bound on the terms left out by igusa_partial_sum for real s_i > 2:
/// prod_i zeta(sigma_i - 1) - prod_i sum_{m <= M} m^{1 - sigma_i}.
double igusa_partial_sum_tail(const VectorXr& sigma, std::uint64_t M);

/// prod_i zeta(s_i - 1) * prod_{p <= P} (1 - 1/p + (1/p) prod_i (1 - p^{-(s_i - 1)})).
Complex igusa_product_value(const VectorXc& s, std::uint64_t P);

/// One row sum_{i in I} sigma_i - #I + 1 > 0 per nonempty I.
HalfspaceSystem igusa_boundary(int n);

/// The W_c(0) system of h shifted from w = s - 1 to s coordinates.
HalfspaceSystem shift_to_s(const HalfspaceSystem& w_rows);

/// boundary equals the shifted W_1(0) system of h after row normalization.
bool boundary_matches(const HalfspaceSystem& boundary, const SparsePolynomial& h);

/// boundary_matches(igusa_boundary(n), igusa_h(n)).
bool igusa_consistency(int n);

struct IgusaInstance {
  int n = 0;
  SparsePolynomial h;
  HalfspaceSystem boundary;
};

IgusaInstance igusa_instance(int n);

}  // namespace eulerprod
