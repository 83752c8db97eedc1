#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "eulerprod/continuation.hpp"
#include "eulerprod/core.hpp"
#include "eulerprod/poly.hpp"

namespace eulerprod {

/// s0 = sigma0 + i tau0 on the face of column e. Both vectors have n+1
/// entries; sigma0 ends with c and tau0 ends with 0.
struct BasePoint {
  RationalVector sigma0;
  VectorXr tau0;
  std::size_t e = 0;
  std::uint64_t genericity_seed = 0;
  int draws = 0;  // perturbations tried before the pairings separated
};

/// sigma0 . alpha_j, exact.
Rational base_pairing(const SparsePolynomial& h, const BasePoint& base, std::size_t j);

/// Validates a caller-supplied point (sigma and tau of length n).
/// Throws FaceNotSupporting unless sigma0 . alpha_e = 0 and every column off
/// the ray pairs strictly positive.
BasePoint make_base_point(const SparsePolynomial& h, long long c, std::size_t e, const RationalVector& sigma,
                          const VectorXr& tau);

/// Face witness plus a seeded rational perturbation inside the face, redrawn
/// (at most 16 times) until the pairings of distinct off-ray cosets are
/// pairwise distinct. tau0 is uniform in [-1, 1]^n.
BasePoint base_point(const SparsePolynomial& h, long long c, std::size_t e, std::uint64_t seed);

struct DirectionConfig {
  std::vector<long long> theta;     // theta_(n); theta_{n+1} = 0
  std::vector<long long> pairings;  // theta . alpha_(n)j per column
  long long ray_pairing = 0;        // theta . hat(alpha)_(n)e
  bool parity = false;
  int q = 1;  // integer pairings throughout
  int height = 0;
};

/// First integer theta in height order (max |theta_i| = 1, 2, ...; within a
/// height by coordinate sum descending, then lexicographically descending)
/// with every pairing >= 1, and, when parity is requested, theta . hat(alpha)_(n)e
/// even and theta . alpha_(n)e' odd.
DirectionConfig choose_direction(const SparsePolynomial& h, std::size_t e, std::optional<std::size_t> e_prime,
                                 bool parity_needed, int height_budget = 20);

struct GeneralizedTerm {
  Complex coefficient;  // a_j p^{-i tau0 . alpha_(n)j}
  Rational x_exponent;  // sigma0 . alpha_j
  long long y_exponent = 0;
  std::size_t column = 0;
};

/// W(X, Y) = 1 + sum_j coefficient_j X^{x_j} Y^{y_j} for one prime p.
struct GeneralizedPolynomial {
  std::vector<GeneralizedTerm> terms;
  std::uint64_t p = 0;

  Complex operator()(double X, Complex Y) const;
  Complex dY(double X, Complex Y) const;
  /// Terms with x_exponent == x as a polynomial in Y, coefficients by power.
  std::vector<Complex> slice(const Rational& x) const;
};

GeneralizedPolynomial generalized_polynomial(const SparsePolynomial& h, const BasePoint& base,
                                             const DirectionConfig& dir, std::uint64_t p);

struct RayPolynomial {
  std::vector<Complex> coefficients;  // [W]_e by power of Y
  UnivariatePolynomial integer;       // 1 + sum_{j on the ray} a_j T^{theta . alpha_(n)j}
  std::vector<Complex> roots;         // roots of [W]_e
};

RayPolynomial ray_polynomial(const SparsePolynomial& h, std::size_t e, const DirectionConfig& dir, std::uint64_t p,
                             const VectorXr& tau0);

/// c_theta = c_mu p^{-i tau0 . alpha_(n)e / (theta . alpha_(n)e)}.
Complex transport_root(const SparsePolynomial& h, std::size_t e, const DirectionConfig& dir, std::uint64_t p,
                       const VectorXr& tau0, Complex c_mu);

/// Evaluates a coefficient vector (index = power) at y.
Complex horner(const std::vector<Complex>& coefficients, Complex y);

/// Smallest positive sigma0 pairing whose slice R does not vanish at c0
/// (|R(c0)| > 1e-10); returns the first column with that pairing.
std::size_t select_e_prime(const GeneralizedPolynomial& W, Complex c0);

struct PuiseuxBranch {
  Complex c0;
  Complex c1;
  std::optional<double> theta1;
  std::optional<Rational> theta1_exact;  // set by the closed form
  bool descending = false;
  std::optional<std::size_t> e_prime;
  std::vector<double> grid;
  std::vector<Complex> omega;             // tracked Omega on the grid
  std::vector<double> residual_profile;   // |W(X, Omega(X))|
};

/// |c0| < 1, or |c0| = 1 (to 1e-9) and Re(c1/c0) < 0.
bool is_descending(Complex c0, Complex c1);

/// c1 = -R_e'(c0) / [W]_e'(c0), theta1 = sigma0 . alpha_e'. Throws
/// DerivativeVanishes when [W]_e'(c0) is numerically zero.
PuiseuxBranch branch_leading_terms(const GeneralizedPolynomial& W, Complex c0, std::size_t e_prime);

/// Geometric grid epsilon, epsilon*ratio, ... with `points` entries.
std::vector<double> geometric_grid(double epsilon = 1e-3, double ratio = 0.5, int points = 30);

/// Newton root of W(X, .) from `guess`; throws NewtonDivergence after 50
/// iterations.
Complex newton_root(const GeneralizedPolynomial& W, double X, Complex guess);

/// Tracks the branch through c0 down the grid and fits theta1 and c1 from
/// log(Omega - c0) against log X on the second half of the grid. theta1 is
/// absent when Omega stays at c0.
PuiseuxBranch track_branch(const GeneralizedPolynomial& W, Complex c0, const std::vector<double>& grid);

/// Omega(X_target) following the branch through c0 up from a small X in
/// steps of ratio 1.1.
Complex continue_branch(const GeneralizedPolynomial& W, Complex c0, double X_target);

struct LatticePoint {
  int m = 0;
  Complex t;
};

struct ZeroLattice {
  std::uint64_t p = 0;
  Complex omega;  // Omega(1/p)
  std::vector<LatticePoint> points;
  bool positive_real_part = false;
};

/// t_m = -log(Omega)/log p + 2 pi i m / log p for m in [m_lo, m_hi], principal
/// log with arg in (-pi, pi]. Throws NotDescending.
ZeroLattice zero_lattice(const PuiseuxBranch& branch, Complex omega, std::uint64_t p, int m_lo, int m_hi);

struct ZeroCheck {
  Complex t;
  double residual = 0;
  int steps = 0;
};

/// h(p^{-s0 - t theta}, p^{-c}) with s0 = sigma0 + i tau0.
Complex restricted_value(const SparsePolynomial& h, const BasePoint& base, const DirectionConfig& dir,
                         std::uint64_t p, Complex t);

/// Newton in t from t_guess: at most 25 steps, residual <= 1e-10, drift at
/// most pi / log p. Throws NoConvergence otherwise.
ZeroCheck verify_zero(const SparsePolynomial& h, const BasePoint& base, const DirectionConfig& dir, std::uint64_t p,
                      Complex t_guess);

/// The descending branch used for prime p: least |c0|, then most negative
/// Re(c1/c0). nullopt when none descends.
std::optional<PuiseuxBranch> descending_branch(const GeneralizedPolynomial& W, const RayPolynomial& ray);

struct PrimeCount {
  std::uint64_t p = 0;
  bool tracked = false;
  Complex omega;
  double real_part = 0;  // -log|Omega(1/p)| / log p
  bool in_window = false;
  long long m_first = 0;  // integers strictly inside the arg window
  long long m_last = -1;
  long long count = 0;
  long long floor_bound = 0;  // floor(eta log p / 2 pi)
};

/// Integers m with (u log p + arg Omega)/2pi < m < ((u + eta) log p + arg Omega)/2pi.
PrimeCount window_count(std::uint64_t p, Complex omega, double u, double eta);

struct RectangleCount {
  double u = 0, eta = 0;
  int nu = 0;
  double re_low = 0, re_high = 0;  // 1/(nu+1), 1/nu
  long long total = 0;
  std::vector<PrimeCount> ledger;  // primes inside the Re-window
  std::size_t untracked = 0;       // primes where continuation failed
};

/// Zeros of the lattice inside 1/(nu+1) < Re t < 1/nu, u < Im t < u + eta
/// over primes p <= prime_limit.
RectangleCount count_zeros_in_rectangle(const SparsePolynomial& h, const BasePoint& base, const DirectionConfig& dir,
                                        double u, double eta, int nu, std::uint64_t prime_limit);

struct InterferenceReport {
  double threshold = 1e-3;
  double min_distance = 0;  // infinity when either set is empty
  std::optional<std::size_t> zero_index, candidate_index;
  bool flagged = false;
};

InterferenceReport interference_check(const std::vector<Complex>& zeros,
                                      const std::vector<SingularCandidate>& candidates, double threshold = 1e-3);

/// |Re(c1/c0)| > 1e-8.
bool genericity_check(const PuiseuxBranch& branch);

struct FaceAnalysisOptions {
  std::uint64_t seed = 20240607;
  std::optional<BasePoint> base;  // overrides the seeded base point
  std::optional<DirectionConfig> direction;
  std::vector<std::uint64_t> primes{53, 101, 997};
  int m_lo = 0, m_hi = 10;
  double u = 1, eta = 1;
  std::optional<int> nu;  // default: from the first prime's real part
  std::uint64_t prime_limit = 10000;
  int candidate_bound = 60;
  bool parallel = false;
};

struct PrimeAnalysis {
  std::uint64_t p = 0;
  RayPolynomial ray;
  std::vector<PuiseuxBranch> closed_form;  // one per root of [W]_e
  std::optional<PuiseuxBranch> tracked;    // the descending branch, tracked
  ZeroLattice lattice;
  std::vector<ZeroCheck> checks;
  PrimeCount window;
};

struct FaceAnalysis {
  BasePoint base;
  DirectionConfig direction;
  bool ray_cyclotomic = false;
  std::size_t e_prime = 0;
  std::vector<PrimeAnalysis> primes;
  RectangleCount rectangle;
  std::vector<SingularCandidate> candidates;
  InterferenceReport interference;
  std::vector<std::string> diagnostics;
};

/// Base point, direction, e', branches, lattices with Newton checks, the
/// rectangle count and the interference scan for one face.
FaceAnalysis analyze_face(const SparsePolynomial& h, long long c, std::size_t e, const FaceAnalysisOptions& options,
                          const ZetaZeroTable* zeros);

}  // namespace eulerprod
