#include "eulerprod/puiseux.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <random>

#include "eulerprod/arith.hpp"
#include "eulerprod/cyclotomy.hpp"
#include "eulerprod/error.hpp"
#include "eulerprod/exponent.hpp"
#include "eulerprod/geometry.hpp"
#include "eulerprod/parallel.hpp"

namespace eulerprod {

namespace {

constexpr double kPi = std::numbers::pi;

Complex ipow(Complex y, long long k) {
  Complex out = 1.0;
  Complex base = y;
  while (k > 0) {
    if (k & 1) out *= base;
    base *= base;
    k >>= 1;
  }
  return out;
}

double tau_pairing(const SparsePolynomial& h, const VectorXr& tau0, std::size_t j) {
  double v = 0;
  for (int i = 0; i < h.n(); ++i) v += tau0(i) * static_cast<double>(h.exponent(j)(i));
  return v;
}

long long theta_pairing(const std::vector<long long>& theta, const ExponentVector& head) {
  long long v = 0;
  for (std::size_t i = 0; i < theta.size(); ++i) v += theta[i] * head(static_cast<Eigen::Index>(i));
  return v;
}

// arg in (-pi, pi]
double principal_arg(Complex z) {
  const double a = std::arg(z);
  return a <= -kPi ? kPi : a;
}

// Off-ray columns grouped by alpha_j - alpha_j0 in Q alpha_e.
std::vector<std::vector<std::size_t>> off_ray_cosets(const SparsePolynomial& h, std::size_t e) {
  std::vector<std::vector<std::size_t>> cosets;
  for (std::size_t j : off_ray_indices(h, e)) {
    bool placed = false;
    for (auto& coset : cosets) {
      if (collinear(ExponentVector(h.exponent(j) - h.exponent(coset.front())), h.exponent(e))) {
        coset.push_back(j);
        placed = true;
        break;
      }
    }
    if (!placed) cosets.push_back({j});
  }
  return cosets;
}

bool pairings_separate(const SparsePolynomial& h, const BasePoint& base) {
  std::vector<Rational> seen;
  for (const auto& coset : off_ray_cosets(h, base.e)) {
    const Rational v = base_pairing(h, base, coset.front());
    if (v <= 0) return false;
    if (std::find(seen.begin(), seen.end(), v) != seen.end()) return false;
    seen.push_back(v);
  }
  return true;
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

Rational base_pairing(const SparsePolynomial& h, const BasePoint& base, std::size_t j) {
  Rational v = 0;
  for (int i = 0; i <= h.n(); ++i) v += base.sigma0[static_cast<std::size_t>(i)] * h.exponent(j)(i);
  return v;
}

BasePoint make_base_point(const SparsePolynomial& h, long long c, std::size_t e, const RationalVector& sigma,
                          const VectorXr& tau) {
  if (static_cast<int>(sigma.size()) != h.n() || tau.size() != h.n()) {
    throw Error(ErrorKind::InvalidArgument, "sigma and tau must have n entries");
  }
  h.term(e);
  BasePoint base;
  base.e = e;
  base.sigma0 = sigma;
  base.sigma0.push_back(Rational(c));
  base.tau0 = VectorXr::Zero(h.n() + 1);
  base.tau0.head(h.n()) = tau;
  if (base_pairing(h, base, e) != 0) throw Error(ErrorKind::FaceNotSupporting, "sigma0 is not on the face of column e");
  for (std::size_t j : off_ray_indices(h, e)) {
    if (base_pairing(h, base, j) <= 0) {
      throw Error(ErrorKind::FaceNotSupporting, "column " + std::to_string(j) + " does not pair positively");
    }
  }
  return base;
}

BasePoint base_point(const SparsePolynomial& h, long long c, std::size_t e, std::uint64_t seed) {
  const FaceReport face = face_report(h, c, e);
  if (!face.supporting || !face.witness) {
    throw Error(ErrorKind::FaceNotSupporting, "column " + std::to_string(e) + " does not span a face of W_c(0)");
  }
  const int n = h.n();
  const ExponentVector alpha = h.head(e);
  const long long norm = alpha.squaredNorm();
  std::mt19937_64 rng(seed);
  BasePoint base;
  base.e = e;
  base.genericity_seed = seed;
  base.tau0 = VectorXr::Zero(n + 1);
  bool found = false;
  for (int draw = 1; draw <= 16 && !found; ++draw) {
    std::vector<long long> u(static_cast<std::size_t>(n));
    for (auto& x : u) x = static_cast<long long>(rng() % 17) - 8;
    long long ua = 0;
    for (int i = 0; i < n; ++i) ua += u[static_cast<std::size_t>(i)] * alpha(i);
    // v . alpha_(n)e = 0, so sigma stays on the face.
    std::vector<long long> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = u[static_cast<std::size_t>(i)] * norm - ua * alpha(i);
    Rational t(1, 4);
    for (int halvings = 0; halvings < 64; ++halvings, t /= 2) {
      base.sigma0.assign(face.witness->begin(), face.witness->end());
      for (int i = 0; i < n; ++i) base.sigma0[static_cast<std::size_t>(i)] += t * v[static_cast<std::size_t>(i)];
      base.sigma0.push_back(Rational(c));
      bool inside = true;
      for (std::size_t j : off_ray_indices(h, e)) inside = inside && base_pairing(h, base, j) > 0;
      if (inside) break;
    }
    base.draws = draw;
    found = pairings_separate(h, base);
  }
  if (!found) throw Error(ErrorKind::ResourceLimit, "off-ray pairings did not separate within 16 draws");
  for (int i = 0; i < n; ++i) base.tau0(i) = 2 * uniform01(rng) - 1;
  return base;
}

DirectionConfig choose_direction(const SparsePolynomial& h, std::size_t e, std::optional<std::size_t> e_prime,
                                 bool parity_needed, int height_budget) {
  const int n = h.n();
  const ExponentVector hat = primitive_vector(h.exponent(e)).head(n);
  if (parity_needed) {
    if (!e_prime) throw Error(ErrorKind::InvalidArgument, "parity needs e'");
    if (collinear(h.head(*e_prime), h.head(e))) {
      throw Error(ErrorKind::NoDirectionFound, "alpha_(n)e' lies on the ray of alpha_(n)e; parity constraints contradict");
    }
  }
  auto feasible = [&](const std::vector<long long>& theta, DirectionConfig& out) {
    out.theta = theta;
    out.pairings.clear();
    for (std::size_t j = 0; j < h.size(); ++j) {
      const long long v = theta_pairing(theta, h.head(j));
      if (v < 1) return false;
      out.pairings.push_back(v);
    }
    out.ray_pairing = theta_pairing(theta, hat);
    if (out.ray_pairing < 1) return false;
    if (parity_needed) {
      if (out.ray_pairing % 2 != 0) return false;
      if (out.pairings[*e_prime] % 2 == 0) return false;
    }
    out.parity = parity_needed;
    return true;
  };
  for (int H = 1; H <= height_budget; ++H) {
    const double count = std::pow(2.0 * H + 1, n);
    if (count > 2e7) {
      throw Error(ErrorKind::NoDirectionFound, "height " + std::to_string(H) + " exceeds the enumeration budget");
    }
    std::vector<std::vector<long long>> layer;
    std::vector<long long> theta(static_cast<std::size_t>(n), -H);
    while (true) {
      long long top = 0;
      for (long long x : theta) top = std::max(top, std::llabs(x));
      if (top == H) layer.push_back(theta);
      int i = n - 1;
      while (i >= 0 && theta[static_cast<std::size_t>(i)] == H) theta[static_cast<std::size_t>(i--)] = -H;
      if (i < 0) break;
      ++theta[static_cast<std::size_t>(i)];
    }
    std::sort(layer.begin(), layer.end(), [](const auto& a, const auto& b) {
      const long long sa = std::accumulate(a.begin(), a.end(), 0LL);
      const long long sb = std::accumulate(b.begin(), b.end(), 0LL);
      if (sa != sb) return sa > sb;
      return a > b;
    });
    DirectionConfig out;
    for (const auto& candidate : layer) {
      if (feasible(candidate, out)) {
        out.height = H;
        return out;
      }
    }
  }
  std::string constraints = "theta.alpha_(n)j >= 1, theta.hat(alpha)_(n)e >= 1";
  if (parity_needed) constraints += ", theta.hat(alpha)_(n)e even, theta.alpha_(n)e' odd";
  throw Error(ErrorKind::NoDirectionFound,
              "no theta of height <= " + std::to_string(height_budget) + " satisfies " + constraints);
}

Complex GeneralizedPolynomial::operator()(double X, Complex Y) const {
  const double lx = std::log(X);
  Complex v = 1.0;
  for (const auto& t : terms) {
    const double xp = t.x_exponent == 0 ? 1.0 : std::exp(to_double(t.x_exponent) * lx);
    v += t.coefficient * xp * ipow(Y, t.y_exponent);
  }
  return v;
}

Complex GeneralizedPolynomial::dY(double X, Complex Y) const {
  const double lx = std::log(X);
  Complex v = 0.0;
  for (const auto& t : terms) {
    const double xp = t.x_exponent == 0 ? 1.0 : std::exp(to_double(t.x_exponent) * lx);
    v += t.coefficient * xp * static_cast<double>(t.y_exponent) * ipow(Y, t.y_exponent - 1);
  }
  return v;
}

std::vector<Complex> GeneralizedPolynomial::slice(const Rational& x) const {
  std::vector<Complex> out(1, x == 0 ? Complex(1.0) : Complex(0.0));
  for (const auto& t : terms) {
    if (t.x_exponent != x) continue;
    if (static_cast<std::size_t>(t.y_exponent) >= out.size()) out.resize(static_cast<std::size_t>(t.y_exponent) + 1);
    out[static_cast<std::size_t>(t.y_exponent)] += t.coefficient;
  }
  return out;
}

GeneralizedPolynomial generalized_polynomial(const SparsePolynomial& h, const BasePoint& base,
                                             const DirectionConfig& dir, std::uint64_t p) {
  GeneralizedPolynomial W;
  W.p = p;
  const double lp = std::log(static_cast<double>(p));
  for (std::size_t j = 0; j < h.size(); ++j) {
    GeneralizedTerm t;
    t.coefficient = static_cast<double>(h.coefficient(j)) * std::polar(1.0, -tau_pairing(h, base.tau0, j) * lp);
    t.x_exponent = base_pairing(h, base, j);
    t.y_exponent = dir.pairings.at(j);
    t.column = j;
    W.terms.push_back(t);
  }
  return W;
}

RayPolynomial ray_polynomial(const SparsePolynomial& h, std::size_t e, const DirectionConfig& dir, std::uint64_t p,
                             const VectorXr& tau0) {
  RayPolynomial out;
  out.coefficients.assign(1, 1.0);
  std::vector<BigInt> integer(1, 1);
  const double lp = std::log(static_cast<double>(p));
  for (std::size_t j : ray_indices(h, e)) {
    const auto k = static_cast<std::size_t>(dir.pairings.at(j));
    if (k >= out.coefficients.size()) {
      out.coefficients.resize(k + 1, 0.0);
      integer.resize(k + 1, 0);
    }
    out.coefficients[k] += static_cast<double>(h.coefficient(j)) * std::polar(1.0, -tau_pairing(h, tau0, j) * lp);
    integer[k] += h.coefficient(j);
  }
  out.integer = UnivariatePolynomial(integer);
  out.roots = roots(out.coefficients);
  return out;
}

Complex transport_root(const SparsePolynomial& h, std::size_t e, const DirectionConfig& dir, std::uint64_t p,
                       const VectorXr& tau0, Complex c_mu) {
  const double phase = tau_pairing(h, tau0, e) / static_cast<double>(dir.pairings.at(e));
  return c_mu * std::polar(1.0, -phase * std::log(static_cast<double>(p)));
}

Complex horner(const std::vector<Complex>& coefficients, Complex y) {
  Complex v = 0.0;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) v = v * y + *it;
  return v;
}

std::size_t select_e_prime(const GeneralizedPolynomial& W, Complex c0) {
  std::vector<Rational> levels;
  for (const auto& t : W.terms) {
    if (t.x_exponent > 0 && std::find(levels.begin(), levels.end(), t.x_exponent) == levels.end()) {
      levels.push_back(t.x_exponent);
    }
  }
  std::sort(levels.begin(), levels.end());
  for (const Rational& x : levels) {
    if (std::abs(horner(W.slice(x), c0)) > 1e-10) {
      for (const auto& t : W.terms) {
        if (t.x_exponent == x) return t.column;
      }
    }
  }
  throw Error(ErrorKind::NoEPrimeFound, "every off-ray slice vanishes at the root");
}

bool is_descending(Complex c0, Complex c1) {
  const double m = std::abs(c0);
  if (m < 1 - 1e-9) return true;
  if (m > 1 + 1e-9) return false;
  return (c1 / c0).real() < 0;
}

PuiseuxBranch branch_leading_terms(const GeneralizedPolynomial& W, Complex c0, std::size_t e_prime) {
  const auto term = std::find_if(W.terms.begin(), W.terms.end(), [&](const auto& t) { return t.column == e_prime; });
  if (term == W.terms.end() || term->x_exponent <= 0) {
    throw Error(ErrorKind::InvalidArgument, "e' must be a column with positive pairing");
  }
  const std::vector<Complex> ray = W.slice(0);
  Complex derivative = 0.0;
  for (std::size_t k = ray.size(); k-- > 1;) derivative = derivative * c0 + static_cast<double>(k) * ray[k];
  if (std::abs(derivative) < 1e-12) {
    throw Error(ErrorKind::DerivativeVanishes, "[W]_e' vanishes at the root; the face is degenerate");
  }
  PuiseuxBranch b;
  b.c0 = c0;
  b.c1 = -horner(W.slice(term->x_exponent), c0) / derivative;
  b.theta1_exact = term->x_exponent;
  b.theta1 = to_double(term->x_exponent);
  b.e_prime = e_prime;
  b.descending = is_descending(c0, b.c1);
  return b;
}

std::vector<double> geometric_grid(double epsilon, double ratio, int points) {
  std::vector<double> grid;
  double x = epsilon;
  for (int k = 0; k < points; ++k, x *= ratio) grid.push_back(x);
  return grid;
}

Complex newton_root(const GeneralizedPolynomial& W, double X, Complex guess) {
  Complex y = guess;
  for (int it = 0; it < 50; ++it) {
    const Complex f = W(X, y);
    if (f == 0.0) return y;
    const Complex d = W.dY(X, y);
    if (d == 0.0) break;
    const Complex step = f / d;
    y -= step;
    if (std::abs(step) <= 1e-14 * std::max(1.0, std::abs(y))) {
      const Complex d2 = W.dY(X, y);
      if (d2 != 0.0) y -= W(X, y) / d2;
      return y;
    }
  }
  throw Error(ErrorKind::NewtonDivergence, "Newton in Y did not settle at X = " + std::to_string(X));
}

PuiseuxBranch track_branch(const GeneralizedPolynomial& W, Complex c0, const std::vector<double>& grid) {
  PuiseuxBranch b;
  b.c0 = c0;
  b.grid = grid;
  Complex y = c0;
  for (double X : grid) {
    y = newton_root(W, X, y);
    b.omega.push_back(y);
    b.residual_profile.push_back(std::abs(W(X, y)));
  }
  const std::size_t start = grid.size() / 2;
  double deviation = 0;
  for (std::size_t k = start; k < grid.size(); ++k) deviation = std::max(deviation, std::abs(b.omega[k] - c0));
  if (grid.size() - start < 2 || deviation < 1e-14) {
    b.c1 = 0.0;
    b.descending = is_descending(c0, b.c1);
    return b;
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(grid.size() - start);
  const double phase0 = std::arg(b.omega[start] - c0);
  double phase = 0;
  for (std::size_t k = start; k < grid.size(); ++k) {
    const Complex d = b.omega[k] - c0;
    const double lx = std::log(grid[k]);
    const double ly = std::log(std::abs(d));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    phase += std::remainder(std::arg(d) - phase0, 2 * kPi);
  }
  const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / m;
  b.theta1 = slope;
  b.c1 = std::polar(std::exp(intercept), phase0 + phase / m);
  b.descending = is_descending(c0, b.c1);
  return b;
}

Complex continue_branch(const GeneralizedPolynomial& W, Complex c0, double X_target) {
  double X = std::min(1e-3, X_target) / 16;
  Complex y = newton_root(W, X, c0);
  while (X < X_target) {
    X = std::min(X * 1.1, X_target);
    y = newton_root(W, X, y);
  }
  return y;
}

ZeroLattice zero_lattice(const PuiseuxBranch& branch, Complex omega, std::uint64_t p, int m_lo, int m_hi) {
  if (!branch.descending) throw Error(ErrorKind::NotDescending, "the branch does not descend below modulus 1");
  ZeroLattice out;
  out.p = p;
  out.omega = omega;
  out.positive_real_part = std::abs(omega) < 1;
  const double lp = std::log(static_cast<double>(p));
  const Complex log_omega(std::log(std::abs(omega)), principal_arg(omega));
  for (int m = m_lo; m <= m_hi; ++m) out.points.push_back({m, -log_omega / lp + Complex(0, 2 * kPi * m / lp)});
  return out;
}

Complex restricted_value(const SparsePolynomial& h, const BasePoint& base, const DirectionConfig& dir,
                         std::uint64_t p, Complex t) {
  const double lp = std::log(static_cast<double>(p));
  Complex v = 1.0;
  for (std::size_t j = 0; j < h.size(); ++j) {
    const Complex exponent(to_double(base_pairing(h, base, j)), tau_pairing(h, base.tau0, j));
    v += static_cast<double>(h.coefficient(j)) *
         std::exp(-(exponent + t * static_cast<double>(dir.pairings.at(j))) * lp);
  }
  return v;
}

ZeroCheck verify_zero(const SparsePolynomial& h, const BasePoint& base, const DirectionConfig& dir, std::uint64_t p,
                      Complex t_guess) {
  const double lp = std::log(static_cast<double>(p));
  ZeroCheck out;
  Complex t = t_guess;
  for (int step = 1; step <= 25; ++step) {
    Complex f = 1.0, d = 0.0;
    for (std::size_t j = 0; j < h.size(); ++j) {
      const Complex exponent(to_double(base_pairing(h, base, j)), tau_pairing(h, base.tau0, j));
      const double k = static_cast<double>(dir.pairings.at(j));
      const Complex term = static_cast<double>(h.coefficient(j)) * std::exp(-(exponent + t * k) * lp);
      f += term;
      d -= k * lp * term;
    }
    if (d == 0.0) break;
    const Complex delta = f / d;
    t -= delta;
    out.steps = step;
    if (std::abs(t - t_guess) > kPi / lp) {
      throw Error(ErrorKind::NoConvergence, "Newton in t drifted beyond pi / log p");
    }
    if (std::abs(delta) <= 1e-15 * std::max(1.0, std::abs(t))) break;
  }
  out.t = t;
  out.residual = std::abs(restricted_value(h, base, dir, p, t));
  if (!(out.residual <= 1e-10)) {
    throw Error(ErrorKind::NoConvergence, "residual " + std::to_string(out.residual) + " after 25 Newton steps");
  }
  return out;
}

std::optional<PuiseuxBranch> descending_branch(const GeneralizedPolynomial& W, const RayPolynomial& ray) {
  std::optional<PuiseuxBranch> best;
  for (const Complex& c0 : ray.roots) {
    PuiseuxBranch b;
    try {
      b = branch_leading_terms(W, c0, select_e_prime(W, c0));
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::NoEPrimeFound) throw;
      continue;
    }
    if (!b.descending) continue;
    if (!best) {
      best = b;
      continue;
    }
    const double db = std::abs(b.c0), dbest = std::abs(best->c0);
    if (db < dbest - 1e-9 || (std::abs(db - dbest) <= 1e-9 && (b.c1 / b.c0).real() < (best->c1 / best->c0).real())) {
      best = b;
    }
  }
  return best;
}

PrimeCount window_count(std::uint64_t p, Complex omega, double u, double eta) {
  PrimeCount out;
  out.p = p;
  out.omega = omega;
  out.tracked = true;
  const double lp = std::log(static_cast<double>(p));
  const double a = principal_arg(omega);
  out.real_part = -std::log(std::abs(omega)) / lp;
  const double lo = (u * lp + a) / (2 * kPi);
  const double hi = ((u + eta) * lp + a) / (2 * kPi);
  out.m_first = static_cast<long long>(std::floor(lo)) + 1;
  out.m_last = static_cast<long long>(std::ceil(hi)) - 1;
  out.count = std::max(0LL, out.m_last - out.m_first + 1);
  out.floor_bound = static_cast<long long>(std::floor(eta * lp / (2 * kPi)));
  return out;
}

RectangleCount count_zeros_in_rectangle(const SparsePolynomial& h, const BasePoint& base, const DirectionConfig& dir,
                                        double u, double eta, int nu, std::uint64_t prime_limit) {
  if (u < 0 || !(eta > 0) || nu < 1) throw Error(ErrorKind::InvalidArgument, "need u >= 0, eta > 0, nu >= 1");
  RectangleCount out;
  out.u = u;
  out.eta = eta;
  out.nu = nu;
  out.re_low = 1.0 / (nu + 1);
  out.re_high = 1.0 / nu;
  for (std::uint64_t p : primes_up_to(prime_limit)) {
    const GeneralizedPolynomial W = generalized_polynomial(h, base, dir, p);
    const RayPolynomial ray = ray_polynomial(h, base.e, dir, p, base.tau0);
    Complex omega;
    try {
      const auto branch = descending_branch(W, ray);
      if (!branch) {
        ++out.untracked;
        continue;
      }
      omega = continue_branch(W, branch->c0, 1.0 / static_cast<double>(p));
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::NewtonDivergence && err.kind() != ErrorKind::DerivativeVanishes) throw;
      ++out.untracked;
      continue;
    }
    PrimeCount pc = window_count(p, omega, u, eta);
    pc.in_window = pc.real_part > out.re_low && pc.real_part < out.re_high;
    if (!pc.in_window) continue;
    out.total += pc.count;
    out.ledger.push_back(pc);
  }
  return out;
}

InterferenceReport interference_check(const std::vector<Complex>& zeros,
                                      const std::vector<SingularCandidate>& candidates, double threshold) {
  InterferenceReport out;
  out.threshold = threshold;
  out.min_distance = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < zeros.size(); ++i) {
    for (std::size_t k = 0; k < candidates.size(); ++k) {
      const double d = std::abs(zeros[i] - candidates[k].t);
      if (d < out.min_distance) {
        out.min_distance = d;
        out.zero_index = i;
        out.candidate_index = k;
      }
    }
  }
  out.flagged = out.min_distance < threshold;
  return out;
}

bool genericity_check(const PuiseuxBranch& branch) {
  if (branch.c0 == 0.0) return false;
  return std::abs((branch.c1 / branch.c0).real()) > 1e-8;
}

namespace {

bool needs_genericity(const PuiseuxBranch& b) { return std::abs(std::abs(b.c0) - 1) <= 1e-9; }

DirectionConfig settle_direction(const SparsePolynomial& h, const BasePoint& base, bool cyclotomic,
                                 std::uint64_t p, std::vector<std::string>& diagnostics) {
  DirectionConfig dir = choose_direction(h, base.e, std::nullopt, false);
  if (!cyclotomic) return dir;
  for (int round = 0; round < 3; ++round) {
    const GeneralizedPolynomial W = generalized_polynomial(h, base, dir, p);
    const RayPolynomial ray = ray_polynomial(h, base.e, dir, p, base.tau0);
    const std::size_t e_prime = select_e_prime(W, ray.roots.front());
    if (dir.parity && dir.pairings[e_prime] % 2 == 1) return dir;
    dir = choose_direction(h, base.e, e_prime, true);
  }
  diagnostics.push_back("e' kept moving while the parity direction was re-chosen");
  return dir;
}

}  // namespace

FaceAnalysis analyze_face(const SparsePolynomial& h, long long c, std::size_t e, const FaceAnalysisOptions& options,
                          const ZetaZeroTable* zeros) {
  if (options.primes.empty()) throw Error(ErrorKind::InvalidArgument, "at least one prime is needed");
  const FaceReport face = face_report(h, c, e);
  if (!face.supporting) throw Error(ErrorKind::FaceNotSupporting, "column " + std::to_string(e) + " is not a face");
  if (!face.nondegenerate) throw Error(ErrorKind::InvalidArgument, "the face of column " + std::to_string(e) + " is degenerate");
  FaceAnalysis out;
  out.ray_cyclotomic = is_cyclotomic_univariate(face.ray_polynomial).kind == CyclotomyKind::Cyclotomic;

  for (int attempt = 0; attempt < 16; ++attempt) {
    out.diagnostics.clear();
    out.primes.clear();
    out.base = options.base ? *options.base : base_point(h, c, face.e, options.seed + 0x9e3779b97f4a7c15ULL * attempt);
    out.direction = options.direction ? *options.direction
                                      : settle_direction(h, out.base, out.ray_cyclotomic, options.primes.front(),
                                                         out.diagnostics);
    out.primes.resize(options.primes.size());
    parallel_for(options.primes.size(), options.parallel, [&](std::size_t i) {
      PrimeAnalysis& pa = out.primes[i];
      pa.p = options.primes[i];
      const GeneralizedPolynomial W = generalized_polynomial(h, out.base, out.direction, pa.p);
      pa.ray = ray_polynomial(h, face.e, out.direction, pa.p, out.base.tau0);
      for (const Complex& c0 : pa.ray.roots) pa.closed_form.push_back(branch_leading_terms(W, c0, select_e_prime(W, c0)));
      const auto chosen = descending_branch(W, pa.ray);
      if (!chosen) return;
      PuiseuxBranch tracked = track_branch(W, chosen->c0, geometric_grid());
      tracked.e_prime = chosen->e_prime;
      pa.tracked = tracked;
      const Complex omega = continue_branch(W, chosen->c0, 1.0 / static_cast<double>(pa.p));
      pa.lattice = zero_lattice(*chosen, omega, pa.p, options.m_lo, options.m_hi);
      for (const auto& point : pa.lattice.points) pa.checks.push_back(verify_zero(h, out.base, out.direction, pa.p, point.t));
      pa.window = window_count(pa.p, omega, options.u, options.eta);
    });
    bool generic = true;
    for (const auto& pa : out.primes) {
      if (!pa.tracked) {
        out.diagnostics.push_back("no descending branch at p = " + std::to_string(pa.p));
        continue;
      }
      for (const auto& b : pa.closed_form) {
        if (b.c0 == pa.tracked->c0 && needs_genericity(b) && !genericity_check(b)) generic = false;
      }
      if (std::abs(pa.tracked->omega.front()) >= 1) {
        out.diagnostics.push_back("|Omega(1e-3)| >= 1 at p = " + std::to_string(pa.p));
      }
    }
    if (generic || options.base) {
      if (!generic) out.diagnostics.push_back("Re(c1/c0) vanishes on the working branch for the supplied base point");
      break;
    }
    if (attempt == 15) throw Error(ErrorKind::ResourceLimit, "tau0 stayed non-generic after 16 draws");
  }

  for (const auto& pa : out.primes) {
    if (pa.tracked && pa.tracked->e_prime) {
      out.e_prime = *pa.tracked->e_prime;
      break;
    }
  }

  int nu = 1;
  if (options.nu) {
    nu = *options.nu;
  } else if (out.primes.front().tracked && !out.primes.front().lattice.points.empty()) {
    const double re = out.primes.front().lattice.points.front().t.real();
    if (re > 0) nu = std::max(1, static_cast<int>(std::floor(1.0 / re)));
  }
  out.rectangle = count_zeros_in_rectangle(h, out.base, out.direction, options.u, options.eta, nu, options.prime_limit);

  ContinuationContext ctx;
  ctx.beta_bound = options.candidate_bound;
  ctx.zeros = zeros;
  VectorXc s0(h.n() + 1);
  for (int i = 0; i <= h.n(); ++i) {
    s0(i) = Complex(to_double(out.base.sigma0[static_cast<std::size_t>(i)]), out.base.tau0(i));
  }
  out.candidates = singular_candidates(h, s0, out.direction.theta, ctx);
  std::vector<Complex> lattice_points;
  for (const auto& pa : out.primes) {
    for (const auto& point : pa.lattice.points) lattice_points.push_back(point.t);
  }
  out.interference = interference_check(lattice_points, out.candidates);
  if (out.interference.flagged) out.diagnostics.push_back("a lattice point sits within 1e-3 of a singular candidate");
  return out;
}

}  // namespace eulerprod
