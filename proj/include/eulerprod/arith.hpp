#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "eulerprod/core.hpp"

namespace eulerprod {

/// Moebius function. Throws InvalidArgument for m = 0.
int mobius(std::uint64_t m);

/// Euler totient. Throws InvalidArgument for m = 0.
std::uint64_t euler_phi(std::uint64_t m);

std::vector<std::uint64_t> primes_up_to(std::uint64_t n);

/// phi(0..n) by linear sieve; entry 0 is 0.
std::vector<std::uint32_t> totient_table(std::uint32_t n);

struct ZetaOptions {
  int direct_terms = 50;     // minimum N of the Euler-Maclaurin split
  int bernoulli_order = 30;  // number of B_{2j} correction terms
  double max_imag = 1e4;     // accuracy envelope on |Im z|
};

/// Riemann zeta by Euler-Maclaurin summation (long double internally).
///
/// The split point N grows with |z| so the Bernoulli tail stays convergent;
/// for Re z < -1 the functional equation maps the argument to Re > 2.
/// Absolute error is below 1e-12 for Re z >= -1 and |Im z| <= max_imag;
/// in the reflected half-plane the bound is relative.
///
/// Throws Pole at z = 1 and OutOfRange outside the envelope.
Complex zeta(Complex z, const ZetaOptions& options = {});

/// Independent evaluation through the alternating eta series with Borwein's
/// acceleration: zeta(z) = eta(z) / (1 - 2^{1-z}). Reliable for |Im z| <~ 40.
Complex zeta_alternating(Complex z, int terms = 64);

/// zeta(z) * prod_{p <= M} (1 - p^{-z}).
Complex zeta_sieved(Complex z, std::uint64_t M, const ZetaOptions& options = {});

/// log zeta_sieved(z, M), accurate when the value is close to 1 (large Re z).
Complex log_zeta_sieved(Complex z, std::uint64_t M, const ZetaOptions& options = {});

/// log Gamma(z) for Re z > 0, any branch (only exp of it is meaningful).
std::complex<long double> log_gamma(std::complex<long double> z);

struct ZetaSelfTest {
  double max_discrepancy = 0.0;
  bool passed = false;
};

/// Cross-checks zeta against zeta_alternating on a fixed grid.
ZetaSelfTest zeta_self_test();

/// Ordinates of nontrivial zeta zeros, strictly increasing, all > 14.
class ZetaZeroTable {
 public:
  ZetaZeroTable() = default;
  ZetaZeroTable(std::vector<double> ordinates, std::string source);

  static ZetaZeroTable load(const std::filesystem::path& path);
  /// $EULERPROD_ZETA_ZEROS if set, otherwise the bundled data file.
  static ZetaZeroTable load_default();
  static std::filesystem::path default_path();

  std::span<const double> ordinates() const { return ordinates_; }
  const std::string& source_path() const { return source_; }
  std::size_t size() const { return ordinates_.size(); }

 private:
  std::vector<double> ordinates_;
  std::string source_;
};

}  // namespace eulerprod
