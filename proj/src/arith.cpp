#include "eulerprod/arith.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <numbers>
#include <sstream>

#include "eulerprod/error.hpp"

namespace eulerprod {

namespace {

using LD = long double;
using CL = std::complex<long double>;

constexpr LD kPi = 3.141592653589793238462643383279502884L;
constexpr LD kLog2Pi = 1.837877066409345483560659472811235279L;

// k^{-z} with the phase reduced in extended precision.
CL pow_neg(LD k, const CL& z) {
  const LD lk = std::log(k);
  const LD mag = std::exp(-z.real() * lk);
  const LD phase = -z.imag() * lk;
  return {mag * std::cos(phase), mag * std::sin(phase)};
}

// B_0 .. B_max as long double, computed once from exact rationals.
const std::vector<LD>& bernoulli_numbers() {
  static const std::vector<LD> table = [] {
    constexpr int kMax = 130;
    std::vector<Rational> b(kMax + 1);
    b[0] = 1;
    for (int m = 1; m <= kMax; ++m) {
      Rational acc = 0;
      BigInt binom = 1;  // C(m+1, k)
      for (int k = 0; k < m; ++k) {
        acc += Rational(binom) * b[k];
        binom = binom * (m + 1 - k) / (k + 1);
      }
      b[m] = -acc / (m + 1);
    }
    std::vector<LD> out(kMax + 1);
    for (int m = 0; m <= kMax; ++m) out[m] = b[m].convert_to<LD>();
    return out;
  }();
  return table;
}

const std::vector<LD>& factorials() {
  static const std::vector<LD> table = [] {
    std::vector<LD> f(131);
    f[0] = 1;
    for (int i = 1; i <= 130; ++i) f[i] = f[i - 1] * i;
    return f;
  }();
  return table;
}

CL zeta_euler_maclaurin(const CL& z, const ZetaOptions& options) {
  const int terms = std::clamp(options.bernoulli_order, 1, 64);
  const LD abs_z = std::abs(z);
  const auto n_min = static_cast<long>(std::ceil((abs_z + 2.0L * terms) / kPi));
  const long n = std::max<long>(options.direct_terms, n_min);

  CL sum = 0;
  for (long k = 1; k < n; ++k) sum += pow_neg(static_cast<LD>(k), z);

  const LD big_n = static_cast<LD>(n);
  const CL n_pow = pow_neg(big_n, z);  // N^{-z}
  sum += n_pow * big_n / (z - CL(1));
  sum += n_pow / 2.0L;

  const auto& bern = bernoulli_numbers();
  const auto& fact = factorials();
  CL rising = z;  // z (z+1) ... (z+2j-2)
  LD n_inv = 1.0L / big_n;
  for (int j = 1; j <= terms; ++j) {
    const CL term = bern[2 * j] / fact[2 * j] * rising * n_pow * n_inv;
    sum += term;
    if (std::abs(term) < 1e-21L * std::abs(sum)) break;
    rising *= (z + CL(2 * j - 1)) * (z + CL(2 * j));
    n_inv /= big_n * big_n;
  }
  return sum;
}

CL log_sin(const CL& w) {
  if (std::abs(w.imag()) < 30) return std::log(std::sin(w));
  const CL i(0, 1);
  if (w.imag() > 0) return -i * w + std::log(std::exp(2.0L * i * w) - CL(1)) - std::log(2.0L * i);
  return i * w + std::log(CL(1) - std::exp(-2.0L * i * w)) - std::log(2.0L * i);
}

const std::vector<std::uint64_t>& cached_primes() {
  static const std::vector<std::uint64_t> primes = primes_up_to(2'000'000);
  return primes;
}

}  // namespace

int mobius(std::uint64_t m) {
  if (m == 0) throw Error(ErrorKind::InvalidArgument, "mobius(0) is undefined");
  int sign = 1;
  for (std::uint64_t p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    m /= p;
    if (m % p == 0) return 0;
    sign = -sign;
  }
  if (m > 1) sign = -sign;
  return sign;
}

std::uint64_t euler_phi(std::uint64_t m) {
  if (m == 0) throw Error(ErrorKind::InvalidArgument, "euler_phi(0) is undefined");
  std::uint64_t result = m;
  for (std::uint64_t p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    while (m % p == 0) m /= p;
    result -= result / p;
  }
  if (m > 1) result -= result / m;
  return result;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t n) {
  std::vector<std::uint64_t> primes;
  if (n < 2) return primes;
  std::vector<bool> composite(n + 1, false);
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (std::uint64_t j = i * i; j <= n; j += i) composite[j] = true;
  }
  return primes;
}

std::vector<std::uint32_t> totient_table(std::uint32_t n) {
  std::vector<std::uint32_t> phi(static_cast<std::size_t>(n) + 1, 0);
  std::vector<std::uint32_t> primes;
  if (n >= 1) phi[1] = 1;
  for (std::uint32_t i = 2; i <= n; ++i) {
    if (phi[i] == 0) {
      phi[i] = i - 1;
      primes.push_back(i);
    }
    for (std::uint32_t p : primes) {
      const std::uint64_t ip = static_cast<std::uint64_t>(i) * p;
      if (ip > n) break;
      if (i % p == 0) {
        phi[ip] = phi[i] * p;
        break;
      }
      phi[ip] = phi[i] * (p - 1);
    }
  }
  return phi;
}

std::complex<long double> log_gamma(std::complex<long double> z) {
  CL shift = 0;
  while (std::abs(z) < 15.0L || z.real() < 1.0L) {
    shift -= std::log(z);
    z += 1.0L;
  }
  const auto& bern = bernoulli_numbers();
  CL result = (z - 0.5L) * std::log(z) - z + 0.5L * kLog2Pi;
  const CL z2 = z * z;
  CL zpow = z;
  for (int k = 1; k <= 12; ++k) {
    result += bern[2 * k] / (static_cast<LD>(2 * k) * (2 * k - 1)) / zpow;
    zpow *= z2;
  }
  return result + shift;
}

Complex zeta(Complex z, const ZetaOptions& options) {
  if (z == Complex(1.0, 0.0)) throw Error(ErrorKind::Pole, "zeta has a pole at z = 1");
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) ||
      std::abs(z.imag()) > options.max_imag) {
    throw Error(ErrorKind::OutOfRange, "|Im z| exceeds the zeta accuracy envelope");
  }
  const CL w(z.real(), z.imag());
  if (z.real() >= -1.0) {
    const CL v = zeta_euler_maclaurin(w, options);
    return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
  }
  // zeta(z) = 2^z pi^{z-1} sin(pi z / 2) Gamma(1-z) zeta(1-z)
  const CL sin_arg = kPi * w / 2.0L;
  const CL s = std::sin(sin_arg);
  if (std::abs(w.imag()) < 30 && std::abs(s) == 0) return 0.0;
  const CL reflected = zeta_euler_maclaurin(CL(1) - w, options);
  const CL log_value = w * std::log(2.0L) + (w - CL(1)) * std::log(kPi) + log_sin(sin_arg) +
                       log_gamma(CL(1) - w) + std::log(reflected);
  const CL v = std::exp(log_value);
  return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

Complex zeta_alternating(Complex z, int terms) {
  if (z == Complex(1.0, 0.0)) throw Error(ErrorKind::Pole, "zeta has a pole at z = 1");
  const int n = terms;
  const CL w(z.real(), z.imag());
  std::vector<LD> d(static_cast<std::size_t>(n) + 1);
  LD t = 1.0L;
  LD acc = 0.0L;
  for (int i = 0; i <= n; ++i) {
    acc += t;
    d[i] = acc;
    t *= 4.0L * (n + i) * (n - i) / ((2.0L * i + 1) * (2.0L * i + 2));
  }
  CL sum = 0;
  for (int k = 0; k < n; ++k) {
    const LD sign = (k % 2 == 0) ? 1.0L : -1.0L;
    sum += sign * (d[k] - d[n]) * pow_neg(static_cast<LD>(k + 1), w);
  }
  const CL eta = -sum / d[n];
  const CL factor = CL(1) - std::exp((CL(1) - w) * std::log(2.0L));
  const CL v = eta / factor;
  return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

Complex zeta_sieved(Complex z, std::uint64_t M, const ZetaOptions& options) {
  Complex value = zeta(z, options);
  for (std::uint64_t p : primes_up_to(M)) {
    value *= 1.0 - std::exp(-z * std::log(static_cast<double>(p)));
  }
  return value;
}

Complex log_zeta_sieved(Complex z, std::uint64_t M, const ZetaOptions& options) {
  if (z == Complex(1.0, 0.0)) throw Error(ErrorKind::Pole, "zeta has a pole at z = 1");
  const auto& primes = cached_primes();
  const double sigma = z.real();
  if (sigma >= 6.0 && M < primes.back() / 4) {
    // -log(1 - p^{-z}) summed over primes p > M.
    CL acc = 0;
    const CL w(z.real(), z.imag());
    for (std::uint64_t p : primes) {
      if (p <= M) continue;
      const CL x = pow_neg(static_cast<LD>(p), w);
      CL term;
      if (std::abs(x) < 1e-4L) {
        term = x + x * x / 2.0L + x * x * x / 3.0L + x * x * x * x / 4.0L;
      } else {
        term = -std::log(CL(1) - x);
      }
      acc += term;
      const LD tail = std::pow(static_cast<LD>(p), 1.0L - sigma) / (sigma - 1.0L);
      if (tail < 1e-19L * std::abs(acc)) break;
    }
    return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
  }
  return std::log(zeta_sieved(z, M, options));
}

ZetaSelfTest zeta_self_test() {
  const Complex grid[] = {{2.0, 0.0}, {0.7, 0.0}, {0.5, 3.0}, {3.0, 4.0},
                          {-0.5, 2.0}, {1.5, 10.0}, {0.3, 20.0}, {0.0, 0.0}};
  ZetaSelfTest report;
  for (const Complex& z : grid) {
    const double diff = std::abs(zeta(z) - zeta_alternating(z));
    report.max_discrepancy = std::max(report.max_discrepancy, diff);
  }
  report.passed = report.max_discrepancy <= 1e-11;
  return report;
}

ZetaZeroTable::ZetaZeroTable(std::vector<double> ordinates, std::string source)
    : ordinates_(std::move(ordinates)), source_(std::move(source)) {
  for (std::size_t i = 0; i < ordinates_.size(); ++i) {
    if (!(ordinates_[i] > 14.0)) {
      throw Error(ErrorKind::InvalidArgument, "zeta zero ordinates must exceed 14");
    }
    if (i > 0 && !(ordinates_[i] > ordinates_[i - 1])) {
      throw Error(ErrorKind::InvalidArgument, "zeta zero ordinates must be strictly increasing");
    }
  }
}

ZetaZeroTable ZetaZeroTable::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open zeta zero file " + path.string());
  std::vector<double> values;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line.substr(first));
    double value = 0;
    if (!(fields >> value)) {
      throw Error(ErrorKind::Syntax,
                  path.string() + ":" + std::to_string(line_no) + ": expected a decimal ordinate");
    }
    values.push_back(value);
  }
  return ZetaZeroTable(std::move(values), path.string());
}

std::filesystem::path ZetaZeroTable::default_path() {
  if (const char* env = std::getenv("EULERPROD_ZETA_ZEROS"); env != nullptr && *env != '\0') {
    return env;
  }
  return EULERPROD_DEFAULT_ZEROS;
}

ZetaZeroTable ZetaZeroTable::load_default() { return load(default_path()); }

}  // namespace eulerprod
