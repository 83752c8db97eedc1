#include <doctest.h>

#include <cmath>
#include <numbers>

#include "eulerprod/arith.hpp"
#include "eulerprod/error.hpp"

using namespace eulerprod;

TEST_CASE("mobius and totient on small integers") {
  const int mu[] = {1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0};
  for (int m = 1; m <= 12; ++m) CHECK(mobius(m) == mu[m - 1]);
  CHECK(euler_phi(1) == 1);
  CHECK(euler_phi(36) == 12);
  CHECK(euler_phi(97) == 96);
  CHECK_THROWS_AS(mobius(0), Error);
  const auto table = totient_table(1000);
  for (std::uint32_t m = 1; m <= 1000; ++m) CHECK(table[m] == euler_phi(m));
}

TEST_CASE("sum of mobius over divisors vanishes beyond 1") {
  for (std::uint64_t m = 2; m <= 200; ++m) {
    int total = 0;
    for (std::uint64_t d = 1; d <= m; ++d)
      if (m % d == 0) total += mobius(d);
    CHECK(total == 0);
  }
}

TEST_CASE("prime sieve") {
  const auto primes = primes_up_to(100);
  CHECK(primes.size() == 25);
  CHECK(primes.front() == 2);
  CHECK(primes.back() == 97);
  CHECK(primes_up_to(1).empty());
  CHECK(primes_up_to(10000).size() == 1229);
}

TEST_CASE("zeta at known points") {
  CHECK(std::abs(zeta(2.0) - std::numbers::pi * std::numbers::pi / 6) < 1e-13);
  CHECK(std::abs(zeta(-1.0) - Complex(-1.0 / 12)) < 1e-12);
  CHECK(std::abs(zeta(0.7) - Complex(-2.7783884455537)) < 1e-11);
  CHECK(std::abs(zeta(Complex(2, 3)) - Complex(0.798021985146276, -0.113744308052939)) < 1e-12);
  CHECK(std::abs(zeta(Complex(0.5, 14.134725141734693))) < 1e-10);
  CHECK_THROWS_AS(zeta(1.0), Error);
}

TEST_CASE("zeta agrees with the alternating series") {
  for (double re : {-0.5, 0.25, 0.5, 1.5, 3.0}) {
    for (double im : {0.0, 1.0, 7.5, 25.0}) {
      if (re == 1.0 && im == 0.0) continue;
      const Complex z(re, im);
      CHECK(std::abs(zeta(z) - zeta_alternating(z)) < 1e-9);
    }
  }
  CHECK(zeta_self_test().passed);
}

TEST_CASE("sieved zeta removes the small Euler factors") {
  const Complex z(3.0, 2.0);
  Complex expected = zeta(z);
  for (std::uint64_t p : primes_up_to(7)) expected *= 1.0 - std::pow(static_cast<double>(p), -z);
  CHECK(std::abs(zeta_sieved(z, 7) - expected) < 1e-12);
  CHECK(std::abs(std::exp(log_zeta_sieved(z, 7)) - expected) < 1e-12);
  CHECK(std::abs(std::exp(log_zeta_sieved(Complex(40.0, 1.0), 3)) - zeta_sieved(Complex(40.0, 1.0), 3)) < 1e-14);
}

TEST_CASE("bundled zero table") {
  const ZetaZeroTable table = ZetaZeroTable::load(std::string(EULERPROD_TEST_DATA) + "/zeta_zeros.txt");
  REQUIRE(table.size() > 10);
  const auto ords = table.ordinates();
  CHECK(std::abs(ords[0] - 14.134725141734693) < 1e-9);
  for (std::size_t k = 1; k < ords.size(); ++k) CHECK(ords[k] > ords[k - 1]);
  for (std::size_t k = 0; k < 5; ++k) CHECK(std::abs(zeta(Complex(0.5, ords[k]))) < 1e-8);
  CHECK_THROWS_AS(ZetaZeroTable::load("/nonexistent/zeros.txt"), Error);
}
