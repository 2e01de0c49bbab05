#include <catch2/catch_amalgamated.hpp>

#include <maasslab/zagier.hpp>

using namespace maasslab;
using Catch::Approx;

TEST_CASE("lambda_sym cases") {
  CHECK(lambda_sym(2, 1) == std::complex<double>(1.0, 0.0));
  CHECK(lambda_sym(3, 3) == std::complex<double>(0.0, 0.0));
  // a = 1, c = 2: exp(i pi / 4) (2/1)
  auto l = lambda_sym(1, 2);
  CHECK(l.real() == Approx(std::sqrt(0.5)).margin(1e-14));
  CHECK(l.imag() == Approx(std::sqrt(0.5)).margin(1e-14));
  CHECK_THROWS_AS(lambda_sym(0, 3), std::domain_error);
}

TEST_CASE("gauss_gamma basics") {
  // gamma_1(n) = 1 for all n
  for (long n : {-7L, -1L, 0L, 1L, 5L, 12L}) {
    auto g = gauss_gamma(1, n);
    CHECK(g.real() == Approx(1.0).margin(1e-13));
    CHECK(g.imag() == Approx(0.0).margin(1e-13));
  }
  // periodicity in n with period 2c
  for (long c = 1; c <= 12; ++c)
    for (long n = -6; n <= 6; ++n) {
      auto a = gauss_gamma(c, n);
      auto b = gauss_gamma(c, n + 2 * c);
      CHECK(std::abs(a - b) < 1e-12);
    }
}

TEST_CASE("odd/even split recombines to en_coeffs") {
  for (long n : {0L, 1L, 5L, -3L, 8L, -4L}) {
    long M = 40;
    auto a = en_coeffs(n, M);
    auto odd = en_coeffs_odd(n, M);
    auto even = en_coeffs_even(n, M);
    for (long m = 1; m <= M; ++m)
      CHECK(std::abs(a[m] - 0.5 * (odd[m] + even[m])) < 1e-12);
  }
}

TEST_CASE("rhs_coeffs closed forms") {
  // n = 1: zeta(s)/zeta(2s): squarefree indicator
  auto r1 = rhs_coeffs(1, 30);
  for (long m = 1; m <= 30; ++m) {
    bool sf = mobius(m) != 0;
    CHECK(r1.at(m) == Rat(sf ? 1 : 0));
  }
  // n = 0: a_1 = 1, a_2 = 0, a_4 = 1
  auto r0 = rhs_coeffs(0, 10);
  CHECK(r0.at(1) == Rat(1));
  CHECK(r0.at(2) == Rat(0));
  CHECK(r0.at(4) == Rat(1));
  CHECK_THROWS_AS(rhs_coeffs(7, 10), std::domain_error);
}

TEST_CASE("coefficientwise identity for admissible n") {
  for (long n = -30; n <= 30; ++n) {
    if (n != 0) {
      long m4 = ((n % 4) + 4) % 4;
      if (m4 == 2 || m4 == 3) continue;
    }
    auto a = en_coeffs(n, 50);
    auto rhs = rhs_coeffs(n, 50);
    for (long m = 1; m <= 50; ++m) {
      double dev = std::abs(a[m] - rhs.at(m).convert_to<double>());
      if (dev >= 1e-8) {
        CAPTURE(n, m, dev);
        REQUIRE(dev < 1e-8);
      }
    }
  }
  SUCCEED();
}

TEST_CASE("vanishing branch") {
  for (long n : {2L, 3L, 6L, 7L, -1L, -2L}) {
    auto rep = verify_zagier(n, 2, 80, 1e-8);
    CHECK(rep.vanishing_branch);
    CHECK(rep.pass);
    CHECK(rep.max_coeff_dev < 1e-8);
  }
}

TEST_CASE("verify_zagier end to end") {
  CHECK(verify_zagier(0, 2, 200, 1e-6).pass);
  CHECK(verify_zagier(5, 2, 100, 1e-8).pass);
  CHECK(verify_zagier(12, 3, 100, 1e-8).pass);
  CHECK(verify_zagier(-4, 2, 100, 1e-8).pass);
  auto rep = verify_zagier(8, 2, 100, 1e-8);
  CHECK(rep.pass);
  CHECK(rep.max_imag < 1e-10);  // coefficients are real for admissible n
}
