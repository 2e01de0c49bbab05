#include <catch2/catch_amalgamated.hpp>

#include <maasslab/qexp.hpp>

using namespace maasslab;

TEST_CASE("eisenstein") {
  auto e4 = eisenstein(4, 10);
  CHECK(e4.plus_at(0) == SymScalar(Rat(1, 240)));
  CHECK(e4.plus_at(1) == SymScalar(1));
  CHECK(e4.holomorphic());
  auto e10 = eisenstein(10, 5);
  CHECK(e10.plus_at(3) == SymScalar(19684));
  CHECK_THROWS_AS(eisenstein(2, 5), std::domain_error);
  CHECK_THROWS_AS(eisenstein(5, 5), std::domain_error);
  // all plus coefficients positive integers for n >= 1
  for (long n = 1; n <= 10; ++n) {
    Rat c = e4.plus_at(n).rational_value();
    CHECK(boost::multiprecision::denominator(c) == 1);
    CHECK(c > 0);
  }
}

TEST_CASE("eisenstein_p golden displays") {
  auto g6 = eisenstein_p(6, 5, 5);
  CHECK(g6.plus_at(0) == SymScalar(Rat(781, 126)));
  CHECK(g6.plus_at(1) == SymScalar(1));
  CHECK(g6.plus_at(2) == SymScalar(33));
  CHECK(g6.plus_at(3) == SymScalar(244));
  CHECK(g6.plus_at(4) == SymScalar(1057));
  CHECK(g6.plus_at(5) == SymScalar(1));
  auto g10 = eisenstein_p(10, 5, 5);
  CHECK(g10.plus_at(0) == SymScalar(Rat(488281, 66)));
  CHECK(g10.plus_at(2) == SymScalar(513));
  CHECK(g10.plus_at(3) == SymScalar(19684));
  CHECK(g10.plus_at(4) == SymScalar(262657));
  CHECK(g10.plus_at(5) == SymScalar(1));
  // positive-integer coefficients for n >= 1
  for (long p : {2L, 3L, 5L})
    for (long n = 1; n <= 40; ++n) {
      Rat c = eisenstein_p(6, p, 40).plus_at(n).rational_value();
      CHECK(boost::multiprecision::denominator(c) == 1);
      CHECK(c > 0);
    }
}

TEST_CASE("eisenstein stabilization identity") {
  // EisP(k2, p) = Eis(k2) - p^(k2-1) Eis(k2)(q -> q^p), coefficientwise
  for (long k2 : {4L, 6L, 8L}) {
    for (long p : {2L, 3L, 5L}) {
      auto ep = eisenstein_p(k2, p, 60);
      auto e = eisenstein(k2, 60);
      Rat pk = rat_pow(Rat(p), k2 - 1);
      for (long n = 0; n <= 60; ++n) {
        SymScalar expect = e.plus_at(n);
        if (n % p == 0 && n > 0) expect -= pk * e.plus_at(n / p);
        if (n == 0) {
          // constants: zeta^(p) = (1 - p^(k2-1)) zeta
          expect = SymScalar((Rat(1) - pk) * zeta_neg(1 - k2) / 2);
        }
        CHECK(ep.plus_at(n) == expect);
      }
    }
  }
}

TEST_CASE("maass_g structure") {
  auto g1 = maass_g(1, 8);
  CHECK(g1.weight == HalfInt::whole(-2));
  CHECK(g1.level == 1);
  // golden prime-to-5 ratios: q + 9/8 q^2 + ... + 73/64 q^4
  auto r2 = g1.plus_at(2).ratio(g1.plus_at(1));
  REQUIRE(r2.has_value());
  CHECK(*r2 == SymScalar(Rat(9, 8)));
  auto r4 = g1.plus_at(4).ratio(g1.plus_at(1));
  REQUIRE(r4.has_value());
  CHECK(*r4 == SymScalar(Rat(73, 64)));
  // plus constant: 2 zeta'(-2k) = (-1)^k (2k)! zeta(2k+1) (2pi)^(-2k)
  CHECK(g1.plus_at(0) == Rat(-2, 4) * SymScalar::pi_pow(-2) * SymScalar::zeta_sym(3));
  // minus_zero: (-1)^(k+1) 2^(1+2k) pi zeta(-2k-1)/(2k+1)
  CHECK(g1.minus_zero == Rat(8) * Rat(zeta_neg(-3)) / Rat(3) * SymScalar::pi_pow(1));
  // minus(-n) (2k)! = plus(n) for all n
  for (long k : {1L, 2L, 3L}) {
    auto g = maass_g(k, 12);
    Rat fact = 1;
    for (long j = 2; j <= 2 * k; ++j) fact *= j;
    for (long n = 1; n <= 12; ++n) CHECK(Rat(fact) * g.minus_at(-n) == g.plus_at(n));
  }
  CHECK_THROWS_AS(maass_g(0, 5), std::domain_error);
}

TEST_CASE("maass_h structure") {
  auto h1 = maass_h(1, 30);
  CHECK(h1.weight == HalfInt::halves(-1));
  CHECK(h1.level == 4);
  // r=1, N=2: inadmissible
  CHECK(h1.plus_at(2).is_zero());
  // r=1, N=3: D=-3, v=1 -> i^3 L(-3,2)
  CHECK(h1.plus_at(3) == SymScalar::i_pow(3) * SymScalar::lval_sym(-3, 2));
  // gamma ratio exact values
  CHECK(h_gamma_ratio(1) == Rat(2));
  // vanishing pattern: coefficient at N zero iff (-1)^r N = 2, 3 mod 4
  for (long r : {1L, 2L, 3L, 4L}) {
    auto h = maass_h(r, 500);
    long sign = r % 2 == 0 ? 1 : -1;
    for (long N = -500; N <= 500; ++N) {
      if (N == 0) continue;
      long m = (((sign * N) % 4) + 4) % 4;
      bool admissible = (m == 0 || m == 1);
      bool nonzero = N > 0 ? !h.plus_at(N).is_zero() : !h.minus_at(N).is_zero();
      if (nonzero != admissible) {
        CAPTURE(r, N);
        REQUIRE(nonzero == admissible);
      }
    }
  }
  SUCCEED();
  // plus constant and minus_zero shapes
  CHECK(h1.plus_at(0) == SymScalar::i_pow(1) * SymScalar::zeta_sym(3));
  CHECK(h1.minus_zero ==
        Rat(64) * Rat(zeta_neg(-3)) / (Rat(-1) * Rat(2)) * SymScalar::i_unit() *
            SymScalar::pi_pow(3));
  CHECK_THROWS_AS(maass_h(0, 5), std::domain_error);
}

TEST_CASE("maass_h minus coefficients carry |N|^(r+1/2) exactly") {
  auto h1 = maass_h(1, 20);
  // N = -4: (-1)(-4) = 4 = 1*2^2, D = 1, v = 2; zeta(-1) = -1/12, T_2(2) = 7,
  // gamma ratio 2, |N|^(3/2) = 8, phase i^(-3) = i.
  SymScalar expect = SymScalar::i_unit() * SymScalar::pi_half_pow(3) *
                     Rat(Rat(-1, 12) * Rat(7) * Rat(2) / Rat(8));
  CHECK(h1.minus_at(-4) == expect);
  // N = -3: (-1)(-3) = 3, inadmissible
  CHECK(h1.minus_at(-3).is_zero());
  // N = -7: (-1)(-7) = 7 = 3 mod 4, inadmissible; N = -8: 8 = 8*1
  CHECK(h1.minus_at(-7).is_zero());
  SymScalar c8 = h1.minus_at(-8);
  CHECK_FALSE(c8.is_zero());
  // surd content: 8^(3/2) = 16 sqrt(2)
  SymScalar e8 = SymScalar::i_unit() * SymScalar::pi_half_pow(3) *
                 Rat(l_neg_disc(1, 8) * t_chi(2, 8, 1) * Rat(2)) *
                 SymScalar::int_pow_half(8, HalfInt::halves(-3));
  CHECK(c8 == e8);
}

TEST_CASE("maass_g_p golden ratios") {
  auto g15 = maass_g_p(1, 5, 6, 8);
  // plus-part ratios are sigma^(5)_3(n)/n^3
  auto ratio = [](const PadicQExp& f, long n) {
    PadicNum a = f.plus_at(n).num, b = f.plus_at(1).num;
    return a / b;
  };
  auto eq_rat = [](const PadicNum& x, const Rat& r) {
    auto [v, abs] = vp_diff(x, PadicNum::from_rat(r, x.p(), 10));
    return !v.has_value() || *v >= 6;
  };
  CHECK(eq_rat(ratio(g15, 2), Rat(9, 8)));
  CHECK(eq_rat(ratio(g15, 3), Rat(28, 27)));
  CHECK(eq_rat(ratio(g15, 4), Rat(73, 64)));
  CHECK(eq_rat(ratio(g15, 5), Rat(1, 125)));
  auto g35 = maass_g_p(3, 5, 6, 8);
  CHECK(eq_rat(ratio(g35, 2), Rat(129, 128)));
  CHECK(eq_rat(ratio(g35, 3), Rat(2188, 2187)));
  CHECK(eq_rat(ratio(g35, 4), Rat(16513, 16384)));
  CHECK(eq_rat(ratio(g35, 5), Rat(1, 78125)));
}

TEST_CASE("maass_h_p structure") {
  auto h = maass_h_p(1, 5, 12, 8);
  // N = 3: D = -3, v = 1: T factor 1; i^3 = -i phase
  auto c3 = h.plus_at(3);
  CHECK_FALSE(c3.is_zero());
  CHECK(c3.i_exp == 1);
  // inadmissible slots empty
  CHECK(h.plus_at(2).is_zero());
  CHECK(h.minus_at(-3).is_zero());
  // N = -4: D = 1, v = 2: no surd (|N| = 4 square)
  CHECK(h.minus_at(-4).surd == 1);
  CHECK_FALSE(h.minus_at(-4).is_zero());
  // N = -8: surd 2 from |8|^(1/2)
  CHECK(h.minus_at(-8).surd == 2);
  // valuation additivity audit at N = -8:
  // v(c) = v(L_5(-1, chi_8 branch)) + v(T) + v(gamma ratio) + (3/2)v(pi_5)
  //        - v(8^(3/2))
  auto c = h.minus_at(-8);
  PadicNum lv = padic_l(-1, DirichletChar::product(8, 5, 2), 5, 8);
  long a = 0;  // r = 1 odd
  PadicNum gr = padic_gamma(Rat(1, 2), 5, 12) /
                (padic_gamma(Rat(1), 5, 12) * padic_gamma(Rat(3, 2), 5, 12));
  Rat expected_v = Rat(lv.valuation()) + Rat(vp_rat(t_chi_p(2, 8, 1, 5), 5)) +
                   Rat(gr.valuation()) + Rat(3, 2) * Rat(padic_pi(5, 8).valuation()) -
                   Rat(3, 2) * Rat(vp_rat(Rat(8), 5));
  CHECK(c.valuation() == expected_v);
  (void)a;
}

TEST_CASE("sigma-level stabilization identity exhaustive") {
  // sigma^(p)(n)/n^m = sigma(n)/n^m - sigma(n/p)/(n/p)^m,  m = 2k+1
  for (long p : {2L, 3L, 5L, 7L})
    for (long k = 1; k <= 4; ++k) {
      long m = 2 * k + 1;
      for (long n = 1; n <= 500; ++n) {
        Rat lhs = sigma_p(m, n, p) / rat_pow(Rat(n), m);
        Rat rhs = sigma(m, n) / rat_pow(Rat(n), m);
        if (n % p == 0) rhs -= sigma(m, n / p) / rat_pow(Rat(n / p), m);
        if (lhs != rhs) {
          CAPTURE(p, k, n);
          REQUIRE(lhs == rhs);
        }
      }
    }
  SUCCEED();
}
