#include <catch2/catch_amalgamated.hpp>

#include <maasslab/symscalar.hpp>

#include <random>

using namespace maasslab;

namespace {

// Random small SymScalar for the algebra properties.
SymScalar random_scalar(std::mt19937& rng) {
  std::uniform_int_distribution<int> coin(0, 3);
  std::uniform_int_distribution<int> num(-5, 5);
  SymScalar s;
  int terms = 1 + coin(rng) % 3;
  for (int t = 0; t < terms; ++t) {
    SymScalar term(Rat(num(rng), 1 + std::abs(num(rng))));
    if (coin(rng) == 0) term *= SymScalar::i_unit();
    if (coin(rng) == 0) term *= SymScalar::pi_half_pow(num(rng));
    if (coin(rng) == 0) term *= SymScalar::zeta_sym(3 + 2 * (std::abs(num(rng)) % 3));
    if (coin(rng) == 0) term *= SymScalar::lval_sym(5, 2);
    if (coin(rng) == 0) term *= SymScalar::sqrt_int(1 + std::abs(num(rng)));
    s += term;
  }
  return s;
}

}  // namespace

TEST_CASE("ring basics") {
  SymScalar i = SymScalar::i_unit();
  CHECK(i * i == SymScalar(-1));
  CHECK(SymScalar::pi_half_pow(1) * SymScalar::pi_half_pow(1) == SymScalar::pi_pow(1));
  CHECK(Rat(2) * SymScalar::zeta_sym(3) + Rat(3) * SymScalar::zeta_sym(3) ==
        Rat(5) * SymScalar::zeta_sym(3));
  CHECK(SymScalar::i_pow(4) == SymScalar(1));
  CHECK(SymScalar::i_pow(-1) == -i);
  CHECK(SymScalar::i_pow(7) * i == SymScalar(1));
}

TEST_CASE("sqrt folding") {
  CHECK(SymScalar::sqrt_int(12) == Rat(2) * SymScalar::sqrt_int(3));
  CHECK(SymScalar::sqrt_int(3) * SymScalar::sqrt_int(3) == SymScalar(3));
  CHECK(SymScalar::sqrt_int(6) * SymScalar::sqrt_int(10) == Rat(2) * SymScalar::sqrt_int(15));
  CHECK(SymScalar::sqrt_int(9) == SymScalar(3));
  CHECK(SymScalar::int_pow_half(4, HalfInt::halves(3)) == SymScalar(8));
  CHECK(SymScalar::int_pow_half(3, HalfInt::halves(5)) == Rat(9) * SymScalar::sqrt_int(3));
  CHECK(SymScalar::int_pow_half(2, HalfInt::halves(-1)) == Rat(1, 2) * SymScalar::sqrt_int(2));
}

TEST_CASE("conjugation") {
  SymScalar i = SymScalar::i_unit();
  CHECK(i.conj() == -i);
  SymScalar real = SymScalar::pi_pow(1) * SymScalar::zeta_sym(3);
  CHECK(real.conj() == real);
  SymScalar x = Rat(3, 2) * i * SymScalar::pi_half_pow(1);
  CHECK(x.conj() == -x);
  std::mt19937 rng(99);
  for (int t = 0; t < 100; ++t) {
    SymScalar a = random_scalar(rng), b = random_scalar(rng);
    CHECK(a.conj().conj() == a);                    // involution
    CHECK((a * b).conj() == a.conj() * b.conj());   // ring homomorphism
    CHECK((a + b).conj() == a.conj() + b.conj());
  }
}

TEST_CASE("ring axioms on random values") {
  std::mt19937 rng(1234);
  for (int t = 0; t < 120; ++t) {
    SymScalar a = random_scalar(rng), b = random_scalar(rng), c = random_scalar(rng);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a - a == SymScalar());
  }
}

TEST_CASE("equality and ratio") {
  CHECK(SymScalar::i_pow(4) * SymScalar::zeta_sym(3) == SymScalar::zeta_sym(3));
  auto r = (Rat(6) * SymScalar::pi_pow(1) * SymScalar::zeta_sym(3))
               .ratio(Rat(2) * SymScalar::pi_pow(1));
  REQUIRE(r.has_value());
  CHECK(*r == Rat(3) * SymScalar::zeta_sym(3));
  auto none = (SymScalar::zeta_sym(3) + SymScalar::pi_pow(1)).ratio(SymScalar::pi_pow(1));
  CHECK_FALSE(none.has_value());
  CHECK_THROWS_AS(SymScalar(1).ratio(SymScalar()), std::domain_error);
  auto z = SymScalar().ratio(SymScalar::pi_pow(1));
  REQUIRE(z.has_value());
  CHECK(z->is_zero());
  // surd division
  auto s = (Rat(3) * SymScalar::sqrt_int(6)).ratio(SymScalar::sqrt_int(2));
  REQUIRE(s.has_value());
  CHECK(*s == Rat(3) * SymScalar::sqrt_int(3));
}

TEST_CASE("canonicalization is idempotent") {
  // Build the same value along two different routes.
  SymScalar a = (SymScalar::i_unit() * SymScalar::i_unit()) * SymScalar::zeta_sym(5);
  SymScalar b = Rat(-1) * SymScalar::zeta_sym(5);
  CHECK(a == b);
  CHECK(a.str() == b.str());
  CHECK(SymScalar::parse(a.str()) == a);
}

TEST_CASE("rendering") {
  CHECK(SymScalar().str() == "0");
  CHECK(SymScalar(Rat(781, 126)).str() == "781/126");
  CHECK((Rat(-3, 4) * SymScalar::i_unit() * SymScalar::pi_half_pow(5) *
         SymScalar::zeta_sym(3) * SymScalar::lval_sym(5, 2))
            .str() == "(-3/4)*i*pi^(5/2)*zeta(3)*L(5,2)");
  CHECK(SymScalar::pi_pow(2).str() == "pi^2");
  CHECK(SymScalar::pi_half_pow(-3).str() == "pi^(-3/2)");
  CHECK(SymScalar::pi_pow(-2).str() == "pi^(-2)");
  CHECK((Rat(1, 2) * SymScalar::pi_pow(1)).str() == "(1/2)*pi");
  CHECK(SymScalar::sqrt_int(3).str() == "sqrt(3)");
  CHECK(SymScalar::lval_sym(1, 3) == SymScalar::zeta_sym(3));  // trivial chi -> zeta
}

TEST_CASE("parse round trip") {
  std::mt19937 rng(4321);
  for (int t = 0; t < 200; ++t) {
    SymScalar a = random_scalar(rng);
    CHECK(SymScalar::parse(a.str()) == a);
  }
  CHECK(SymScalar::parse("0").is_zero());
  CHECK(SymScalar::parse("(-3/4)*i*pi^(5/2)*zeta(3)*L(5,2)") ==
        Rat(-3, 4) * SymScalar::i_unit() * SymScalar::pi_half_pow(5) *
            SymScalar::zeta_sym(3) * SymScalar::lval_sym(5, 2));
}

TEST_CASE("symbol validity") {
  CHECK_THROWS_AS(SymScalar::zeta_sym(4), std::domain_error);
  CHECK_THROWS_AS(SymScalar::zeta_sym(1), std::domain_error);
  CHECK_THROWS_AS(SymScalar::lval_sym(7, 2), std::domain_error);  // 7 not fundamental
  CHECK_THROWS_AS(SymScalar::lval_sym(-3, 1), std::domain_error);
}
