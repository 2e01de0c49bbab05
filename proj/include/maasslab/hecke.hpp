#pragma once

// Hecke operators T(p) (integer weight) and T(p^2) (half-integral weight) on
// harmonic expansions, the xi-operator, eigenvalue verification, and the
// intertwining identity
//   p^(d(1-kappa)) xi(f | T(p^d, kappa)) = xi(f) | T(p^d, 2-kappa).
//
// Character conventions: the forms here carry the trivial character; in the
// half-integral case chi*(n) = ((-1)^(kappa-1/2) / n) enters exactly as in
// the coefficient formulas.

#include <maasslab/qexp.hpp>

#include <optional>
#include <string>

namespace maasslab {

namespace detail {

// chi(p) for the trivial character mod the level: 0 on bad primes.
inline long trivial_char_at(long level, long p) { return level % p == 0 ? 0 : 1; }

}  // namespace detail

// c_{f|T(p)}(n) = c(pn) + chi(p) p^(kappa-1) c(n/p); c(n/p) = 0 unless p | n.
// Output exact through |n| <= trunc/p.
inline HarmonicQExp hecke_tp(const HarmonicQExp& f, long p) {
  if (!f.weight.is_integer())
    throw std::domain_error("hecke_tp: integer-weight forms only; use hecke_tp2");
  long kappa = f.weight.integer();
  Rat pk = rat_pow(Rat(p), kappa - 1);
  long chip = detail::trivial_char_at(f.level, p);

  HarmonicQExp g;
  g.weight = f.weight;
  g.level = f.level;
  g.trunc = f.trunc / p;
  g.family = f.family + "|T(" + std::to_string(p) + ")";
  for (long n = -g.trunc; n <= g.trunc; ++n) {
    SymScalar c = f.plus_at(p * n);
    if (chip != 0 && n % p == 0) c += pk * f.plus_at(n / p);
    if (!c.is_zero()) g.set_plus(n, c);
    if (n != 0) {
      SymScalar cm = f.minus_at(p * n);
      if (chip != 0 && n % p == 0) cm += pk * f.minus_at(n / p);
      if (!cm.is_zero()) g.set_minus(n, cm);
    }
  }
  g.minus_zero = (SymScalar(pk) + SymScalar(chip)) * f.minus_zero;
  return g;
}

// Half-integral weight T(p^2), p odd:
//   c(p^2 n) + chi*(p) (n/p) p^(kappa-3/2) c(n) + chi*(p^2) p^(2kappa-2) c(n/p^2).
inline HarmonicQExp hecke_tp2(const HarmonicQExp& f, long p) {
  if (f.weight.is_integer())
    throw std::domain_error("hecke_tp2: half-integral-weight forms only; use hecke_tp");
  if (p == 2) throw std::domain_error("hecke_tp2: p must be odd");
  long m = (f.weight.twice - 1) / 2;  // kappa - 1/2
  long sign_arg = m % 2 == 0 ? 1 : -1;
  long chip = detail::trivial_char_at(f.level, p);
  long chi_star_p = chip * kronecker(sign_arg, p);
  long chi_star_p2 = chip * kronecker(sign_arg, static_cast<long long>(p) * p);
  Rat pk32 = rat_pow(Rat(p), (f.weight.twice - 3) / 2);  // p^(kappa - 3/2)
  Rat pk2 = rat_pow(Rat(p), f.weight.twice - 2);         // p^(2 kappa - 2)
  long p2 = p * p;

  HarmonicQExp g;
  g.weight = f.weight;
  g.level = f.level;
  g.trunc = f.trunc / p2;
  g.family = f.family + "|T(" + std::to_string(p) + "^2)";
  for (long n = -g.trunc; n <= g.trunc; ++n) {
    SymScalar c = f.plus_at(p2 * n);
    c += Rat(chi_star_p * kronecker(n, p)) * pk32 * f.plus_at(n);
    if (n % p2 == 0) c += Rat(chi_star_p2) * pk2 * f.plus_at(n / p2);
    if (!c.is_zero()) g.set_plus(n, c);
    if (n != 0) {
      SymScalar cm = f.minus_at(p2 * n);
      cm += Rat(chi_star_p * kronecker(n, p)) * pk32 * f.minus_at(n);
      if (n % p2 == 0) cm += Rat(chi_star_p2) * pk2 * f.minus_at(n / p2);
      if (!cm.is_zero()) g.set_minus(n, cm);
    }
  }
  g.minus_zero = (SymScalar(pk2) + SymScalar(Rat(chi_star_p2))) * f.minus_zero;
  return g;
}

struct HeckeReport {
  std::string form;
  std::string op;  // "T(p)" or "T(p^2)"
  long p = 0;
  std::string eigenvalue;
  long checked_range = 0;
  bool pass = false;
  std::optional<long> first_failure;
  std::string note;
};

enum class HeckeOp { Tp, Tp2 };

// Verifies (f|T - lambda f) = 0 exactly on plus part, minus part and the
// y^(1-k) constant, over the valid truncation.
inline HeckeReport eigen_check(const HarmonicQExp& f, HeckeOp op, long p,
                               const SymScalar& lambda, long n_range) {
  long d = op == HeckeOp::Tp ? p : p * p;
  long valid = f.trunc / d;
  if (valid < 1)
    throw resource_error("eigen_check: truncation too small to test anything");
  long range = std::min(n_range, valid);
  HarmonicQExp g = op == HeckeOp::Tp ? hecke_tp(f, p) : hecke_tp2(f, p);

  HeckeReport rep;
  rep.form = f.family;
  rep.op = op == HeckeOp::Tp ? "T(p)" : "T(p^2)";
  rep.p = p;
  rep.eigenvalue = lambda.str();
  rep.checked_range = range;
  rep.pass = true;
  rep.note = "constant terms checked with the generic coefficient formula at n = 0";
  for (long n = -range; n <= range && rep.pass; ++n) {
    if (g.plus_at(n) != lambda * f.plus_at(n) ||
        (n != 0 && g.minus_at(n) != lambda * f.minus_at(n))) {
      rep.pass = false;
      rep.first_failure = n;
    }
  }
  if (rep.pass && g.minus_zero != lambda * f.minus_zero) {
    rep.pass = false;
    rep.first_failure = 0;
  }
  return rep;
}

// xi_(2-k) image: weight 2-kappa holomorphic expansion with
//   constant (k-1) conj(c-(0)),  q^n term -(4 pi)^(k-1) conj(c-(-n)) n^(k-1).
inline HarmonicQExp xi_image(const HarmonicQExp& f) {
  HalfInt k = HalfInt::whole(2) - f.weight;
  HarmonicQExp g;
  g.weight = k;
  g.level = f.level;
  g.trunc = f.trunc;
  g.family = "xi(" + f.family + ")";

  SymScalar km1(Rat(k.twice - 2, 2));  // k - 1
  g.set_plus(0, km1 * f.minus_zero.conj());
  for (auto& [m, c] : f.minus) {
    long n = -m;
    SymScalar fourpi_pow, n_pow;
    if (k.is_integer()) {
      long e = k.integer() - 1;
      fourpi_pow = rat_pow(Rat(4), e) * SymScalar::pi_pow(e);
      n_pow = SymScalar::int_pow_half(n > 0 ? n : -n, HalfInt::whole(e));
      if (n < 0 && e % 2 != 0) n_pow = Rat(-1) * n_pow;
    } else {
      if (n < 0)
        throw std::domain_error("xi_image: negative index with fractional power");
      HalfInt e = k - HalfInt::whole(1);
      fourpi_pow = SymScalar(rat_pow(Rat(2), e.twice)) * SymScalar::pi_half_pow(e.twice);
      n_pow = SymScalar::int_pow_half(n, e);
    }
    g.set_plus(n, Rat(-1) * fourpi_pow * c.conj() * n_pow);
  }
  return g;
}

// Classical Hecke action on a holomorphic expansion of weight kappa2 = 2-kappa,
// from the same coefficient formulas restricted to the plus part.
inline HarmonicQExp hecke_classical(const HarmonicQExp& f, long p) {
  return f.weight.is_integer() ? hecke_tp(f, p) : hecke_tp2(f, p);
}

// Intertwining identity: d = 1 for integer weight, 2 for half-integral.
inline bool intertwine_check(const HarmonicQExp& f, long p, long n_range) {
  bool integer_wt = f.weight.is_integer();
  long d = integer_wt ? 1 : 2;
  long step = integer_wt ? p : p * p;
  long valid = f.trunc / step;
  if (valid < 1) throw resource_error("intertwine_check: truncation too small");
  long range = std::min(n_range, valid);

  HarmonicQExp tf = integer_wt ? hecke_tp(f, p) : hecke_tp2(f, p);
  HarmonicQExp lhs = xi_image(tf);
  // p^(d (1 - kappa)): 1-kappa has twice-value 2 - weight.twice; for the
  // half-integral case d = 2 clears the half power.
  long e2 = d * (2 - f.weight.twice);  // twice the exponent
  if (e2 % 2 != 0) throw std::logic_error("intertwine_check: non-integer scale");
  Rat scale = rat_pow(Rat(p), e2 / 2);

  HarmonicQExp rhs = hecke_classical(xi_image(f), p);

  for (long n = 0; n <= range; ++n) {
    if (!(Rat(scale) * lhs.plus_at(n) == rhs.plus_at(n))) return false;
  }
  return true;
}

}  // namespace maasslab
