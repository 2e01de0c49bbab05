#pragma once

// Truncated harmonic Maass expansions and the form constructors: classical
// and p-stabilized Eisenstein series, the integer-weight family G(z, -2k),
// the half-integral family H(z, -r+1/2), and their p-adic avatars.
//
// Container shape: plus-part coefficients of q^n, a distinguished y^(1-k)
// coefficient, and minus-part coefficients paired with the formal symbols
// Gamma(1-k, -4 pi n y) q^n.  A container is exact through |n| <= trunc;
// operators consuming it record their own smaller output truncation.

#include <maasslab/bernoulli.hpp>
#include <maasslab/padic.hpp>
#include <maasslab/padic_l.hpp>
#include <maasslab/symscalar.hpp>

#include <map>
#include <string>

namespace maasslab {

struct HarmonicQExp {
  HalfInt weight;
  long level = 1;
  long trunc = 0;
  std::map<long, SymScalar> plus;   // n -> c+(n)
  SymScalar minus_zero;             // coefficient of y^(1-weight)
  std::map<long, SymScalar> minus;  // n -> c-(n), n != 0
  std::string family;

  SymScalar plus_at(long n) const {
    auto it = plus.find(n);
    return it == plus.end() ? SymScalar() : it->second;
  }
  SymScalar minus_at(long n) const {
    auto it = minus.find(n);
    return it == minus.end() ? SymScalar() : it->second;
  }
  void set_plus(long n, SymScalar c) {
    if (!c.is_zero()) plus[n] = std::move(c);
  }
  void set_minus(long n, SymScalar c) {
    if (n == 0) throw std::domain_error("set_minus: use minus_zero for n = 0");
    if (!c.is_zero()) minus[n] = std::move(c);
  }
  bool holomorphic() const { return minus.empty() && minus_zero.is_zero(); }
};

// G_k2(z) = 1/2 zeta(1-k2) + sum sigma_(k2-1)(n) q^n, k2 >= 4 even.
inline HarmonicQExp eisenstein(long k2, long trunc) {
  if (k2 == 2) throw std::domain_error("eisenstein: weight 2 is not a modular form");
  if (k2 < 4 || k2 % 2 != 0) throw std::domain_error("eisenstein: weight must be even >= 4");
  HarmonicQExp f;
  f.weight = HalfInt::whole(k2);
  f.level = 1;
  f.trunc = trunc;
  f.family = "Eis";
  f.set_plus(0, SymScalar(zeta_neg(1 - k2) / 2));
  for (long n = 1; n <= trunc; ++n) f.set_plus(n, SymScalar(sigma(k2 - 1, n)));
  return f;
}

// p-stabilization: constant 1/2 zeta^(p)(1-k2), coefficients sigma^(p).
inline HarmonicQExp eisenstein_p(long k2, long p, long trunc) {
  if (k2 == 2) throw std::domain_error("eisenstein_p: weight 2 is not a modular form");
  if (k2 < 4 || k2 % 2 != 0) throw std::domain_error("eisenstein_p: weight must be even >= 4");
  HarmonicQExp f;
  f.weight = HalfInt::whole(k2);
  f.level = p;
  f.trunc = trunc;
  f.family = "EisP";
  f.set_plus(0, SymScalar(padic_zeta_neg(1 - k2, p) / 2));
  for (long n = 1; n <= trunc; ++n) f.set_plus(n, SymScalar(sigma_p(k2 - 1, n, p)));
  return f;
}

// The weight -2k harmonic family.
inline HarmonicQExp maass_g(long k, long trunc) {
  if (k <= 0) throw std::domain_error("maass_g: k must be positive");
  HarmonicQExp f;
  f.weight = HalfInt::whole(-2 * k);
  f.level = 1;
  f.trunc = trunc;
  f.family = "G";

  Rat fact2k = 1;  // (2k)!
  for (long j = 2; j <= 2 * k; ++j) fact2k *= j;
  SymScalar two_pi_neg2k = rat_pow(Rat(1, 2), 2 * k) * SymScalar::pi_pow(-2 * k);
  long sign_k = k % 2 == 0 ? 1 : -1;

  // Constant term: 2 zeta'(-2k) = (-1)^k (2k)! zeta(2k+1) (2 pi)^(-2k).  The
  // sign matches the nonconstant terms; without it the expansion fails the
  // weight -2k transformation law under S for odd k (checked numerically).
  f.set_plus(0, Rat(sign_k) * fact2k * two_pi_neg2k * SymScalar::zeta_sym(2 * k + 1));
  f.minus_zero = Rat(-sign_k) * rat_pow(Rat(2), 2 * k + 1) *
                 Rat(zeta_neg(-2 * k - 1)) / Rat(2 * k + 1) * SymScalar::pi_pow(1);
  for (long n = 1; n <= trunc; ++n) {
    Rat base = sigma(2 * k + 1, n) / rat_pow(Rat(n), 2 * k + 1);
    f.set_plus(n, Rat(sign_k) * fact2k * base * two_pi_neg2k);
    f.set_minus(-n, Rat(sign_k) * base * two_pi_neg2k);
  }
  return f;
}

// Gamma((r+a)/2) / (Gamma((r+1+a)/2) Gamma(r+1/2)) with a = r+1 mod 2;
// the pi^(1/2) contents cancel, leaving an exact rational.
inline Rat h_gamma_ratio(long r) {
  long a = r % 2 == 0 ? 1 : 0;
  SymScalar num = gamma_half(HalfInt::halves(r + a));
  SymScalar den = gamma_half(HalfInt::halves(r + 1 + a)) * gamma_half(HalfInt::halves(2 * r + 1));
  auto q = num.ratio(den);
  if (!q || !q->is_rational()) throw std::logic_error("h_gamma_ratio: not rational");
  return q->rational_value();
}

// L(-r, chi_D) as an exact rational, D = 1 routed to zeta.
inline Rat l_neg_disc(long r, long D) {
  if (D == 1) return zeta_neg(-r);
  return l_neg(-r, DirichletChar::kronecker_char(D));
}

// The weight -r+1/2 harmonic family on Gamma_0(4).  For N < 0 the fractional
// power N^(r+1/2) is carried as |N|^(r+1/2) with the phase folded into the
// i-power by the fixed convention (-1)^(r+1/2) := i^(2r+1).
inline HarmonicQExp maass_h(long r, long trunc) {
  if (r <= 0) throw std::domain_error("maass_h: r must be positive");
  HarmonicQExp f;
  f.weight = HalfInt::halves(1 - 2 * r);
  f.level = 4;
  f.trunc = trunc;
  f.family = "H";

  Rat fact2r = 1;  // (2r)!
  for (long j = 2; j <= 2 * r; ++j) fact2r *= j;

  f.set_plus(0, SymScalar::i_pow(2 * r - 1) * SymScalar::zeta_sym(1 + 2 * r));
  f.minus_zero = rat_pow(Rat(2), 2 * r + 4) * Rat(zeta_neg(-1 - 2 * r)) /
                 (Rat(2 * r - 3) * fact2r) * SymScalar::i_unit() *
                 SymScalar::pi_pow(2 * r + 1);

  long sign_r = r % 2 == 0 ? 1 : -1;
  Rat gr = h_gamma_ratio(r);
  for (long N = 1; N <= trunc; ++N) {
    auto dd = decompose_disc(sign_r * N);
    if (!dd) continue;
    SymScalar lsym = dd->D == 1 ? SymScalar::zeta_sym(1 + r) : SymScalar::lval_sym(dd->D, 1 + r);
    f.set_plus(N, SymScalar::i_pow(2 * r + 1) * lsym *
                      rat_pow(Rat(dd->v), -(2 * r + 1)) * Rat(t_chi(r + 1, dd->D, dd->v)));
  }
  for (long N = -1; N >= -trunc; --N) {
    auto dd = decompose_disc(sign_r * N);
    if (!dd) continue;
    Rat lv = l_neg_disc(r, dd->D);
    SymScalar c = SymScalar::i_pow(-(2 * r + 1)) * SymScalar::pi_half_pow(3) *
                  Rat(lv * t_chi(r + 1, dd->D, dd->v) * gr) *
                  SymScalar::int_pow_half(-N, HalfInt::halves(-(2 * r + 1)));
    f.set_minus(N, c);
  }
  return f;
}

// ---- p-adic expansions ----------------------------------------------------

// A p-adic coefficient: num * i^i_exp / sqrt(surd), surd squarefree.  The
// surd slot carries the quadratic irrationality |D|^(1/2) of the N < 0
// coefficients; within a fixed square class it is a common factor.
struct PadicCoeff {
  PadicNum num;
  int i_exp = 0;
  long surd = 1;

  static PadicCoeff zero(long p) { return PadicCoeff{PadicNum::zero(p), 0, 1}; }
  bool is_zero() const { return !num.is_nonzero(); }

  PadicCoeff times_i_pow(long e) const {
    PadicCoeff c = *this;
    long r = ((e % 4) + 4) % 4;
    int ie = c.i_exp + (r % 2);
    bool neg = r >= 2;
    if (ie >= 2) {
      ie -= 2;
      neg = !neg;
    }
    c.i_exp = ie;
    if (neg) c.num = -c.num;
    return c;
  }

  // valuation as an exact rational (the surd contributes half-integers)
  Rat valuation() const {
    if (!num.is_nonzero()) throw std::domain_error("PadicCoeff: zero valuation");
    Rat v(num.valuation());
    if (surd % num.p() == 0) v -= Rat(1, 2);
    return v;
  }

  std::string str() const {
    std::string s;
    if (i_exp == 1) s += "i*";
    s += num.str();
    if (surd != 1) s += "/sqrt(" + std::to_string(surd) + ")";
    return s;
  }
};

struct PadicQExp {
  PadicWeight weight;
  long level = 1;
  long trunc = 0;
  long p = 2;
  long prec = PadicNum::kDefaultPrec;
  std::map<long, PadicCoeff> plus;
  PadicCoeff minus_zero;
  std::map<long, PadicCoeff> minus;
  std::map<long, std::string> flags;  // indices with evaluation caveats
  std::string family;
  std::optional<long> int_weight;  // exact weight for integer-weight families

  PadicCoeff plus_at(long n) const {
    auto it = plus.find(n);
    return it == plus.end() ? PadicCoeff::zero(p) : it->second;
  }
  PadicCoeff minus_at(long n) const {
    auto it = minus.find(n);
    return it == minus.end() ? PadicCoeff::zero(p) : it->second;
  }
};

// p-adic integer-weight family: Gamma^(p), zeta^(p), sigma^(p) and
// pi = pi^(p) in place of their archimedean counterparts.
inline PadicQExp maass_g_p(long k, long p, long trunc, long prec) {
  if (k <= 0) throw std::domain_error("maass_g_p: k must be positive");
  if (p < 2) throw std::domain_error("maass_g_p: bad prime");
  PadicQExp f{PadicWeight::from_integer(-2 * k, p, prec),
              p, trunc, p, prec, {}, PadicCoeff::zero(p), {}, {}, "Gp", -2 * k};

  PadicNum gamma2k1 = PadicNum::from_int(padic_gamma_int(2 * k + 1, p), p, prec + 4);
  PadicNum two_pi = PadicNum::from_int(2, p, prec + 4) * padic_pi(p, prec + 4);
  PadicNum pref = two_pi.pow(-2 * k);
  long sign_k = k % 2 == 0 ? 1 : -1;

  f.plus.emplace(0, PadicCoeff{gamma2k1 * padic_zeta_at(2 * k + 1, p, prec + 4) * pref, 0, 1});
  f.minus_zero = PadicCoeff{
      PadicNum::from_rat(Rat(-sign_k) * rat_pow(Rat(2), 2 * k + 1) *
                             padic_zeta_neg(-2 * k - 1, p) / Rat(2 * k + 1),
                         p, prec + 4) *
          padic_pi(p, prec + 4),
      0, 1};
  for (long n = 1; n <= trunc; ++n) {
    Rat base = Rat(sign_k) * sigma_p(2 * k + 1, n, p) / rat_pow(Rat(n), 2 * k + 1);
    PadicNum b = PadicNum::from_rat(base, p, prec + 4);
    f.plus.emplace(n, PadicCoeff{b * pref * gamma2k1, 0, 1});
    f.minus.emplace(-n, PadicCoeff{b * pref, 0, 1});
  }
  return f;
}

// p-adic half-integral family.
inline PadicQExp maass_h_p(long r, long p, long trunc, long prec) {
  if (r <= 0) throw std::domain_error("maass_h_p: r must be positive");
  if (p < 3) throw std::domain_error("maass_h_p: p must be an odd prime");
  long q = p - 1;
  PadicQExp f{PadicWeight{PadicNum::from_rat(Rat(1 - 2 * r, 2), p, prec),
                          (((1 - 2 * r) % q) + q) % q},
              4 * p, trunc, p, prec, {}, PadicCoeff::zero(p), {}, {}, "Hp",
              std::nullopt};

  long wp = prec + 4;
  PadicNum gamma2r1 = PadicNum::from_int(padic_gamma_int(2 * r + 1, p), p, wp);
  f.plus.emplace(0, PadicCoeff{padic_zeta_at(1 + 2 * r, p, prec), 0, 1}.times_i_pow(2 * r - 1));
  f.minus_zero = PadicCoeff{PadicNum::from_rat(rat_pow(Rat(2), 2 * r + 4) *
                                                   padic_zeta_neg(-1 - 2 * r, p) / Rat(2 * r - 3),
                                               p, wp) *
                                padic_pi(p, wp).pow(2 * r + 1) / gamma2r1,
                            0, 1}
                     .times_i_pow(1);

  long a = r % 2 == 0 ? 1 : 0;
  PadicNum gratio = padic_gamma_int_or_half(Rat(r + a, 2), p, wp) /
                    (padic_gamma_int_or_half(Rat(r + 1 + a, 2), p, wp) * padic_gamma_int_or_half(Rat(2 * r + 1, 2), p, wp));
  long sign_r = r % 2 == 0 ? 1 : -1;

  // The p-adic L-values are taken on the omega-branch through the
  // interpolation point: chi_D omega^-r at s = 1+r, chi_D omega^(r+1) at
  // s = -r.  (L_p of an odd character vanishes identically, so the bare
  // chi_D would zero out half the parities; the branch through the adjacent
  // classical values is the one the stabilized family converges to.)
  for (long N = 1; N <= trunc; ++N) {
    auto dd = decompose_disc(sign_r * N);
    if (!dd) continue;
    try {
      PadicNum lv = padic_l(1 + r, DirichletChar::product(dd->D, p, -r), p, prec);
      PadicNum c = lv * PadicNum::from_rat(rat_pow(Rat(dd->v), -(2 * r + 1)) *
                                               t_chi_p(r + 1, dd->D, dd->v, p),
                                           p, wp);
      if (c.is_nonzero()) f.plus.emplace(N, PadicCoeff{c, 0, 1}.times_i_pow(2 * r + 1));
    } catch (const pole_error& e) {
      f.flags.emplace(N, e.what());
    }
  }
  for (long N = -1; N >= -trunc; --N) {
    auto dd = decompose_disc(sign_r * N);
    if (!dd) continue;
    try {
      PadicNum lv = padic_l(-r, DirichletChar::product(dd->D, p, r + 1), p, prec);
      auto [sf, fq] = squarefree_part(-N);  // |N| = sf * fq^2
      PadicNum c = padic_pi_half_pow(3, p, wp) * lv * gratio *
                   PadicNum::from_rat(t_chi_p(r + 1, dd->D, dd->v, p) /
                                          (rat_pow(Rat(-N), r) * Rat(fq)),
                                      p, wp);
      if (c.is_nonzero())
        f.minus.emplace(N, PadicCoeff{c, 0, sf}.times_i_pow(-(2 * r + 1)));
    } catch (const pole_error& e) {
      f.flags.emplace(N, e.what());
    }
  }
  return f;
}

}  // namespace maasslab
