#pragma once

// p-adic valuation diagnostics between expansions, weight-family congruences,
// and the convergence checker for p-adic harmonic Maass forms: a sequence of
// forms f_i of weights k_i -> k must satisfy
//   (1) v_p(n^(1-k_i) c_i(n) - n^(1-k) c(n)) -> infinity (n != 0),
//   (2) v_p(c_i(0) - c(0)) -> infinity,
// witnessed here by strictly increasing difference valuations along the
// standard weight sequence k_i = k0 + (p-1) p^i.

#include <maasslab/hecke.hpp>
#include <maasslab/padic.hpp>
#include <maasslab/padic_l.hpp>
#include <maasslab/qexp.hpp>

#include <optional>
#include <string>
#include <vector>

namespace maasslab {

namespace detail {

// sigma^(p)_m(n) mod p^prec for large exponents m.
inline PadicNum sigma_p_mod(long m, long n, long p, long prec) {
  Int mod = ipow(p, prec);
  Int s = 0;
  for (long d : divisors(n)) {
    if (d % p == 0) continue;
    s += Int(boost::multiprecision::powm(Int(d), Int(m), mod));
  }
  return PadicNum::from_int(s % mod, p, prec);
}

// Gamma^(p)(n) mod p^prec by direct product (n moderate).
inline PadicNum gamma_p_mod(long n, long p, long prec) {
  Int mod = ipow(p, prec);
  Int prod = unit_product_mod(n - 1, p, mod);
  if (n % 2 != 0) prod = (mod - prod) % mod;
  return PadicNum::from_int(prod, p, prec);
}

// T_(r+1)^(chi_D, (p))(v) mod p^prec for large r.
inline PadicNum t_chi_p_mod(long rp1, long D, long v, long p, long prec) {
  Int mod = ipow(p, prec);
  Int s = 0;
  for (long a : divisors(v)) {
    if (a % p == 0) continue;
    int mu = mobius(a);
    if (mu == 0) continue;
    int chi = D == 1 ? 1 : kronecker(D, a);
    if (chi == 0) continue;
    Int term = boost::multiprecision::powm(Int(a), Int(rp1 - 1), mod);
    Int sig = 0;
    for (long d : divisors(v / a)) {
      if (d % p == 0) continue;
      sig += Int(boost::multiprecision::powm(Int(d), Int(2 * rp1 - 1), mod));
    }
    s += Int(mu * chi) * term % mod * (sig % mod);
  }
  return PadicNum::from_int(((s % mod) + mod) % mod, p, prec);
}

}  // namespace detail

struct CongruenceReport {
  std::string form_a, form_b;
  long p = 0;
  std::optional<long> asserted_level;
  long checked_range = 0;
  // Minimum achieved valuation per bucket; empty optional = every difference
  // vanished to the available precision (reported as exceeding precision).
  std::optional<Rat> plus_floor, minus_floor, const_floor;
  bool pass = false;
  std::vector<long> exceptional;  // indices below the asserted level
  std::string note;
};

namespace detail {

struct FloorAcc {
  std::optional<Rat> floor;
  bool any = false;
  void absorb(const Rat& v) {
    any = true;
    if (!floor || v < *floor) floor = v;
  }
  // saturated difference (zero to precision) contributes no finite floor
  void absorb_saturated() { any = true; }
};

inline std::optional<Rat> vp_sym_diff(const SymScalar& a, const SymScalar& b, long p) {
  SymScalar d = a - b;
  if (d.is_zero()) return std::nullopt;  // infinite
  if (!d.is_rational())
    throw std::domain_error("vp_expansion_diff: non-rational coefficient difference");
  return Rat(vp_rat(d.rational_value(), p));
}

}  // namespace detail

// Valuation floor of the normalized coefficient differences of two forms
// with rational coefficients.  Non-positive (harmonic-side) weights get the
// n^(1-k) normalization, which clears their built-in n^(1-k) denominators;
// positive-weight holomorphic forms are compared coefficientwise, which is
// the unnormalized sense of the classical congruences (an n-power of a
// p-divisible index would otherwise inject spurious negative valuations).
// Half-integral weights use the integer part of 1-k.
inline CongruenceReport vp_expansion_diff(const HarmonicQExp& f, const HarmonicQExp& g,
                                          long p, long range) {
  long r = std::min({range, f.trunc, g.trunc});
  CongruenceReport rep;
  rep.form_a = f.family;
  rep.form_b = g.family;
  rep.p = p;
  rep.checked_range = r;
  long ef = f.weight.twice > 0 ? 0 : 1 - f.weight.floor();
  long eg = g.weight.twice > 0 ? 0 : 1 - g.weight.floor();
  detail::FloorAcc plus, minus, consts;
  auto norm = [&](long n, long e) { return rat_pow(Rat(n), e); };
  for (long n = 1; n <= r; ++n) {
    SymScalar a = Rat(norm(n, ef)) * f.plus_at(n);
    SymScalar b = Rat(norm(n, eg)) * g.plus_at(n);
    if (a.is_zero() && b.is_zero()) continue;
    auto v = detail::vp_sym_diff(a, b, p);
    if (v)
      plus.absorb(*v);
    else
      plus.absorb_saturated();
  }
  for (long n = -1; n >= -r; --n) {
    SymScalar a = Rat(norm(n, ef)) * f.minus_at(n);
    SymScalar b = Rat(norm(n, eg)) * g.minus_at(n);
    if (a.is_zero() && b.is_zero()) continue;
    auto v = detail::vp_sym_diff(a, b, p);
    if (v)
      minus.absorb(*v);
    else
      minus.absorb_saturated();
  }
  for (auto vd : {detail::vp_sym_diff(f.plus_at(0), g.plus_at(0), p),
                  detail::vp_sym_diff(f.minus_zero, g.minus_zero, p)}) {
    if (vd)
      consts.absorb(*vd);
    else
      consts.absorb_saturated();
  }
  rep.plus_floor = plus.floor;
  rep.minus_floor = minus.floor;
  rep.const_floor = consts.floor;
  rep.pass = true;
  return rep;
}

// PadicQExp overload.  Coefficients are compared where their formal parts
// (i-power, surd) match; a mismatch of formal parts at an index with both
// sides nonzero is recorded as exceptional.  Integer-weight forms with
// non-positive weight get the n^(1-k) normalization, like the symbolic
// overload.
inline CongruenceReport vp_expansion_diff(const PadicQExp& f, const PadicQExp& g, long range) {
  if (f.p != g.p) throw std::domain_error("vp_expansion_diff: mixed primes");
  long r = std::min({range, f.trunc, g.trunc});
  CongruenceReport rep;
  rep.form_a = f.family;
  rep.form_b = g.family;
  rep.p = f.p;
  rep.checked_range = r;
  auto norm_exp = [](const PadicQExp& x) {
    return x.int_weight && *x.int_weight <= 0 ? 1 - *x.int_weight : 0L;
  };
  long ef = norm_exp(f), eg = norm_exp(g);
  detail::FloorAcc plus, minus, consts;
  auto compare = [&](detail::FloorAcc& acc, long n, const PadicCoeff& a, const PadicCoeff& b,
                     long ea, long eb) {
    if (a.is_zero() && b.is_zero()) return;
    if (!a.is_zero() && !b.is_zero() && (a.i_exp != b.i_exp || a.surd != b.surd)) {
      rep.exceptional.push_back(n);
      return;
    }
    PadicNum base = PadicNum::from_int(n == 0 ? 1 : n, f.p, f.prec + 4);
    auto [v, abs] = vp_diff(base.pow(ea) * a.num, base.pow(eb) * b.num);
    if (v)
      acc.absorb(Rat(*v));
    else
      acc.absorb_saturated();
  };
  for (long n = 1; n <= r; ++n) compare(plus, n, f.plus_at(n), g.plus_at(n), ef, eg);
  for (long n = -1; n >= -r; --n) compare(minus, n, f.minus_at(n), g.minus_at(n), ef, eg);
  compare(consts, 0, f.plus_at(0), g.plus_at(0), 0, 0);
  compare(consts, 0, f.minus_zero, g.minus_zero, 0, 0);
  rep.plus_floor = plus.floor;
  rep.minus_floor = minus.floor;
  rep.const_floor = consts.floor;
  rep.pass = rep.exceptional.empty();
  return rep;
}

// Weight-family congruence: for even k1 = k2 mod (p-1)p^(a-1), neither
// divisible by p-1, the p-stabilized Eisenstein series of weights k1, k2 are
// congruent mod p^a (constants included), and the harmonic counterparts
// G^(p)(z, -2k) with 2k+2 = k1, k2 satisfy the same congruence on their
// non-holomorphic n-indexed coefficients.  Constant terms of the harmonic
// pair are reported, not asserted: their 1/(2k+1) factor only obeys the
// weaker modulus v_p(k1-k2).
inline CongruenceReport family_congruence(long p, long k1, long k2, long a, long range) {
  if (a < 1) throw std::domain_error("family_congruence: a must be >= 1");
  if (k1 < 4 || k2 < 4 || k1 % 2 != 0 || k2 % 2 != 0)
    throw std::domain_error("family_congruence: weights must be even and >= 4");
  long mod = (p - 1) * to_long(ipow(p, a - 1));
  if ((k1 - k2) % mod != 0)
    throw std::domain_error("family_congruence: k1 != k2 mod (p-1)p^(a-1)");
  if (k1 % (p - 1) == 0 || k2 % (p - 1) == 0)
    throw std::domain_error("family_congruence: k1, k2 must not be divisible by p-1");

  CongruenceReport rep = vp_expansion_diff(eisenstein_p(k1, p, range),
                                           eisenstein_p(k2, p, range), p, range);
  rep.asserted_level = a;
  rep.pass = (!rep.plus_floor || *rep.plus_floor >= a) &&
             (!rep.const_floor || *rep.const_floor >= a);

  // Harmonic counterparts under the xi-correspondence: G(z,-2k) maps to the
  // weight 2k+2 Eisenstein series.
  long kg1 = k1 / 2 - 1, kg2 = k2 / 2 - 1;
  long prec = a + 6;
  PadicNum pref1 = (PadicNum::from_int(2, p, prec) * padic_pi(p, prec)).pow(-2 * kg1);
  PadicNum pref2 = (PadicNum::from_int(2, p, prec) * padic_pi(p, prec)).pow(-2 * kg2);
  long s1 = kg1 % 2 == 0 ? 1 : -1, s2 = kg2 % 2 == 0 ? 1 : -1;
  detail::FloorAcc minus_acc;
  if (s1 == s2) {
    for (long n = 1; n <= range; ++n) {
      // n^(1+2k)-normalized minus coefficients (sign common to both)
      PadicNum xa = pref1 * detail::sigma_p_mod(2 * kg1 + 1, n, p, prec);
      PadicNum xb = pref2 * detail::sigma_p_mod(2 * kg2 + 1, n, p, prec);
      auto [v, abs] = vp_diff(PadicNum::from_int(s1, p, prec) * xa,
                              PadicNum::from_int(s2, p, prec) * xb);
      if (v)
        minus_acc.absorb(Rat(*v));
      else
        minus_acc.absorb_saturated();
    }
    rep.minus_floor = minus_acc.floor;
    if (rep.minus_floor && *rep.minus_floor < a) rep.pass = false;
    rep.note = "harmonic counterparts G(z,-" + std::to_string(2 * kg1) + "), G(z,-" +
               std::to_string(2 * kg2) + "): non-holomorphic coefficients asserted; "
               "constant terms reported only (1/(2k+1) factor)";
  } else {
    rep.note = "harmonic counterpart comparison skipped: (-1)^k signs differ "
               "(weights not congruent mod 4)";
  }

  // Reported (not asserted): harmonic constant terms.
  PadicNum mz1 = PadicNum::from_rat(Rat(-s1) * rat_pow(Rat(2), 2 * kg1 + 1) *
                                        padic_zeta_neg(-2 * kg1 - 1, p) / Rat(2 * kg1 + 1),
                                    p, prec) *
                 padic_pi(p, prec);
  PadicNum mz2 = PadicNum::from_rat(Rat(-s2) * rat_pow(Rat(2), 2 * kg2 + 1) *
                                        padic_zeta_neg(-2 * kg2 - 1, p) / Rat(2 * kg2 + 1),
                                    p, prec) *
                 padic_pi(p, prec);
  auto [vc, absc] = vp_diff(mz1, mz2);
  if (vc) rep.note += "; harmonic y-part constants differ at v_p = " + std::to_string(*vc);
  return rep;
}

// ---- p-adic limit checker -------------------------------------------------

struct LimitReport {
  std::string family;
  long p = 0, depth = 0, range = 0;
  // Minimum difference valuation against the target, per step i = 1..depth.
  std::vector<Rat> plus_part, minus_part;   // n-indexed coefficients
  std::vector<Rat> plus_const, minus_const; // constant terms
  bool plus_const_pole = false;  // weight-0 target: zeta_p pole at s = 1
  bool pass = false;
  std::string note;
};

namespace detail {

// Strictly increasing, allowing saturation at the precision ceiling.
inline bool strictly_increasing(const std::vector<Rat>& v) {
  for (size_t i = 1; i < v.size(); ++i)
    if (!(v[i] > v[i - 1])) return false;
  return !v.empty();
}

}  // namespace detail

// G-family limit check at target weight -2k0 (k0 = 0 is the weight-0 target;
// its holomorphic constant hits the zeta_p pole and is reported, not
// asserted -- the analogue of E_2 failing to be modular).
inline LimitReport padic_limit_check_g(long k0, long p, long depth, long range, long prec) {
  if (k0 < 0) throw std::domain_error("padic_limit_check_g: k0 must be >= 0");
  if (p < 3) throw std::domain_error("padic_limit_check_g: p must be an odd prime");
  LimitReport rep;
  rep.family = "G";
  rep.p = p;
  rep.depth = depth;
  rep.range = range;

  long wp = prec + 4;
  PadicNum two_pi = PadicNum::from_int(2, p, wp) * padic_pi(p, wp);
  long branch_pos = ((1 - (2 * k0 + 1)) % (p - 1) + (p - 1)) % (p - 1);
  long branch_neg = (((2 * k0 + 2)) % (p - 1) + (p - 1)) % (p - 1);

  auto norm_sigma = [&](long k, long n) {  // (2 pi_p)^(-2k) sigma^(p)_(2k+1)(n)
    return two_pi.pow(-2 * k) * detail::sigma_p_mod(2 * k + 1, n, p, wp);
  };
  auto plus_const_at = [&](long k) {
    return detail::gamma_p_mod(2 * k + 1, p, wp) *
           padic_l(2 * k + 1, DirichletChar::teich(p, branch_pos), p, prec) *
           two_pi.pow(-2 * k);
  };
  auto minus_const_at = [&](long k) {
    long sk = k % 2 == 0 ? 1 : -1;
    return PadicNum::from_rat(Rat(-sk) * rat_pow(Rat(2), 2 * k + 1) / Rat(2 * k + 1), p, wp) *
           padic_pi(p, wp) *
           padic_l(-2 * k - 1, DirichletChar::teich(p, branch_neg), p, prec);
  };

  // Targets.  For k0 = 0 the sigma-part target is sigma^(p)_1 and the
  // holomorphic constant diverges (pole of zeta_p at s = 1).
  std::vector<PadicNum> sigma_target, gsigma_target;
  for (long n = 1; n <= range; ++n) {
    PadicNum t = norm_sigma(k0, n);
    sigma_target.push_back(t);
    gsigma_target.push_back(t * detail::gamma_p_mod(2 * k0 + 1, p, wp));
  }
  std::optional<PadicNum> plus_const_target, minus_const_target;
  if (k0 >= 1)
    plus_const_target = plus_const_at(k0);
  else
    rep.plus_const_pole = true;
  minus_const_target = minus_const_at(k0);

  auto absorb_min = [&](std::vector<Rat>& out, std::optional<Rat> acc) {
    out.push_back(acc.value_or(Rat(prec)));  // saturated: report the ceiling
  };

  for (long i = 1; i <= depth; ++i) {
    long ki = k0 + (p - 1) * to_long(ipow(p, i));
    detail::FloorAcc plus_acc, minus_acc;
    for (long n = 1; n <= range; ++n) {
      PadicNum mi = norm_sigma(ki, n);
      auto [vm, absm] = vp_diff(mi, sigma_target[n - 1]);
      if (vm)
        minus_acc.absorb(Rat(*vm));
      else
        minus_acc.absorb_saturated();
      PadicNum pi_n = mi * detail::gamma_p_mod(2 * ki + 1, p, wp);
      auto [vp_, absp] = vp_diff(pi_n, gsigma_target[n - 1]);
      if (vp_)
        plus_acc.absorb(Rat(*vp_));
      else
        plus_acc.absorb_saturated();
    }
    absorb_min(rep.minus_part, minus_acc.floor);
    absorb_min(rep.plus_part, plus_acc.floor);
    if (plus_const_target) {
      auto [v, abs] = vp_diff(plus_const_at(ki), *plus_const_target);
      rep.plus_const.push_back(v ? Rat(*v) : Rat(prec));
    }
    auto [v2, abs2] = vp_diff(minus_const_at(ki), *minus_const_target);
    rep.minus_const.push_back(v2 ? Rat(*v2) : Rat(prec));
  }

  rep.pass = detail::strictly_increasing(rep.minus_part) &&
             detail::strictly_increasing(rep.plus_part) &&
             detail::strictly_increasing(rep.minus_const) &&
             (rep.plus_const_pole || detail::strictly_increasing(rep.plus_const));
  if (rep.plus_const_pole)
    rep.note = "weight-0 target: holomorphic constant diverges (zeta_p pole at s = 1), "
               "reported and excluded from the assertion";
  return rep;
}

// H-family limit check at target weight -r0+1/2, on the non-holomorphic side
// (the holomorphic side of the half-integral family is governed by the
// p-adic-regulator expectation and is out of scope).
inline LimitReport padic_limit_check_h(long r0, long p, long depth, long range, long prec) {
  if (r0 < 1) throw std::domain_error("padic_limit_check_h: r0 must be >= 1");
  if (p < 3) throw std::domain_error("padic_limit_check_h: p must be an odd prime");
  LimitReport rep;
  rep.family = "H";
  rep.p = p;
  rep.depth = depth;
  rep.range = range;
  rep.note = "H family: non-holomorphic components only";

  long wp = prec + 4;
  long sign_r = r0 % 2 == 0 ? 1 : -1;  // constant along the sequence
  long branch = ((r0 + 1) % (p - 1) + (p - 1)) % (p - 1);

  // gammaRatio_p(r) = Gamma_p((r+a)/2) / (Gamma_p((r+1+a)/2) Gamma_p(r+1/2));
  // computed once per weight step (half-integer Gamma_p arguments are the
  // expensive evaluations).
  auto gamma_ratio_p = [&](long r) {
    long aa = r % 2 == 0 ? 1 : 0;
    return padic_gamma_int_or_half(Rat(r + aa, 2), p, wp) /
           (padic_gamma_int_or_half(Rat(r + 1 + aa, 2), p, wp) * padic_gamma_int_or_half(Rat(2 * r + 1, 2), p, wp));
  };
  // |N|^(r+1/2)-normalized minus coefficient, phase and surd stripped:
  // pi_p^(3/2) L_p(-r, chi_D omega^(r+1)) T^(p)_(r+1)(v) gammaRatio_p(r).
  auto norm_minus = [&](long r, long D, long v, const PadicNum& gr) {
    return padic_pi_half_pow(3, p, wp) *
           padic_l(-r, DirichletChar::product(D, p, branch), p, prec) *
           detail::t_chi_p_mod(r + 1, D, v, p, wp) * gr;
  };
  auto minus_const_at = [&](long r) {
    return PadicNum::from_rat(rat_pow(Rat(2), 2 * r + 4) / Rat(2 * r - 3), p, wp) *
           padic_pi(p, wp).pow(2 * r + 1) *
           padic_l(-1 - 2 * r, DirichletChar::teich(p, (2 * r + 2) % (p - 1)), p, prec) /
           detail::gamma_p_mod(2 * r + 1, p, wp);
  };

  std::vector<std::pair<long, DiscDecomp>> admissible;
  for (long N = -1; N >= -range; --N) {
    auto dd = decompose_disc(sign_r * N);
    if (dd) admissible.emplace_back(N, *dd);
  }
  std::vector<PadicNum> target;
  PadicNum gr0 = gamma_ratio_p(r0);
  for (auto& [N, dd] : admissible) target.push_back(norm_minus(r0, dd.D, dd.v, gr0));
  PadicNum mc_target = minus_const_at(r0);

  for (long i = 1; i <= depth; ++i) {
    long ri = r0 + (p - 1) * to_long(ipow(p, i));
    PadicNum gri = gamma_ratio_p(ri);
    detail::FloorAcc acc;
    for (size_t j = 0; j < admissible.size(); ++j) {
      auto& [N, dd] = admissible[j];
      auto [v, abs] = vp_diff(norm_minus(ri, dd.D, dd.v, gri), target[j]);
      if (v)
        acc.absorb(Rat(*v));
      else
        acc.absorb_saturated();
    }
    rep.minus_part.push_back(acc.floor.value_or(Rat(prec)));
    auto [vc, absc] = vp_diff(minus_const_at(ri), mc_target);
    rep.minus_const.push_back(vc ? Rat(*vc) : Rat(prec));
  }
  rep.pass = detail::strictly_increasing(rep.minus_part) &&
             detail::strictly_increasing(rep.minus_const);
  return rep;
}

// The weight-0 limit is the xi_0-preimage of the weight-2 p-adic Eisenstein
// series: the xi-image coefficient ratios must match sigma^(p)_1(n) ratios.
inline bool xi_serre_check(long p, long depth, long range) {
  long prec = depth + 6;
  PadicNum two_pi = PadicNum::from_int(2, p, prec) * padic_pi(p, prec);
  long kd = (p - 1) * to_long(ipow(p, depth));
  // xi-image coefficient at n (up to one global constant): the normalized
  // minus coefficient of the weight-0 limit object, evaluated at step depth.
  std::vector<PadicNum> image, serre;
  for (long n = 1; n <= range; ++n) {
    image.push_back(two_pi.pow(-2 * kd) * detail::sigma_p_mod(2 * kd + 1, n, p, prec));
    serre.push_back(detail::sigma_p_mod(1, n, p, prec));
  }
  // cross-ratio test: image_n serre_m = image_m serre_n mod p^depth
  for (long n = 1; n <= range; ++n)
    for (long m = n + 1; m <= range; ++m) {
      auto [v, abs] = vp_diff(image[n - 1] * serre[m - 1], image[m - 1] * serre[n - 1]);
      if (v && *v < depth) return false;
    }
  return true;
}

}  // namespace maasslab
