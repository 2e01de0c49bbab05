#pragma once

// Kubota-Leopoldt p-adic L-functions.
//
// Evaluation uses the convergent expansion (Washington, Thm 5.11): for chi of
// conductor f and F any common multiple of f and q0 (q0 = p odd, 4 for p=2),
//
//   L_p(s, chi) = 1/(s-1) * 1/F * sum_{a=1, p!|a}^{F} chi(a) <a>^(1-s)
//                   * sum_{j>=0} binom(1-s, j) (F/a)^j B_j ,
//
// with <a> = a/omega(a).  At s = 1-n this reproduces
//   L_p(1-n, chi) = -(1 - chi.omega^-n(p) p^(n-1)) B(n, chi.omega^-n)/n,
// which is also implemented directly (gen_bernoulli_padic) as the
// independent check route.

#include <maasslab/bernoulli.hpp>
#include <maasslab/padic.hpp>

#include <numeric>
#include <vector>

namespace maasslab {

// Full character value chi(a) as a p-adic number (Kronecker part times
// omega^j), zero on non-units of the conductor.
inline PadicNum char_value_padic(const DirichletChar& chi, long long a, long p, long prec) {
  long f = chi.conductor();
  if (std::gcd<long long>(a, f) != 1) return PadicNum::zero(p);
  if (chi.has_teich() && chi.p != p)
    throw std::domain_error("char_value_padic: Teichmueller prime mismatch");
  if (a % p == 0 && chi.has_teich()) return PadicNum::zero(p);
  PadicNum v = PadicNum::from_int(chi.kron_value(a), p, prec);
  if (chi.has_teich()) v *= teichmuller(a, p, prec).pow(chi.teich_j);
  return v;
}

// chi * omega^j (exponent composition mod p-1).
inline DirichletChar twist_by_teich(const DirichletChar& chi, long p, long j) {
  if (chi.has_teich() && chi.p != p)
    throw std::domain_error("twist_by_teich: prime mismatch");
  long base = chi.has_teich() ? chi.teich_j : 0;
  long D = chi.has_kronecker() ? chi.D : 1;
  return DirichletChar::product(D, p, base + j);
}

// B(n, chi) by the finite Bernoulli-polynomial sum, for characters carrying
// a Teichmueller factor (value lands in Z_p).
inline PadicNum gen_bernoulli_padic(long n, const DirichletChar& chi, long p, long prec) {
  if (n <= 0) throw std::domain_error("gen_bernoulli_padic: n must be positive");
  if (!chi.has_teich())
    return PadicNum::from_rat(gen_bernoulli(n, chi), p, prec);
  long f = chi.conductor();
  long wprec = prec + 4;
  PadicNum s = PadicNum::zero(p);
  for (long a = 1; a <= f; ++a) {
    PadicNum cv = char_value_padic(chi, a, p, wprec);
    if (!cv.is_nonzero()) continue;
    s += cv * PadicNum::from_rat(bernoulli_poly(n, Rat(a, f)), p, wprec);
  }
  return (PadicNum::from_rat(rat_pow(Rat(f), n - 1), p, wprec) * s).truncated(prec);
}

// The right side of the interpolation formula at s = 1-n:
//   -(1 - chi.omega^-n(p) p^(n-1)) B(n, chi.omega^-n) / n.
inline PadicNum padic_l_interpolation(long n, const DirichletChar& chi, long p, long prec) {
  if (n < 1) throw std::domain_error("padic_l_interpolation: n must be >= 1");
  DirichletChar tw = twist_by_teich(chi, p, -n);
  long wprec = prec + 4;
  PadicNum euler = PadicNum::from_int(1, p, wprec);
  if (!tw.has_teich()) {
    // conductor prime to p: the Euler factor survives
    long chip = tw.kron_value(p);
    if (chip != 0)
      euler -= PadicNum::from_rat(Rat(chip) * rat_pow(Rat(p), n - 1), p, wprec);
  }
  PadicNum b = gen_bernoulli_padic(n, tw, p, wprec);
  PadicNum r = euler * b / PadicNum::from_int(n, p, wprec);
  return (-r).truncated(prec);
}

// L_p(s, chi) for s in Z_p.  Throws pole_error at s = 1 on the trivial
// branch, with residue 1 - 1/p.
inline PadicNum padic_l(const PadicNum& s, const DirichletChar& chi, long p, long prec) {
  if (chi.has_teich() && chi.p != p)
    throw std::domain_error("padic_l: character prime mismatch");
  PadicNum one = PadicNum::from_int(1, p, prec + 8);
  PadicNum sm1 = s - one;
  if (!sm1.is_nonzero()) {
    if (chi.is_trivial())
      throw pole_error("padic_l: pole at s = 1", Rat(p - 1, p));
    throw resource_error("padic_l: s - 1 vanishes to working precision");
  }

  long q0 = p == 2 ? 4 : p;
  long F = std::lcm(chi.conductor(), q0);
  long loss = sm1.valuation() + 1;  // digits lost dividing by (s-1) and F
  long wprec = prec + 6 + std::max(0L, loss);

  // binom(1-s, j) for j = 0..J.
  long unit_gap = p == 2 ? 2 : 1;  // v(<a> - 1) and v(F/a) are >= unit_gap
  long J = 8;
  {
    // smallest J with guaranteed tail below p^-(wprec+2) in both series:
    // term_j has valuation >= J*unit_gap - v_p(J!) - 1.
    auto vfact = [&](long j) {
      long v = 0;
      for (long q = p; q <= j; q *= p) v += j / q;
      return v;
    };
    while (J * unit_gap - vfact(J) - 1 < wprec + 2) ++J;
  }
  PadicNum onew = PadicNum::from_int(1, p, wprec + 4);
  PadicNum one_minus_s = onew - s;
  std::vector<PadicNum> binom(J + 1, onew);
  for (long j = 1; j <= J; ++j)
    binom[j] = binom[j - 1] * (one_minus_s - PadicNum::from_int(j - 1, p, wprec + 4)) /
               PadicNum::from_int(j, p, wprec + 4);

  PadicNum acc = PadicNum::zero(p);
  for (long a = 1; a <= F; ++a) {
    if (a % p == 0) continue;
    PadicNum chiv = char_value_padic(chi, a, p, wprec + 4);
    if (!chiv.is_nonzero()) continue;
    PadicNum omega_inv = teichmuller(a, p, wprec + 4).pow(-1);
    PadicNum proj = PadicNum::from_int(a, p, wprec + 4) * omega_inv;  // <a>
    PadicNum u = proj - onew;                                         // v >= unit_gap
    // <a>^(1-s) = sum_j binom(1-s, j) u^j
    PadicNum apow = PadicNum::zero(p);
    PadicNum upow = onew;
    for (long j = 0; j <= J; ++j) {
      apow += binom[j] * upow;
      upow *= u;
    }
    // sum_j binom(1-s, j) (F/a)^j B_j
    PadicNum bsum = PadicNum::zero(p);
    PadicNum fpow = onew;
    PadicNum fa = PadicNum::from_rat(Rat(F, a), p, wprec + 4);
    for (long j = 0; j <= J; ++j) {
      if (!(j > 1 && j % 2 != 0))  // odd Bernoulli numbers vanish
        bsum += binom[j] * fpow * PadicNum::from_rat(bernoulli(j), p, wprec + 4);
      fpow *= fa;
    }
    acc += chiv * apow * bsum;
  }
  PadicNum res = acc / sm1 / PadicNum::from_int(F, p, wprec + 4);
  if (!res.is_nonzero()) return res;  // zero to (comfortable) precision
  if (res.precision() < prec)
    throw resource_error("padic_l: requested precision not reached");
  return res.truncated(prec);
}

inline PadicNum padic_l(long s, const DirichletChar& chi, long p, long prec) {
  return padic_l(PadicNum::from_int(s, p, prec + 10), chi, p, prec);
}

// zeta^(p)(s0) for an integer argument s0, on the omega-branch that
// interpolates the zeta values at negative integers adjacent to s0:
// L_p(s0, omega^j) with j = (1 - s0) mod (p-1).
inline PadicNum padic_zeta_at(long s0, long p, long prec) {
  long j = ((1 - s0) % (p - 1) + (p - 1)) % (p - 1);
  return padic_l(s0, DirichletChar::teich(p, j), p, prec);
}

// Classical Kummer congruence: for n = m mod (p-1)p^a with
// (p-1) !| n, m, checks v_p((1-p^(n-1))B_n/n - (1-p^(m-1))B_m/m) >= a+1.
// Exact rational arithmetic.
inline bool kummer_check(long p, long n, long m, long a) {
  if (p < 3) throw std::domain_error("kummer_check: p must be an odd prime");
  if (a < 0) throw std::domain_error("kummer_check: a must be >= 0");
  long mod = (p - 1) * to_long(ipow(p, a));
  if (((n - m) % mod) != 0)
    throw std::domain_error("kummer_check: n != m mod (p-1)p^a");
  if (n % (p - 1) == 0 || m % (p - 1) == 0)
    throw std::domain_error("kummer_check: n, m must not be divisible by p-1");
  if (n < 1 || m < 1) throw std::domain_error("kummer_check: n, m must be positive");
  auto side = [&](long t) {
    return (Rat(1) - rat_pow(Rat(p), t - 1)) * bernoulli(t) / Rat(t);
  };
  Rat diff = side(n) - side(m);
  if (diff == 0) return true;
  return vp_rat(diff, p) >= a + 1;
}

// Twisted Kummer congruence: chi nontrivial primitive with
// conductor prime to p; n = m mod p^a implies the generalized-Bernoulli
// expressions agree mod p^(a+1).
inline bool gen_kummer_check(long p, const DirichletChar& chi, long n, long m, long a) {
  if (chi.is_trivial()) throw std::domain_error("gen_kummer_check: chi must be nontrivial");
  if (chi.has_teich()) throw std::domain_error("gen_kummer_check: chi must have conductor prime to p");
  if (chi.conductor() % p == 0)
    throw std::domain_error("gen_kummer_check: conductor divisible by p");
  if (n < 1 || m < 1) throw std::domain_error("gen_kummer_check: n, m must be positive");
  if ((n - m) % to_long(ipow(p, a)) != 0)
    throw std::domain_error("gen_kummer_check: n != m mod p^a");
  long prec = a + 4;  // two guard digits beyond the asserted level
  PadicNum lhs = padic_l_interpolation(n, chi, p, prec);
  PadicNum rhs = padic_l_interpolation(m, chi, p, prec);
  auto [v, abs] = vp_diff(lhs, rhs);
  if (!v.has_value()) {
    if (abs < a + 1) throw resource_error("gen_kummer_check: insufficient precision");
    return true;
  }
  return *v >= a + 1;
}

}  // namespace maasslab
