#pragma once

// Finite-precision p-adic numbers, the Teichmueller character, and the
// p-adic Gamma function Gamma^(p)(n) = (-1)^n prod_{0<j<n, p!|j} j extended
// to Z_p by continuity.  Precision is tracked pessimistically: a value
// carries (valuation, unit digits, significant-digit count) and every
// operation propagates the weakest guarantee.

#include <maasslab/arith.hpp>
#include <maasslab/bernoulli.hpp>
#include <maasslab/rat.hpp>

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace maasslab {

namespace detail {

inline Int mod_inverse(const Int& a, const Int& m) {
  // extended Euclid
  Int r0 = m, r1 = ((a % m) + m) % m, t0 = 0, t1 = 1;
  while (r1 != 0) {
    Int q = r0 / r1;
    Int r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
    Int t2 = t0 - q * t1;
    t0 = t1;
    t1 = t2;
  }
  if (r0 != 1) throw std::domain_error("mod_inverse: not invertible");
  return ((t0 % m) + m) % m;
}

}  // namespace detail

class PadicNum {
 public:
  // Exact zero.
  static PadicNum zero(long p) {
    PadicNum x(p);
    x.state_ = State::ExactZero;
    return x;
  }

  // A value known only to vanish modulo p^abs_prec (written O(p^abs_prec)).
  static PadicNum zero_to_prec(long p, long abs_prec) {
    PadicNum x(p);
    x.state_ = State::ZeroToPrec;
    x.val_ = abs_prec;
    return x;
  }

  static PadicNum from_int(const Int& n, long p, long prec) {
    if (n == 0) return zero(p);
    PadicNum x(p);
    x.state_ = State::Nonzero;
    x.prec_ = prec;
    x.val_ = vp_int(n, p);
    Int u = n / ipow(p, x.val_);
    Int m = ipow(p, prec);
    x.unit_ = ((u % m) + m) % m;
    return x;
  }

  static PadicNum from_rat(const Rat& r, long p, long prec) {
    if (r == 0) return zero(p);
    Int num = boost::multiprecision::numerator(r);
    Int den = boost::multiprecision::denominator(r);
    long vn = vp_int(num, p), vd = vp_int(den, p);
    PadicNum x(p);
    x.state_ = State::Nonzero;
    x.prec_ = prec;
    x.val_ = vn - vd;
    Int m = ipow(p, prec);
    Int un = ((num / ipow(p, vn)) % m + m) % m;
    Int ud = ((den / ipow(p, vd)) % m + m) % m;
    x.unit_ = un * detail::mod_inverse(ud, m) % m;
    return x;
  }

  long p() const { return p_; }
  bool is_exact_zero() const { return state_ == State::ExactZero; }
  bool is_zero_to_prec() const { return state_ == State::ZeroToPrec; }
  bool is_nonzero() const { return state_ == State::Nonzero; }

  // Valuation of a value known to be nonzero.
  long valuation() const {
    if (state_ != State::Nonzero) throw std::domain_error("valuation: value is zero to precision");
    return val_;
  }
  // Absolute precision: the value is pinned modulo p^abs_precision().
  long abs_precision() const {
    switch (state_) {
      case State::ExactZero: return kInfinitePrec;
      case State::ZeroToPrec: return val_;
      default: return val_ + prec_;
    }
  }
  long precision() const {
    if (state_ != State::Nonzero) throw std::domain_error("precision: zero value");
    return prec_;
  }
  const Int& unit() const {
    if (state_ != State::Nonzero) throw std::domain_error("unit: zero value");
    return unit_;
  }

  std::vector<long> digits() const {
    if (state_ != State::Nonzero) return {};
    std::vector<long> d;
    Int u = unit_;
    for (long j = 0; j < prec_; ++j) {
      d.push_back(static_cast<long>(u % p_));
      u /= p_;
    }
    return d;
  }

  PadicNum truncated(long new_prec) const {
    if (state_ != State::Nonzero) return *this;
    if (new_prec >= prec_) return *this;
    if (new_prec <= 0) return zero_to_prec(p_, val_);
    PadicNum x = *this;
    x.prec_ = new_prec;
    x.unit_ %= ipow(p_, new_prec);
    if (x.unit_ == 0)  // all retained digits were zero: cannot happen for a
      throw std::logic_error("truncated: unit lost");  // normalized unit
    return x;
  }

  friend PadicNum operator-(const PadicNum& a) {
    if (a.state_ != State::Nonzero) return a;
    PadicNum x = a;
    Int m = ipow(a.p_, a.prec_);
    x.unit_ = (m - a.unit_) % m;
    return x;
  }

  friend PadicNum operator+(const PadicNum& a, const PadicNum& b) {
    a.check_same(b);
    if (a.state_ == State::ExactZero) return b;
    if (b.state_ == State::ExactZero) return a;
    long abs = std::min(a.abs_precision(), b.abs_precision());
    if (a.state_ == State::ZeroToPrec && b.state_ == State::ZeroToPrec)
      return zero_to_prec(a.p_, abs);
    // Work with residues scaled by p^-base so they are integral even for
    // negative valuations.
    long base = abs;
    if (a.state_ == State::Nonzero) base = std::min(base, a.val_);
    if (b.state_ == State::Nonzero) base = std::min(base, b.val_);
    if (abs <= base) return zero_to_prec(a.p_, abs);
    Int m = ipow(a.p_, abs - base);
    Int s = (a.scaled_residue(base, abs) + b.scaled_residue(base, abs)) % m;
    if (s == 0) return zero_to_prec(a.p_, abs);
    PadicNum x(a.p_);
    x.state_ = State::Nonzero;
    long v = vp_int(s, a.p_);
    x.val_ = base + v;
    x.prec_ = abs - x.val_;
    x.unit_ = s / ipow(a.p_, v);
    return x;
  }
  friend PadicNum operator-(const PadicNum& a, const PadicNum& b) { return a + (-b); }

  friend PadicNum operator*(const PadicNum& a, const PadicNum& b) {
    a.check_same(b);
    if (a.state_ == State::ExactZero || b.state_ == State::ExactZero)
      return zero(a.p_);
    if (a.state_ == State::ZeroToPrec || b.state_ == State::ZeroToPrec) {
      // O(p^A) * x = O(p^(A + v(x))); val_ holds A resp. v(x) in either state.
      return zero_to_prec(a.p_, a.val_ + b.val_);
    }
    PadicNum x(a.p_);
    x.state_ = State::Nonzero;
    x.val_ = a.val_ + b.val_;
    x.prec_ = std::min(a.prec_, b.prec_);
    Int m = ipow(a.p_, x.prec_);
    x.unit_ = a.unit_ % m * (b.unit_ % m) % m;
    return x;
  }

  friend PadicNum operator/(const PadicNum& a, const PadicNum& b) {
    a.check_same(b);
    if (b.state_ != State::Nonzero)
      throw std::domain_error("PadicNum: division by (possible) zero");
    if (a.state_ == State::ExactZero) return a;
    if (a.state_ == State::ZeroToPrec) return zero_to_prec(a.p_, a.val_ - b.val_);
    PadicNum x(a.p_);
    x.state_ = State::Nonzero;
    x.val_ = a.val_ - b.val_;
    x.prec_ = std::min(a.prec_, b.prec_);
    Int m = ipow(a.p_, x.prec_);
    x.unit_ = a.unit_ % m * detail::mod_inverse(b.unit_ % m, m) % m;
    return x;
  }

  PadicNum& operator+=(const PadicNum& b) { return *this = *this + b; }
  PadicNum& operator-=(const PadicNum& b) { return *this = *this - b; }
  PadicNum& operator*=(const PadicNum& b) { return *this = *this * b; }
  PadicNum& operator/=(const PadicNum& b) { return *this = *this / b; }

  PadicNum pow(long e) const {
    if (e == 0) return from_int(1, p_, state_ == State::Nonzero ? prec_ : kDefaultPrec);
    PadicNum base = *this;
    if (e < 0) {
      base = from_int(1, p_, base.prec_) / base;
      e = -e;
    }
    PadicNum r = from_int(1, p_, base.state_ == State::Nonzero ? base.prec_ : kDefaultPrec);
    while (e > 0) {
      if (e & 1) r *= base;
      base *= base;
      e >>= 1;
    }
    return r;
  }

  // Valuation of (a - b); empty when the difference vanishes to the joint
  // precision (second element reports that absolute precision).
  friend std::pair<std::optional<long>, long> vp_diff(const PadicNum& a, const PadicNum& b) {
    PadicNum d = a - b;
    if (d.is_nonzero()) return {d.val_, d.abs_precision()};
    return {std::nullopt, d.abs_precision()};
  }

  std::string str() const {
    if (state_ == State::ExactZero) return "0";
    if (state_ == State::ZeroToPrec) return "O(" + std::to_string(p_) + "^" + std::to_string(val_) + ")";
    std::string s = "O(" + std::to_string(p_) + "^" + std::to_string(val_) + ")*(";
    auto d = digits();
    bool first = true;
    for (size_t j = 0; j < d.size(); ++j) {
      if (d[j] == 0) continue;
      if (!first) s += " + ";
      first = false;
      s += std::to_string(d[j]);
      if (j == 1) s += "*" + std::to_string(p_);
      if (j > 1) s += "*" + std::to_string(p_) + "^" + std::to_string(j);
    }
    return s + ")";
  }

  static constexpr long kInfinitePrec = 1L << 40;
  static constexpr long kDefaultPrec = 10;

 private:
  explicit PadicNum(long p) : p_(p) {
    if (p < 2) throw std::domain_error("PadicNum: p must be prime");
  }

  enum class State { ExactZero, ZeroToPrec, Nonzero };

  void check_same(const PadicNum& b) const {
    if (p_ != b.p_) throw std::domain_error("PadicNum: mixed primes");
  }

  // (value * p^-base) mod p^(abs-base); requires base <= valuation.
  Int scaled_residue(long base, long abs) const {
    if (state_ != State::Nonzero) return 0;
    if (abs <= val_) return 0;
    Int m = ipow(p_, abs - base);
    return unit_ % ipow(p_, abs - val_) * ipow(p_, val_ - base) % m;
  }

  long p_ = 2;
  State state_ = State::ExactZero;
  long val_ = 0;   // valuation (Nonzero) or absolute precision (ZeroToPrec)
  Int unit_ = 0;   // unit part mod p^prec_, normalized to [1, p^prec_)
  long prec_ = 0;  // significant digits
};

// omega(a): the (p-1)-th root of unity congruent to a mod p, by iterated
// p-th powering (p odd); for p = 2 it is the sign character mod 4.
inline PadicNum teichmuller(long long a, long p, long prec) {
  if (a % p == 0) throw std::domain_error("teichmuller: p divides a");
  if (p == 2) {
    long r = static_cast<long>(((a % 4) + 4) % 4);
    return PadicNum::from_int(r == 1 ? 1 : -1, 2, prec);
  }
  Int m = ipow(p, prec);
  Int x = ((Int(a) % m) + m) % m;
  for (long it = 0; it < prec + 2; ++it) {
    Int next = boost::multiprecision::powm(x, Int(p), m);
    if (next == x) break;
    x = next;
  }
  return PadicNum::from_int(x, p, prec);
}

// Gamma^(p)(n) = (-1)^n prod_{0<j<n, p !| j} j, exactly.
inline Int padic_gamma_int(long n, long p) {
  if (n < 1) throw std::domain_error("padic_gamma_int: n must be positive");
  Int prod = 1;
  for (long j = 1; j < n; ++j)
    if (j % p != 0) prod *= j;
  return n % 2 == 0 ? prod : -prod;
}

namespace detail {

// prod_{0<j<=T, p !| j} j mod `mod`, with a 64-bit fast path.
inline Int unit_product_mod(long long T, long p, const Int& mod) {
  if (mod <= Int(std::int64_t(1) << 62)) {
    unsigned long long m = static_cast<unsigned long long>(mod);
    unsigned long long prod = 1 % m;
    for (long long j = 1; j <= T; ++j) {
      if (j % p == 0) continue;
      prod = static_cast<unsigned long long>(
          (static_cast<unsigned __int128>(prod) * (j % m)) % m);
    }
    return Int(prod);
  }
  Int prod = 1;
  for (long long j = 1; j <= T; ++j) {
    if (j % p == 0) continue;
    prod = prod * j % mod;
  }
  return prod;
}

}  // namespace detail

// Gamma^(p) on Z_p by the limit over integers n_m = (least positive integer
// congruent to x mod p^m), m = 1..prec+2.  Successive approximants must agree
// mod p^(m-1); the stabilized value is returned with `prec` digits.
//
// x is a rational in Z_p (denominator prime to p).  The approximants for
// m <= prec are read off one ascending prefix product; the two confirmation
// steps beyond prec reuse the same prefix through the full-block congruence
// prod_{j in a block of p^K consecutive units} j = -1 (+1 for p = 2, K >= 3).
inline PadicNum padic_gamma(const Rat& x, long p, long prec) {
  static std::map<std::tuple<long, long, Rat>, PadicNum> cache;
  static std::mutex mu;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({p, prec, x});
    if (it != cache.end()) return it->second;
  }

  Int num = boost::multiprecision::numerator(x);
  Int den = boost::multiprecision::denominator(x);
  if (den % p == 0) throw std::domain_error("padic_gamma: x not in Z_p");
  long K = prec;
  Int modK = ipow(p, K);

  auto least_positive = [&](long m) -> Int {
    Int pm = ipow(p, m);
    Int r = (((num % pm) + pm) % pm) *
            detail::mod_inverse(((den % pm) + pm) % pm, pm) % pm;
    return r == 0 ? pm : r;
  };

  std::vector<Int> n(K + 3);
  for (long m = 1; m <= K + 2; ++m) n[m] = least_positive(m);
  if (n[K] > Int(300000000))
    throw resource_error("padic_gamma: iteration budget exceeded at this precision");
  long long nK = static_cast<long long>(n[K]);

  // Ascending prefix pass with snapshots at each n_m.
  std::vector<Int> approx(K + 1);
  {
    unsigned long long m64 = 0;
    bool fast = modK <= Int(std::int64_t(1) << 62);
    if (fast) m64 = static_cast<unsigned long long>(modK);
    unsigned long long prod64 = 1;
    Int prod = 1;
    long next = 1;
    for (long long j = 0; j <= nK - 1; ++j) {
      if (j > 0 && j % p != 0) {
        if (fast)
          prod64 = static_cast<unsigned long long>(
              (static_cast<unsigned __int128>(prod64) * (j % m64)) % m64);
        else
          prod = prod * j % modK;
      }
      while (next <= K && Int(j) == n[next] - 1) {
        Int v = fast ? Int(prod64) : prod;
        if (n[next] % 2 != 0) v = (modK - v) % modK;  // sign (-1)^n
        approx[next] = v;
        ++next;
      }
    }
  }

  // Stabilization: consecutive approximants agree mod p^(m-1).
  for (long m = 2; m <= K; ++m) {
    Int pm = ipow(p, m - 1);
    if ((approx[m] - approx[m - 1]) % pm != 0)
      throw resource_error("padic_gamma: approximants failed to stabilize");
  }
  // Confirmation steps prec+1, prec+2 via the block congruence.
  Int eps_block = (p == 2 && K >= 3) ? 1 : -1;
  for (long m = K + 1; m <= K + 2; ++m) {
    Int q = (n[m] - n[K]) / modK;
    Int v = approx[K];
    bool flip = false;
    if ((n[m] - n[K]) % 2 != 0) flip = !flip;          // sign (-1)^(n_m - n_K)
    if (eps_block == -1 && q % 2 != 0) flip = !flip;   // one -1 per full block
    Int vm = flip ? (modK - v) % modK : v;
    if ((vm - approx[K]) % modK != 0)
      throw resource_error("padic_gamma: confirmation step failed");
  }

  PadicNum out = PadicNum::from_int(approx[K], p, prec);
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(std::make_tuple(p, prec, x), out);
  return out;
}

inline PadicNum padic_gamma(const PadicNum& x, long prec) {
  if (!x.is_nonzero()) {
    if (x.is_exact_zero()) return padic_gamma(Rat(0), x.p(), prec);
    throw std::domain_error("padic_gamma: argument known only to precision");
  }
  if (x.valuation() < 0) throw std::domain_error("padic_gamma: x not in Z_p");
  Rat r = Rat(x.unit() * ipow(x.p(), x.valuation()));
  long usable = std::min(prec, x.abs_precision());
  return padic_gamma(r, x.p(), usable);
}

// Gamma^(p)(1/2).  By the reflection formula Gamma_p(1/2)^2 = (-1)^((p+1)/2),
// so the value is exactly a 4th root of unity: it is computed by the limit
// schedule at a bootstrap precision and then lifted exactly through its
// Teichmueller representative (the lift is checked against the bootstrap).
inline PadicNum padic_gamma_half(long p, long prec) {
  if (p == 2) throw std::domain_error("padic_gamma_half: p must be odd");
  long boot = std::min<long>(prec, 6);
  PadicNum g = padic_gamma(Rat(1, 2), p, boot);
  long r = static_cast<long>(g.unit() % p);
  PadicNum lift = teichmuller(r, p, std::max(prec, boot));
  auto d = lift - g;
  if (d.is_nonzero() && d.valuation() < boot)
    throw std::logic_error("padic_gamma_half: lift disagrees with the limit value");
  PadicNum sq = lift * lift;
  PadicNum expect = PadicNum::from_int((p + 1) / 2 % 2 == 0 ? 1 : -1, p, prec);
  auto d2 = sq - expect;
  if (d2.is_nonzero()) throw std::logic_error("padic_gamma_half: reflection identity failed");
  return lift;
}

// Gamma^(p)(m + 1/2) for m >= 0 by the functional equation
// Gamma_p(x+1) = -x Gamma_p(x) (|x|_p = 1), -Gamma_p(x) (p | x).
inline PadicNum padic_gamma_half_plus(long m, long p, long prec) {
  PadicNum g = padic_gamma_half(p, prec + 2);
  for (long j = 0; j < m; ++j) {
    Rat x(2 * j + 1, 2);
    if (vp_rat(x, p) == 0)
      g *= PadicNum::from_rat(-x, p, prec + 2);
    else
      g = -g;
  }
  return g.truncated(prec);
}

// Dispatch for arguments with denominator 1 or 2 (all Gamma^(p) uses here).
inline PadicNum padic_gamma_int_or_half(const Rat& x, long p, long prec) {
  Int den = boost::multiprecision::denominator(x);
  if (den == 1) return padic_gamma(x, p, prec);
  if (den == 2 && x > 0) {
    Int m2 = boost::multiprecision::numerator(x) / 2;  // x = m + 1/2
    return padic_gamma_half_plus(to_long(m2), p, prec);
  }
  return padic_gamma(x, p, prec);
}

// pi^(p) := Gamma^(p)(1/2)^2; odd half-powers use Gamma^(p)(1/2) itself.
inline PadicNum padic_pi(long p, long prec) {
  PadicNum g = padic_gamma_half(p, prec);
  return g * g;
}

inline PadicNum padic_pi_half_pow(long e, long p, long prec) {
  return padic_gamma_half(p, prec).pow(e);
}

// Diagnostic: computed v_p(Gamma^(p)(x)) at sample points together with
// v_p(pi^(p)).  Reported, never assumed: the product of units is a unit, so
// the computed valuations are 0.
struct GammaValReport {
  long p = 0;
  std::vector<std::pair<std::string, long>> gamma_valuations;
  long pi_valuation = 0;
};

inline GammaValReport gamma_valuation_report(long p, long prec) {
  GammaValReport rep;
  rep.p = p;
  for (const Rat& x : {Rat(1), Rat(2), Rat(3), Rat(7), Rat(1, 2), Rat(3, 2), Rat(5, 2)}) {
    PadicNum g = padic_gamma_int_or_half(x, p, prec);
    rep.gamma_valuations.emplace_back(rat_str(x), g.valuation());
  }
  rep.pi_valuation = padic_pi(p, prec).valuation();
  return rep;
}

// zeta^(p)(1-2k) = (1 - p^(2k-1)) zeta(1-2k), exactly.
inline Rat padic_zeta_neg(long m, long p) {
  Rat z = zeta_neg(m);  // validates m = 1-2k
  long k2 = 1 - m;
  return (Rat(1) - rat_pow(Rat(p), k2 - 1)) * z;
}

// A point of the weight space X = Z_p x Z/(p-1).
struct PadicWeight {
  PadicNum s_component;
  long residue = 0;  // mod p-1

  static PadicWeight from_integer(long w, long p, long prec) {
    long q = p == 2 ? 1 : p - 1;
    return PadicWeight{PadicNum::from_int(w, p, prec), ((w % q) + q) % q};
  }
};

}  // namespace maasslab

