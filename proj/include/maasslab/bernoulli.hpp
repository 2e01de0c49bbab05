#pragma once

// Bernoulli numbers and polynomials, generalized Bernoulli numbers, and the
// exact values of zeta / Dirichlet L-functions at non-positive integers,
// together with the Cohen coefficient function built from them.
//
// Convention: B_1 = -1/2, so that zeta(0) = -1/2 and the finite
// Bernoulli-polynomial sum below matches the generating function
//   sum_a chi(a) t e^{at} / (e^{ft} - 1).

#include <maasslab/arith.hpp>
#include <maasslab/rat.hpp>

#include <fstream>
#include <mutex>
#include <numeric>
#include <vector>

namespace maasslab {

namespace detail {

struct BernoulliCache {
  std::vector<Rat> values{Rat(1), Rat(-1, 2)};
  std::mutex mu;
};

inline BernoulliCache& bernoulli_cache() {
  static BernoulliCache c;
  return c;
}

inline void bernoulli_extend_locked(BernoulliCache& c, long n) {
  while (static_cast<long>(c.values.size()) <= n) {
    long m = static_cast<long>(c.values.size());
    // B_m = -1/(m+1) * sum_{j<m} C(m+1, j) B_j
    Rat s = 0;
    Int binom = 1;  // C(m+1, j), updated incrementally
    for (long j = 0; j < m; ++j) {
      s += Rat(binom) * c.values[j];
      binom = binom * (m + 1 - j) / (j + 1);
    }
    c.values.push_back(-s / Rat(m + 1));
  }
}

}  // namespace detail

inline Rat bernoulli(long n) {
  if (n < 0) throw std::domain_error("bernoulli: n must be non-negative");
  auto& c = detail::bernoulli_cache();
  std::lock_guard<std::mutex> lock(c.mu);
  detail::bernoulli_extend_locked(c, n);
  return c.values[n];
}

// On-disk Bernoulli cache: versioned, length-prefixed decimal text.
inline constexpr const char* kBernoulliCacheVersion = "maasslab-bernoulli-v1";

inline void bernoulli_cache_save(const std::string& path, long upto) {
  auto& c = detail::bernoulli_cache();
  std::lock_guard<std::mutex> lock(c.mu);
  detail::bernoulli_extend_locked(c, upto);
  std::ofstream os(path);
  if (!os) throw std::runtime_error("bernoulli_cache_save: cannot open " + path);
  os << kBernoulliCacheVersion << "\n" << (upto + 1) << "\n";
  for (long n = 0; n <= upto; ++n) {
    std::string s = rat_str(c.values[n]);
    os << s.size() << " " << s << "\n";
  }
}

// Loads entries into the shared cache (validating against already-computed
// values); returns the number of entries in the file.
inline long bernoulli_cache_load(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("bernoulli_cache_load: cannot open " + path);
  std::string version;
  long count = 0;
  is >> version >> count;
  if (version != kBernoulliCacheVersion)
    throw std::runtime_error("bernoulli_cache_load: unknown version " + version);
  auto& c = detail::bernoulli_cache();
  std::lock_guard<std::mutex> lock(c.mu);
  for (long n = 0; n < count; ++n) {
    size_t len = 0;
    std::string text;
    if (!(is >> len >> text) || text.size() != len)
      throw std::runtime_error("bernoulli_cache_load: corrupt entry at index " +
                               std::to_string(n));
    auto slash = text.find('/');
    Rat v = slash == std::string::npos
                ? Rat(Int(text))
                : Rat(Int(text.substr(0, slash)), Int(text.substr(slash + 1)));
    if (n < static_cast<long>(c.values.size())) {
      if (c.values[n] != v)
        throw std::runtime_error("bernoulli_cache_load: entry mismatch at index " +
                                 std::to_string(n));
    } else {
      c.values.push_back(v);
    }
  }
  return count;
}

// B_n(x) = sum_j C(n, j) B_j x^(n-j)
inline Rat bernoulli_poly(long n, const Rat& x) {
  if (n < 0) throw std::domain_error("bernoulli_poly: n must be non-negative");
  Rat s = 0;
  Rat xpow = 1;   // x^(n-j) as j runs n..0
  Int binom = 1;  // C(n, j)
  for (long j = n; j >= 0; --j) {
    s += Rat(binom) * bernoulli(j) * xpow;
    xpow *= x;
    binom = binom * j / (n - j + 1);
  }
  return s;
}

// zeta(1-2k) = -B_2k / 2k for k >= 1.
inline Rat zeta_neg(long m) {
  if (m >= 0 || m % 2 == 0) throw std::domain_error("zeta_neg: argument must be negative odd");
  long k2 = 1 - m;  // = 2k
  return -bernoulli(k2) / Rat(k2);
}

// Character data.  A character is a Kronecker symbol chi_D, a power of the
// Teichmueller character omega^j at p, their product, or trivial.  Values of
// the Teichmueller part are p-adic and evaluated in the padic module; the
// Kronecker part is evaluated here.
struct DirichletChar {
  enum class Kind { Trivial, Kronecker, TeichPower, Product };
  Kind kind = Kind::Trivial;
  long D = 1;        // fundamental discriminant (Kronecker part)
  long p = 0;        // prime (Teichmueller part)
  long teich_j = 0;  // exponent of omega, reduced mod p-1 (mod 2 for p = 2)

  static DirichletChar trivial() { return {}; }

  static DirichletChar kronecker_char(long D) {
    if (D == 1) return trivial();
    if (!is_fundamental_disc(D))
      throw std::domain_error("DirichletChar: D must be fundamental");
    DirichletChar c;
    c.kind = Kind::Kronecker;
    c.D = D;
    return c;
  }

  static DirichletChar teich(long p, long j) {
    if (p < 2) throw std::domain_error("DirichletChar: bad prime");
    long order = p == 2 ? 2 : p - 1;
    j = ((j % order) + order) % order;
    if (j == 0) return trivial();
    DirichletChar c;
    c.kind = Kind::TeichPower;
    c.p = p;
    c.teich_j = j;
    return c;
  }

  // chi_D * omega^j; either factor may be trivial.
  static DirichletChar product(long D, long p, long j) {
    DirichletChar t = teich(p, j);
    if (D == 1) return t;
    if (t.kind == Kind::Trivial) return kronecker_char(D);
    DirichletChar c = kronecker_char(D);
    c.kind = Kind::Product;
    c.p = p;
    c.teich_j = t.teich_j;
    return c;
  }

  bool is_trivial() const { return kind == Kind::Trivial; }
  bool has_teich() const { return kind == Kind::TeichPower || kind == Kind::Product; }
  bool has_kronecker() const { return kind == Kind::Kronecker || kind == Kind::Product; }

  long conductor() const {
    long f = 1;
    if (has_kronecker()) f = D < 0 ? -D : D;
    if (has_teich()) f = std::lcm(f, p == 2 ? 4L : p);
    return f;
  }

  // Value of the Kronecker component at a (1 for trivial / pure-Teich kinds;
  // the omega part is applied in the padic module).
  int kron_value(long long a) const {
    if (!has_kronecker()) return 1;
    return kronecker(D, a);
  }

  // chi(-1) of the Kronecker-only character (+1 even, -1 odd).
  int parity() const {
    if (has_teich()) throw std::domain_error("parity: Teichmueller factor present");
    return has_kronecker() ? (D < 0 ? -1 : 1) : 1;
  }
};

// Generalized Bernoulli number B(n, chi) for trivial / Kronecker chi, by the
// exact finite sum  B(n, chi) = f^(n-1) sum_{a=1..f} chi(a) B_n(a/f).
// Characters with a Teichmueller factor are handled in the padic module.
inline Rat gen_bernoulli(long n, const DirichletChar& chi) {
  if (n <= 0) throw std::domain_error("gen_bernoulli: n must be positive");
  if (chi.has_teich())
    throw std::domain_error("gen_bernoulli: p-adic character needs the padic module");
  long f = chi.conductor();
  Rat s = 0;
  for (long a = 1; a <= f; ++a) {
    int v = f == 1 ? 1 : (std::gcd(a, f) == 1 ? chi.kron_value(a) : 0);
    if (v == 0) continue;
    s += Rat(v) * bernoulli_poly(n, Rat(a, f));
  }
  return rat_pow(Rat(f), n - 1) * s;
}

// L(1-k, chi) = -B(k, chi)/k for nontrivial chi and k >= 1.
inline Rat l_neg(long one_minus_k, const DirichletChar& chi) {
  if (chi.is_trivial()) throw std::domain_error("l_neg: use zeta_neg for trivial chi");
  long k = 1 - one_minus_k;
  if (k < 1) throw std::domain_error("l_neg: 1-k must be non-positive");
  return -gen_bernoulli(k, chi) / Rat(k);
}

// Cohen coefficient H(k, N) with k = rp1 >= 2.  N arrives already adjusted
// by the caller's sign convention and is decomposed directly:
//   H(k, 0) = zeta(1-2k);  N = Dv^2 -> L(1-k, chi_D) T_k^{chi_D}(v);
//   0 when no decomposition exists (N = 2, 3 mod 4).
inline Rat cohen_h(long rp1, long N) {
  if (rp1 < 2) throw std::domain_error("cohen_h: rp1 must be >= 2");
  if (N == 0) return zeta_neg(1 - 2 * rp1);
  auto dd = decompose_disc(N);
  if (!dd) return Rat(0);
  if (dd->D == 1) {
    if (rp1 % 2 != 0) return Rat(0);  // zeta(1-k) = 0 for k odd
    return zeta_neg(1 - rp1) * t_chi(rp1, 1, dd->v);
  }
  return l_neg(1 - rp1, DirichletChar::kronecker_char(dd->D)) * t_chi(rp1, dd->D, dd->v);
}

}  // namespace maasslab
