#pragma once

// Elementary number theory over exact rationals: factorization (memoized),
// divisor sums, Moebius, the full Kronecker symbol, fundamental-discriminant
// decomposition, and the twisted divisor sums T_r^chi(v).

#include <maasslab/rat.hpp>

#include <algorithm>
#include <map>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

namespace maasslab {

using Factorization = std::vector<std::pair<long, int>>;  // (prime, exponent)

namespace detail {

inline Factorization factor_uncached(long n) {
  Factorization f;
  for (long p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p == 0) {
      int e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      f.emplace_back(p, e);
    }
  }
  if (n > 1) f.emplace_back(n, 1);
  return f;
}

}  // namespace detail

// Trial-division factorization of n >= 1 with a synchronized cache for small n.
inline Factorization factorize(long n) {
  if (n < 1) throw std::domain_error("factorize: n must be positive");
  if (n == 1) return {};
  static constexpr long kCacheLimit = 1000000;
  if (n > kCacheLimit) return detail::factor_uncached(n);
  static std::map<long, Factorization> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  auto f = detail::factor_uncached(n);
  cache.emplace(n, f);
  return f;
}

inline std::vector<long> divisors(long n) {
  auto f = factorize(n);
  std::vector<long> ds{1};
  for (auto& [p, e] : f) {
    size_t sz = ds.size();
    long pe = 1;
    for (int i = 1; i <= e; ++i) {
      pe *= p;
      for (size_t j = 0; j < sz; ++j) ds.push_back(ds[j] * pe);
    }
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

// sigma_k(n) = sum over divisors d of n of d^k, for any integer k
// (negative exponents give rationals).
inline Rat sigma_exp(long k, long n) {
  if (n < 1) throw std::domain_error("sigma: n must be positive");
  Rat s = 0;
  for (long d : divisors(n)) s += rat_pow(Rat(d), k);
  return s;
}

inline Rat sigma(long k, long n) {
  if (k < 0) throw std::domain_error("sigma: k must be non-negative");
  return sigma_exp(k, n);
}

// Divisor sum restricted to divisors coprime to p.
inline Rat sigma_p_exp(long k, long n, long p) {
  if (n < 1) throw std::domain_error("sigma_p: n must be positive");
  if (p < 2) throw std::domain_error("sigma_p: p must be prime");
  Rat s = 0;
  for (long d : divisors(n))
    if (d % p != 0) s += rat_pow(Rat(d), k);
  return s;
}

inline Rat sigma_p(long k, long n, long p) {
  if (k < 0) throw std::domain_error("sigma_p: k must be non-negative");
  return sigma_p_exp(k, n, p);
}

inline int mobius(long n) {
  if (n < 1) throw std::domain_error("mobius: n must be positive");
  int m = 1;
  for (auto& [p, e] : factorize(n)) {
    if (e > 1) return 0;
    m = -m;
  }
  return m;
}

// Full Kronecker symbol (a|n), completely multiplicative in both arguments.
inline int kronecker(long long a, long long n) {
  // (a|2) lookup by a mod 8.
  static constexpr int tab2[8] = {0, 1, 0, -1, 0, -1, 0, 1};
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  if (a % 2 == 0 && n % 2 == 0) return 0;
  int v = 0;
  while (n % 2 == 0) {
    n /= 2;
    ++v;
  }
  int k = 1;
  if (v % 2 != 0) k = tab2[((a % 8) + 8) % 8];
  if (n < 0) {
    n = -n;
    if (a < 0) k = -k;
  }
  // Jacobi loop on odd positive n.
  a %= n;
  if (a < 0) a += n;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      long long nm8 = n % 8;
      if (nm8 == 3 || nm8 == 5) k = -k;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) k = -k;
    a %= n;
  }
  return n == 1 ? k : 0;
}

// n = s * f^2 with s squarefree (sign carried by s).
inline std::pair<long, long> squarefree_part(long n) {
  if (n == 0) throw std::domain_error("squarefree_part: n must be nonzero");
  long s = n < 0 ? -1 : 1;
  long f = 1;
  for (auto& [p, e] : factorize(n < 0 ? -n : n)) {
    for (int i = 0; i + 1 < e; i += 2) f *= p;
    if (e % 2 != 0) s *= p;
  }
  return {s, f};
}

inline bool is_fundamental_disc(long D) {
  if (D == 1) return true;
  long m = ((D % 4) + 4) % 4;
  if (m == 1) {
    auto [s, f] = squarefree_part(D);
    return f == 1;
  }
  if (m == 0) {
    long q = D / 4;
    long qm = ((q % 4) + 4) % 4;
    auto [s, f] = squarefree_part(q);
    return f == 1 && (qm == 2 || qm == 3);
  }
  return false;
}

struct DiscDecomp {
  long D;  // 1 or a fundamental discriminant
  long v;  // positive; n = D * v^2
};

// Writes n = D v^2 with D fundamental (D = 1 exactly when n is a positive
// perfect square).  Empty when n = 2, 3 mod 4, where no such D exists.
inline std::optional<DiscDecomp> decompose_disc(long n) {
  if (n == 0) throw std::domain_error("decompose_disc: n must be nonzero");
  long m = ((n % 4) + 4) % 4;
  if (m == 2 || m == 3) return std::nullopt;
  auto [s, f] = squarefree_part(n);
  long sm = ((s % 4) + 4) % 4;
  if (sm == 1) return DiscDecomp{s, f};
  // Here f is even: otherwise n = s f^2 = 2, 3 mod 4.
  return DiscDecomp{4 * s, f / 2};
}

// T_r^chi(v) = sum over a | v of mu(a) chi_D(a) a^(r-1) sigma_(2r-1)(v/a).
// Defined for every integer r; negative exponents produce rationals.
inline Rat t_chi(long r, long D, long v) {
  if (v < 1) throw std::domain_error("t_chi: v must be positive");
  Rat s = 0;
  for (long a : divisors(v)) {
    int mu = mobius(a);
    if (mu == 0) continue;
    int chi = D == 1 ? 1 : kronecker(D, a);
    if (chi == 0) continue;
    s += Rat(mu * chi) * rat_pow(Rat(a), r - 1) * sigma_exp(2 * r - 1, v / a);
  }
  return s;
}

// As t_chi with a restricted to gcd(a, p) = 1 and sigma replaced by sigma^(p).
inline Rat t_chi_p(long r, long D, long v, long p) {
  if (v < 1) throw std::domain_error("t_chi_p: v must be positive");
  Rat s = 0;
  for (long a : divisors(v)) {
    if (a % p == 0) continue;
    int mu = mobius(a);
    if (mu == 0) continue;
    int chi = D == 1 ? 1 : kronecker(D, a);
    if (chi == 0) continue;
    s += Rat(mu * chi) * rat_pow(Rat(a), r - 1) * sigma_p_exp(2 * r - 1, v / a, p);
  }
  return s;
}

}  // namespace maasslab
