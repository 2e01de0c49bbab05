#pragma once

// Numerical verification of Zagier's proposition: the Gauss-sum Dirichlet
// series E_n(s) against its closed form L(s, chi_D)/zeta(2s) * (finite sum).
//
// Gauss sums are evaluated in double-precision complex arithmetic (the
// identity is verified, not consumed downstream); the closed-form side is
// assembled exactly and floated at the end.  The half-integral power i^(a/2)
// for odd a is the principal branch exp(i pi a / 4).

#include <maasslab/arith.hpp>
#include <maasslab/rat.hpp>

#include <cmath>
#include <complex>
#include <string>
#include <vector>

namespace maasslab {

inline std::complex<double> lambda_sym(long a, long c) {
  if (a < 1 || c < 1) throw std::domain_error("lambda_sym: a, c must be positive");
  const double pi = 3.14159265358979323846;
  if (c % 2 != 0 && a % 2 == 0) {
    // i^((1-c)/2) (a/c)
    long e = (1 - c) / 2;
    std::complex<double> ip = std::polar(1.0, pi * e / 2.0);
    return ip * static_cast<double>(kronecker(a, c));
  }
  if (a % 2 != 0 && c % 2 == 0) {
    // i^(a/2) (c/a), principal branch for the half-integral exponent
    std::complex<double> ip = std::polar(1.0, pi * a / 4.0);
    return ip * static_cast<double>(kronecker(c, a));
  }
  return {0.0, 0.0};
}

// gamma_c(n) = c^(-1/2) sum_{a=1}^{2c} lambda(a, c) e^(-pi i n a / c)
inline std::complex<double> gauss_gamma(long c, long n) {
  if (c < 1) throw std::domain_error("gauss_gamma: c must be positive");
  const double pi = 3.14159265358979323846;
  std::complex<double> s{0.0, 0.0};
  long nr = ((n % (2 * c)) + 2 * c) % (2 * c);
  for (long a = 1; a <= 2 * c; ++a) {
    std::complex<double> l = lambda_sym(a, c);
    if (l == std::complex<double>(0.0, 0.0)) continue;
    double ang = -pi * static_cast<double>(nr * a) / c;
    s += l * std::polar(1.0, ang);
  }
  return s / std::sqrt(static_cast<double>(c));
}

// a_m = 1/2 (gamma_m(n) + gamma_2m(n)) for odd m, 1/2 gamma_2m(n) for even m.
inline std::vector<std::complex<double>> en_coeffs(long n, long M) {
  if (M < 1) throw std::domain_error("en_coeffs: M must be positive");
  std::vector<std::complex<double>> a(M + 1);
  for (long m = 1; m <= M; ++m) {
    if (m % 2 != 0)
      a[m] = 0.5 * (gauss_gamma(m, n) + gauss_gamma(2 * m, n));
    else
      a[m] = 0.5 * gauss_gamma(2 * m, n);
  }
  return a;
}

// Odd/even partial assemblies (the 2.10/2.11 split): coefficients of
// E^odd(s) = sum_{c odd} gamma_c(n) c^-s and E^even(s) = sum_{c even}
// gamma_c(n) (c/2)^-s, indexed by the effective m.
inline std::vector<std::complex<double>> en_coeffs_odd(long n, long M) {
  std::vector<std::complex<double>> a(M + 1);
  for (long m = 1; m <= M; m += 2) a[m] = gauss_gamma(m, n);
  return a;
}
inline std::vector<std::complex<double>> en_coeffs_even(long n, long M) {
  std::vector<std::complex<double>> a(M + 1);
  for (long m = 1; m <= M; ++m) a[m] = gauss_gamma(2 * m, n);
  return a;
}

struct DirichletPoly {
  std::vector<Rat> coeffs;  // a_1..a_M at index 1..M
  long size() const { return static_cast<long>(coeffs.size()) - 1; }
  const Rat& at(long m) const { return coeffs.at(static_cast<size_t>(m)); }
};

namespace detail {

inline DirichletPoly dirichlet_convolve(const DirichletPoly& a, const DirichletPoly& b) {
  long M = a.size();
  DirichletPoly c;
  c.coeffs.assign(M + 1, Rat(0));
  for (long i = 1; i <= M; ++i) {
    if (a.coeffs[i] == 0) continue;
    for (long j = 1; i * j <= M; ++j) c.coeffs[i * j] += a.coeffs[i] * b.coeffs[j];
  }
  return c;
}

}  // namespace detail

// Exact Dirichlet coefficients of the closed form:
//   n != 0 admissible:  L(s, chi_D) zeta(2s)^-1 sum_{ac | v} mu(a)chi(a) c a^-s (ac^2)^-s-indexed
//   n  = 0:             zeta(2s-1)/zeta(2s).
inline DirichletPoly rhs_coeffs(long n, long M) {
  DirichletPoly out;
  out.coeffs.assign(M + 1, Rat(0));
  // 1/zeta(2s): mu(j) at index j^2
  DirichletPoly inv_zeta2;
  inv_zeta2.coeffs.assign(M + 1, Rat(0));
  for (long j = 1; j * j <= M; ++j) inv_zeta2.coeffs[j * j] = mobius(j);

  if (n == 0) {
    // zeta(2s-1): j at index j^2
    DirichletPoly z;
    z.coeffs.assign(M + 1, Rat(0));
    for (long j = 1; j * j <= M; ++j) z.coeffs[j * j] = j;
    return detail::dirichlet_convolve(z, inv_zeta2);
  }

  auto dd = decompose_disc(n);
  if (!dd) throw std::domain_error("rhs_coeffs: n = 2, 3 mod 4 has no closed form (series vanishes)");
  // L(s, chi_D): chi_D(j) at index j
  DirichletPoly lchi;
  lchi.coeffs.assign(M + 1, Rat(0));
  for (long j = 1; j <= M; ++j) lchi.coeffs[j] = dd->D == 1 ? 1 : kronecker(dd->D, j);
  // finite double sum over ac | v: mu(a) chi(a) c at index a c^2
  DirichletPoly fin;
  fin.coeffs.assign(M + 1, Rat(0));
  for (long a = 1; a <= dd->v; ++a) {
    if (dd->v % a != 0) continue;
    int mu = mobius(a);
    if (mu == 0) continue;
    int chi = dd->D == 1 ? 1 : kronecker(dd->D, a);
    if (chi == 0) continue;
    for (long c = 1; a * c <= dd->v; ++c) {
      if (dd->v % (a * c) != 0) continue;
      long idx = a * c * c;
      if (idx <= M) fin.coeffs[idx] += Rat(mu * chi) * Rat(c);
    }
  }
  return detail::dirichlet_convolve(detail::dirichlet_convolve(lchi, inv_zeta2), fin);
}

struct ZagierReport {
  long n = 0;
  long s = 0;
  long M = 0;
  double tol = 0;
  bool vanishing_branch = false;
  double max_coeff_dev = 0;   // max |a_m - rhs_m| (or max |a_m| on the vanishing branch)
  double partial_sum_dev = 0; // |sum a_m m^-s - sum rhs_m m^-s|
  double max_imag = 0;        // largest imaginary part seen in a_m
  bool pass = false;
};

inline ZagierReport verify_zagier(long n, long s, long M, double tol) {
  ZagierReport rep;
  rep.n = n;
  rep.s = s;
  rep.M = M;
  rep.tol = tol;
  auto a = en_coeffs(n, M);
  long nm4 = ((n % 4) + 4) % 4;
  rep.vanishing_branch = n != 0 && (nm4 == 2 || nm4 == 3);
  for (long m = 1; m <= M; ++m) rep.max_imag = std::max(rep.max_imag, std::abs(a[m].imag()));

  if (rep.vanishing_branch) {
    for (long m = 1; m <= M; ++m)
      rep.max_coeff_dev = std::max(rep.max_coeff_dev, std::abs(a[m]));
    rep.pass = rep.max_coeff_dev < tol;
    return rep;
  }

  DirichletPoly rhs = rhs_coeffs(n, M);
  std::complex<double> lhs_sum{0, 0};
  double rhs_sum = 0;
  for (long m = 1; m <= M; ++m) {
    double r = rhs.at(m).convert_to<double>();
    rep.max_coeff_dev = std::max(rep.max_coeff_dev, std::abs(a[m] - r));
    double w = std::pow(static_cast<double>(m), -static_cast<double>(s));
    lhs_sum += a[m] * w;
    rhs_sum += r * w;
  }
  rep.partial_sum_dev = std::abs(lhs_sum - rhs_sum);
  rep.pass = rep.max_coeff_dev < tol && rep.partial_sum_dev < tol;
  return rep;
}

}  // namespace maasslab
