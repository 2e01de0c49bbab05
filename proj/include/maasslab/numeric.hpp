#pragma once

// Floating-point evaluation of constructed forms on the upper half-plane and
// numerical certification: harmonicity via a finite-difference hyperbolic
// Laplacian, modularity under SL_2(Z) generators for integer weights.
//
// Incomplete gamma at half-integer s uses Gamma(1, x) = e^-x and
// Gamma(1/2, x) = sqrt(pi) erfc(sqrt(x)) with upward recurrence; erfc is a
// Maclaurin series below 2 and a Lentz continued fraction above.  Minus-part
// terms pair Gamma(1-k, 4 pi |n| y) with q^n, |n| large: the evaluation uses
// the e^x-scaled gamma so neither factor overflows.

#include <maasslab/qexp.hpp>

#include <cmath>
#include <complex>
#include <map>
#include <mutex>

namespace maasslab {

namespace numeric_detail {

constexpr double kPi = 3.14159265358979323846;

inline double erf_series(double x) {
  // erf(x) = 2/sqrt(pi) sum (-1)^n x^(2n+1) / (n! (2n+1))
  double term = x, sum = x;
  for (int n = 1; n < 80; ++n) {
    term *= -x * x / n;
    double add = term / (2 * n + 1);
    sum += add;
    if (std::abs(add) < 1e-18 * std::abs(sum)) break;
  }
  return 2.0 / std::sqrt(kPi) * sum;
}

// erfcx(x) = erfc(x) e^(x^2), backward evaluation of the Legendre fraction
//   sqrt(pi) erfcx(x) = 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...)))).
inline double erfcx_cf(double x) {
  double t = x;
  for (int j = 150; j >= 1; --j) t = x + (j / 2.0) / t;
  return 1.0 / (t * std::sqrt(kPi));
}

inline double erfcx(double x) {
  if (x < 2.0) return (1.0 - erf_series(x)) * std::exp(x * x);
  return erfcx_cf(x);
}

}  // namespace numeric_detail

inline double erfc_accurate(double x) {
  if (x < 0) return 2.0 - erfc_accurate(-x);
  if (x < 2.0) return 1.0 - numeric_detail::erf_series(x);
  return numeric_detail::erfcx_cf(x) * std::exp(-x * x);
}

namespace numeric_detail {

// Gamma(s, x) e^x for half-integer s >= 1/2, x > 0.
inline double inc_gamma_scaled(HalfInt s, double x) {
  if (x <= 0) throw std::domain_error("inc_gamma: x must be positive");
  if (s.twice <= 0) throw std::domain_error("inc_gamma: s must be positive");
  double g;  // scaled value at the base
  long steps;
  if (s.is_integer()) {
    g = 1.0;  // Gamma(1, x) e^x
    steps = s.integer() - 1;
  } else {
    g = std::sqrt(kPi) * erfcx(std::sqrt(x));  // Gamma(1/2, x) e^x
    steps = (s.twice - 1) / 2;
  }
  // Gamma(t+1, x) = t Gamma(t, x) + x^t e^-x, scaled by e^x
  double t = s.is_integer() ? 1.0 : 0.5;
  for (long j = 0; j < steps; ++j) {
    g = t * g + std::pow(x, t);
    t += 1.0;
  }
  return g;
}

}  // namespace numeric_detail

inline double inc_gamma(HalfInt s, double x) {
  return numeric_detail::inc_gamma_scaled(s, x) * std::exp(-x);
}

// ---- numeric values of the symbolic generators ---------------------------

namespace numeric_detail {

inline double zeta_numeric(long m) {
  static std::map<long, double> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  const long N = 100000;
  double s = 0;
  for (long k = N; k >= 1; --k) s += std::pow(static_cast<double>(k), -static_cast<double>(m));
  // midpoint tail: integral of x^-m from N+1/2
  s += std::pow(N + 0.5, 1.0 - m) / (m - 1.0);
  cache.emplace(m, s);
  return s;
}

// L(s, chi_D) by direct series with the Abel remainder bound 2|D| N^-s.
inline double lval_numeric(long D, long s) {
  static std::map<std::pair<long, long>, double> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find({D, s});
  if (it != cache.end()) return it->second;
  long f = D < 0 ? -D : D;
  std::vector<double> chi(f);
  for (long a = 0; a < f; ++a) chi[a] = kronecker(D, a);
  long N = static_cast<long>(std::ceil(std::pow(2.0 * f / 1e-12, 1.0 / s))) + 1;
  double sum = 0;
  for (long k = N; k >= 1; --k) {
    double c = chi[k % f];
    if (c == 0) continue;
    double kp = 1.0;
    for (long j = 0; j < s; ++j) kp *= k;
    sum += c / kp;
  }
  cache.emplace(std::make_pair(D, s), sum);
  return sum;
}

inline std::complex<double> eval_symscalar(const SymScalar& v) {
  std::complex<double> total{0, 0};
  for (auto& [m, c] : v.terms()) {
    std::complex<double> t{c.convert_to<double>(), 0};
    if (m.i_exp == 1) t *= std::complex<double>(0, 1);
    if (m.pi_half != 0) t *= std::pow(kPi, m.pi_half / 2.0);
    if (m.sqrt_rad != 1) t *= std::sqrt(static_cast<double>(m.sqrt_rad));
    for (auto& [arg, e] : m.zeta) t *= std::pow(zeta_numeric(arg), e);
    for (auto& [key, e] : m.lval) t *= std::pow(lval_numeric(key.first, key.second), e);
    total += t;
  }
  return total;
}

}  // namespace numeric_detail

struct PointEval {
  std::complex<double> z;
  long truncation = 0;
  std::complex<double> value{0, 0};
  double tail_estimate = 0;
  bool in_reliable_window = true;  // Im z in [0.8, 3]
  bool truncation_warning = false;
};

inline PointEval eval_form(const HarmonicQExp& f, std::complex<double> z, long truncation) {
  using namespace numeric_detail;
  if (z.imag() <= 0) throw std::domain_error("eval_form: Im z must be positive");
  long T = std::min(truncation, f.trunc);
  PointEval out;
  out.z = z;
  out.truncation = T;
  out.in_reliable_window = z.imag() >= 0.8 && z.imag() <= 3.0;

  double y = z.imag();
  std::complex<double> i2piz = std::complex<double>(0, 2 * kPi) * z;
  double kappa = f.weight.twice / 2.0;

  std::complex<double> acc{0, 0};
  double band = 0;
  for (auto& [n, c] : f.plus) {
    if (n > T || n < -T) continue;
    std::complex<double> term = eval_symscalar(c) * std::exp(i2piz * static_cast<double>(n));
    acc += term;
    if (n == T) band += std::abs(term);
  }
  if (!f.minus_zero.is_zero())
    acc += eval_symscalar(f.minus_zero) * std::pow(y, 1.0 - kappa);
  HalfInt s_gamma = HalfInt::halves(2 - f.weight.twice);  // 1 - kappa
  for (auto& [n, c] : f.minus) {
    if (n > T || n < -T || n == 0) continue;
    double X = -4.0 * kPi * n * y;  // positive for n < 0
    if (X <= 0) throw std::domain_error("eval_form: minus index with non-positive gamma argument");
    // Gamma(1-k, X) q^n = [Gamma e^X] exp(2 pi i n z + ... - X)
    std::complex<double> scaled = inc_gamma_scaled(s_gamma, X);
    std::complex<double> expo = std::exp(i2piz * static_cast<double>(n) - X);
    std::complex<double> term = eval_symscalar(c) * scaled * expo;
    acc += term;
    if (n == -T) band += std::abs(term);
  }
  out.value = acc;
  out.tail_estimate = band;
  out.truncation_warning = band > 1e-8;
  return out;
}

// |Delta_kappa f(z)| / (|f(z)| + 1) with central differences on a 5-point
// stencil; Delta_kappa = -y^2 (f_xx + f_yy) + i kappa y (f_x + i f_y).
inline double laplacian_residual(const HarmonicQExp& f, std::complex<double> z, double h,
                                 long truncation) {
  using C = std::complex<double>;
  auto ev = [&](C w) { return eval_form(f, w, truncation).value; };
  C fz = ev(z);
  C fxp = ev(z + C(h, 0)), fxm = ev(z - C(h, 0));
  C fyp = ev(z + C(0, h)), fym = ev(z - C(0, h));
  C fxx = (fxp - 2.0 * fz + fxm) / (h * h);
  C fyy = (fyp - 2.0 * fz + fym) / (h * h);
  C fx = (fxp - fxm) / (2 * h);
  C fy = (fyp - fym) / (2 * h);
  double y = z.imag();
  double kappa = f.weight.twice / 2.0;
  C lap = -y * y * (fxx + fyy) + C(0, kappa) * y * (fx + C(0, 1) * fy);
  return std::abs(lap) / (std::abs(fz) + 1.0);
}

// |f(gz) - (cz+d)^kappa f(z)| / (|f(z)| + 1) for g = [[a,b],[c,d]].
inline double modularity_residual(const HarmonicQExp& f, const std::array<long, 4>& g,
                                  std::complex<double> z, long truncation) {
  if (!f.weight.is_integer())
    throw std::domain_error("modularity_residual: half-integral weights unsupported "
                            "(theta multiplier not implemented)");
  using C = std::complex<double>;
  C num = static_cast<double>(g[0]) * z + static_cast<double>(g[1]);
  C den = static_cast<double>(g[2]) * z + static_cast<double>(g[3]);
  C gz = num / den;
  if (gz.imag() <= 0) throw std::domain_error("modularity_residual: gz not in H");
  C fz = eval_form(f, z, truncation).value;
  C lhs = eval_form(f, gz, truncation).value;
  C rhs = std::pow(den, static_cast<double>(f.weight.integer())) * fz;
  return std::abs(lhs - rhs) / (std::abs(fz) + 1.0);
}

}  // namespace maasslab
