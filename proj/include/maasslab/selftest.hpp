#pragma once

// The acceptance suite: every machine-checkable claim the library exists to
// verify, each with its tolerance pinned in code.  Shared by the `acceptance`
// test binary and the CLI `selftest` command.

#include <maasslab/congruence.hpp>
#include <maasslab/hecke.hpp>
#include <maasslab/json_io.hpp>
#include <maasslab/numeric.hpp>
#include <maasslab/padic_l.hpp>
#include <maasslab/qexp.hpp>
#include <maasslab/zagier.hpp>

#include <chrono>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace maasslab {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

namespace selftest_detail {

inline SymScalar hecke_lambda(long wparam, long p) {
  return SymScalar(Rat(1) + rat_pow(Rat(p), -(2 * wparam + 1)));
}

// C1: golden displays
inline CriterionResult c1() {
  CriterionResult r{1, "golden expansions (EisP 6 5, EisP 10 5)"};
  std::string a = render_expansion_text(eisenstein_p(6, 5, 5));
  std::string b = render_expansion_text(eisenstein_p(10, 5, 5));
  r.pass = a == "781/126 + q + 33q^2 + 244q^3 + 1057q^4 + q^5" &&
           b == "488281/66 + q + 513q^2 + 19684q^3 + 262657q^4 + q^5";
  r.detail = a + "  |  " + b;
  return r;
}

// C2: Eisenstein congruence mod 5 through n <= 200 including constants
inline CriterionResult c2(long range) {
  CriterionResult r{2, "EisP 6/10 congruent mod 5 through n <= " + std::to_string(range)};
  auto rep = vp_expansion_diff(eisenstein_p(6, 5, range), eisenstein_p(10, 5, range), 5, range);
  bool plus_ok = !rep.plus_floor || *rep.plus_floor >= 1;
  bool const_ok = !rep.const_floor || *rep.const_floor >= 1;
  r.pass = plus_ok && const_ok;
  std::ostringstream os;
  os << "plus floor " << (rep.plus_floor ? rat_str(*rep.plus_floor) : ">=prec")
     << ", const floor " << (rep.const_floor ? rat_str(*rep.const_floor) : ">=prec");
  r.detail = os.str();
  return r;
}

// C3: integer-weight Hecke eigenforms
inline CriterionResult c3(long kmax, std::vector<long> primes, long trunc) {
  CriterionResult r{3, "eigenforms: G(z,-2k) | T(p) = (1 + p^-(2k+1)) G(z,-2k)"};
  r.pass = true;
  for (long k = 1; k <= kmax && r.pass; ++k) {
    auto g = maass_g(k, trunc);
    for (long p : primes) {
      auto rep = eigen_check(g, HeckeOp::Tp, p, hecke_lambda(k, p), trunc / p);
      if (!rep.pass) {
        r.pass = false;
        r.detail = "failure at k=" + std::to_string(k) + " p=" + std::to_string(p) +
                   " n=" + std::to_string(rep.first_failure.value_or(-999));
        break;
      }
    }
  }
  if (r.pass) r.detail = "exact zero defect, k <= " + std::to_string(kmax);
  return r;
}

// C4: half-integral-weight Hecke eigenforms
inline CriterionResult c4(long rmax, std::vector<long> primes, long trunc) {
  CriterionResult r{4, "eigenforms: H(z,-r+1/2) | T(p^2) = (1 + p^-(2r+1)) H"};
  r.pass = true;
  for (long rr = 1; rr <= rmax && r.pass; ++rr) {
    auto h = maass_h(rr, trunc);
    for (long p : primes) {
      auto rep = eigen_check(h, HeckeOp::Tp2, p, hecke_lambda(rr, p), trunc / (p * p));
      if (!rep.pass) {
        r.pass = false;
        r.detail = "failure at r=" + std::to_string(rr) + " p=" + std::to_string(p);
        break;
      }
    }
  }
  if (r.pass) r.detail = "exact zero defect, r <= " + std::to_string(rmax);
  return r;
}

// C5: xi-images
inline CriterionResult c5(long kmax, long rmax, long range) {
  CriterionResult r{5, "xi-images: G -> Eisenstein exactly; H -> Cohen ratios exactly"};
  r.pass = true;
  for (long k = 1; k <= kmax && r.pass; ++k) {
    auto xi = xi_image(maass_g(k, range));
    auto e = eisenstein(2 * k + 2, range);
    SymScalar expect = Rat(k % 2 == 0 ? -1 : 1) * rat_pow(Rat(2), 2 * k + 2) * SymScalar::pi_pow(1);
    for (long n = 0; n <= range; ++n) {
      auto q = xi.plus_at(n).ratio(e.plus_at(n));
      if (!q || !(*q == expect)) {
        r.pass = false;
        r.detail = "G: constant mismatch at k=" + std::to_string(k) + " n=" + std::to_string(n);
        break;
      }
    }
  }
  std::string h_const_report;
  for (long rr = 1; rr <= rmax && r.pass; ++rr) {
    auto xi = xi_image(maass_h(rr, range));
    long sign_img = (rr + 1) % 2 == 0 ? 1 : -1;
    SymScalar base_img;
    Rat base_cohen;
    bool have = false;
    for (long n = 1; n <= range; ++n) {
      Rat ch = cohen_h(rr + 1, sign_img * n);
      SymScalar im = xi.plus_at(n);
      if (ch == 0) {
        if (!im.is_zero()) {
          r.pass = false;
          r.detail = "H: image nonzero where Cohen vanishes, r=" + std::to_string(rr);
        }
        continue;
      }
      if (im.is_zero()) {
        r.pass = false;
        r.detail = "H: image zero where Cohen is nonzero, r=" + std::to_string(rr);
        break;
      }
      if (!have) {
        base_img = im;
        base_cohen = ch;
        have = true;
        continue;
      }
      auto q = im.ratio(base_img);
      if (!q || !(*q == SymScalar(ch / base_cohen))) {
        r.pass = false;
        r.detail = "H: ratio mismatch at r=" + std::to_string(rr) + " n=" + std::to_string(n);
        break;
      }
    }
    // constant-term proportionality: reported, not asserted (documented open
    // question -- the pole evaluation of the N = 0 term sits on a different
    // normalization than the nonconstant terms)
    if (r.pass && have) {
      SymScalar img_const = xi.plus_at(0);
      Rat cohen_const = cohen_h(rr + 1, 0);
      auto nonconst = base_img.ratio(SymScalar(base_cohen));
      auto cc = img_const.ratio(SymScalar(cohen_const));
      if (cc && nonconst) {
        auto mismatch = cc->ratio(*nonconst);
        h_const_report += " r=" + std::to_string(rr) + ": const/nonconst = " +
                          (mismatch ? mismatch->str() : std::string("(non-monomial)")) + ";";
      }
    }
  }
  if (r.pass)
    r.detail = "nonconstant terms exact; H constant-term proportionality reported:" +
               h_const_report;
  return r;
}

// C6: intertwining
inline CriterionResult c6() {
  CriterionResult r{6, "intertwining p^(d(1-kappa)) xi(f|T) = xi(f)|T"};
  auto g = maass_g(1, 150);
  bool ok = intertwine_check(g, 2, 50) && intertwine_check(g, 3, 50);
  auto h = maass_h(1, 225);
  ok = ok && intertwine_check(h, 3, 25);
  r.pass = ok;
  r.detail = "G k=1 p in {2,3} n <= 50; H r=1 p=3 |N| <= 25";
  return r;
}

// C7: Zagier proposition
inline CriterionResult c7() {
  CriterionResult r{7, "Zagier Dirichlet-series identity, coefficientwise"};
  r.pass = true;
  double worst = 0;
  for (long n : {0L, 1L, 4L, 5L, 8L, 12L, -3L, -4L, -7L, -8L, 9L}) {
    auto rep = verify_zagier(n, 2, 50, 1e-8);
    worst = std::max(worst, rep.max_coeff_dev);
    if (!rep.pass) {
      r.pass = false;
      r.detail = "identity branch failed at n=" + std::to_string(n);
    }
  }
  for (long n : {2L, 3L, 6L, 7L, -1L, -2L}) {
    auto rep = verify_zagier(n, 2, 50, 1e-8);
    worst = std::max(worst, rep.max_coeff_dev);
    if (!rep.pass) {
      r.pass = false;
      r.detail = "vanishing branch failed at n=" + std::to_string(n);
    }
  }
  if (r.pass) {
    std::ostringstream os;
    os << "max |a_m - rhs_m| = " << worst;
    r.detail = os.str();
  }
  return r;
}

// C8: sigma-level stabilization identity
inline CriterionResult c8(long nmax) {
  CriterionResult r{8, "stabilization: sigma^(p) identity behind G^(p) = G - G(pz)"};
  r.pass = true;
  for (long p : {2L, 3L, 5L, 7L})
    for (long k = 1; k <= 4 && r.pass; ++k) {
      long m = 2 * k + 1;
      for (long n = 1; n <= nmax; ++n) {
        Rat lhs = sigma_p(m, n, p) / rat_pow(Rat(n), m);
        Rat rhs = sigma(m, n) / rat_pow(Rat(n), m);
        if (n % p == 0) rhs -= sigma(m, n / p) / rat_pow(Rat(n / p), m);
        if (lhs != rhs) {
          r.pass = false;
          r.detail = "mismatch at p=" + std::to_string(p) + " n=" + std::to_string(n);
          break;
        }
      }
    }
  if (r.pass) r.detail = "exact for n <= " + std::to_string(nmax) + ", k <= 4, p in {2,3,5,7}";
  return r;
}

// C9: Kummer congruence suites
inline CriterionResult c9(int n_kummer, int n_genkummer) {
  CriterionResult r{9, "Kummer congruences and the interpolation cross-check"};
  r.pass = true;
  std::mt19937 rng(271828);
  std::uniform_int_distribution<long> base(2, 40);
  std::uniform_int_distribution<long> tdist(1, 3);
  std::vector<long> ps{5, 7, 11};
  int done = 0;
  while (done < n_kummer) {
    long p = ps[rng() % ps.size()];
    long a = static_cast<long>(rng() % 3);
    if (p >= 7 && a == 2) a = 1;  // keep Bernoulli indices desk-sized
    long n = base(rng);
    if (n % (p - 1) == 0) continue;
    long m = n + tdist(rng) * (p - 1) * to_long(ipow(p, a));
    if (!kummer_check(p, n, m, a)) {
      r.pass = false;
      r.detail = "classical Kummer failure at p=" + std::to_string(p) + " n=" + std::to_string(n) +
                 " m=" + std::to_string(m) + " a=" + std::to_string(a);
      return r;
    }
    ++done;
  }
  std::vector<DirichletChar> chars{DirichletChar::kronecker_char(-4),
                                   DirichletChar::kronecker_char(5),
                                   DirichletChar::kronecker_char(-3)};
  done = 0;
  long p = 5;
  while (done < n_genkummer) {
    auto& chi = chars[rng() % chars.size()];
    if (chi.conductor() % p == 0) continue;
    long a = static_cast<long>(rng() % 3);
    long n = base(rng);
    long m = n + tdist(rng) * to_long(ipow(p, a));
    if (!gen_kummer_check(p, chi, n, m, a)) {
      r.pass = false;
      r.detail = "twisted Kummer failure at D=" + std::to_string(chi.D) + " n=" + std::to_string(n) +
                 " m=" + std::to_string(m) + " a=" + std::to_string(a);
      return r;
    }
    ++done;
  }
  // interpolation identity: series evaluation against the Bernoulli-sum route
  for (long pp : {3L, 5L, 7L}) {
    for (auto D : {-4L, 5L}) {
      auto chi = DirichletChar::kronecker_char(D);
      for (long n = 1; n <= 6; ++n) {
        auto [v, abs] = vp_diff(padic_l(1 - n, chi, pp, 8), padic_l_interpolation(n, chi, pp, 8));
        if (v && *v < 8) {
          r.pass = false;
          r.detail = "interpolation cross-check failed at p=" + std::to_string(pp) +
                     " D=" + std::to_string(D) + " n=" + std::to_string(n);
          return r;
        }
      }
    }
  }
  r.detail = std::to_string(n_kummer) + " classical triples, " + std::to_string(n_genkummer) +
             " twisted pairs, interpolation n <= 6; all with >= 2 guard digits";
  return r;
}

// C10: p-adic limits and the Serre preimage
inline CriterionResult c10(long depth, long range) {
  CriterionResult r{10, "p-adic limits of the families and xi_0 -> Serre E_2"};
  r.pass = true;
  std::string notes;
  for (long k0 : {1L, 2L, 0L}) {
    auto rep = padic_limit_check_g(k0, 5, depth, range, 10);
    if (!rep.pass) {
      r.pass = false;
      r.detail = "G-family limit failed at target k0=" + std::to_string(k0);
      return r;
    }
    if (rep.plus_const_pole) notes += " [weight-0 holomorphic constant: zeta_p pole, reported]";
  }
  if (!xi_serre_check(5, depth, std::min(range, 50L))) {
    r.pass = false;
    r.detail = "xi_serre_check failed";
    return r;
  }
  r.detail = "targets k in {1,2} and weight 0, p=5, depth " + std::to_string(depth) +
             "; strictly increasing valuations;" + notes;
  return r;
}

// C11: numerical certification
inline CriterionResult c11(int npoints) {
  CriterionResult r{11, "numerical harmonicity and modularity residuals"};
  r.pass = true;
  double worst_lap = 0, worst_mod = 0;
  std::vector<std::complex<double>> pts{{0.30, 1.00}, {-0.20, 1.25}, {0.05, 1.50},
                                        {0.42, 1.75}, {-0.11, 2.00}};
  pts.resize(npoints);
  std::vector<HarmonicQExp> forms{maass_g(1, 40), maass_g(2, 40), maass_h(1, 40), maass_h(2, 40)};
  for (auto& f : forms)
    for (auto z : pts) {
      double res = laplacian_residual(f, z, 1e-3, 40);
      worst_lap = std::max(worst_lap, res);
      if (res >= 1e-5) {
        r.pass = false;
        r.detail = "laplacian residual " + std::to_string(res) + " for " + f.family;
        return r;
      }
    }
  std::array<long, 4> S{0, -1, 1, 0}, T{1, 1, 0, 1};
  for (long k : {1L, 2L}) {
    auto g = maass_g(k, 60);
    for (auto& mat : {S, T}) {
      double res = modularity_residual(g, mat, {0.1, 1.2}, 60);
      worst_mod = std::max(worst_mod, res);
      if (res >= 1e-4) {
        r.pass = false;
        r.detail = "modularity residual " + std::to_string(res) + " at k=" + std::to_string(k);
        return r;
      }
    }
  }
  std::ostringstream os;
  os << "worst laplacian " << worst_lap << ", worst modularity " << worst_mod;
  r.detail = os.str();
  return r;
}

// C12: property suites at their stated scales
inline CriterionResult c12(bool quick) {
  CriterionResult r{12, "module property suites (algebraic invariants)"};
  r.pass = true;
  std::mt19937 rng(31415);
  auto fail = [&](const std::string& what) {
    r.pass = false;
    r.detail = what;
  };
  // sigma multiplicativity
  std::uniform_int_distribution<long> dist(1, 300);
  for (int t = 0; t < 150 && r.pass; ++t) {
    long m = dist(rng), n = dist(rng);
    if (std::gcd(m, n) != 1) continue;
    if (sigma(3, m * n) != sigma(3, m) * sigma(3, n)) fail("sigma multiplicativity");
  }
  // sigma_p identity, exhaustive to the stated scale
  long nmax = quick ? 2000 : 10000;
  for (long p : {2L, 3L, 5L, 7L})
    for (long n = 1; n <= nmax && r.pass; ++n) {
      long k = n % 5;
      Rat expect = sigma(k, n);
      if (n % p == 0) expect -= rat_pow(Rat(p), k) * sigma(k, n / p);
      if (sigma_p(k, n, p) != expect) fail("sigma_p identity");
    }
  // T^chi functional equation
  for (long D : {1L, 3L, -3L, 4L, -4L, 5L, 8L, -7L, 12L}) {
    if (D != 1 && !is_fundamental_disc(D)) continue;
    for (long s = -5; s <= 6 && r.pass; ++s)
      for (long v = 1; v <= (quick ? 40 : 100); ++v)
        if (t_chi(s, D, v) != rat_pow(Rat(v), 2 * s - 1) * t_chi(1 - s, D, v))
          fail("T^chi functional equation");
  }
  // decompose_disc reconstruction
  for (long n = -(quick ? 2000 : 10000); n <= (quick ? 2000 : 10000) && r.pass; ++n) {
    if (n == 0) continue;
    auto d = decompose_disc(n);
    long m = ((n % 4) + 4) % 4;
    if (m == 2 || m == 3) {
      if (d) fail("decompose_disc: unexpected decomposition");
    } else if (!d || d->D * d->v * d->v != n) {
      fail("decompose_disc reconstruction");
    }
  }
  // Hecke commutativity
  if (r.pass) {
    auto g = maass_g(1, quick ? 60 : 200);
    for (long p : {2L, 3L, 5L})
      for (long q : {2L, 3L, 5L}) {
        if (p == q || !r.pass) continue;
        auto A = hecke_tp(hecke_tp(g, p), q);
        auto B = hecke_tp(hecke_tp(g, q), p);
        for (long n = -A.trunc; n <= A.trunc; ++n) {
          if (!(A.plus_at(n) == B.plus_at(n)) ||
              (n != 0 && !(A.minus_at(n) == B.minus_at(n)))) {
            fail("Hecke commutativity");
            break;
          }
        }
      }
  }
  // Hecke linearity on a same-weight combination
  if (r.pass) {
    auto g1 = maass_g(1, 40);
    HarmonicQExp g2;
    g2.weight = g1.weight;
    g2.level = 1;
    g2.trunc = 40;
    for (long n = 0; n <= 40; ++n) g2.set_plus(n, SymScalar(Rat(dist(rng) - 150, 7)));
    for (long n = -40; n <= -1; ++n) g2.set_minus(n, SymScalar(Rat(dist(rng) - 150, 3)));
    g2.minus_zero = Rat(dist(rng)) * SymScalar::pi_pow(1);
    SymScalar alpha = Rat(3, 7) * SymScalar::zeta_sym(3);
    SymScalar beta = Rat(-2) * SymScalar::i_unit();
    HarmonicQExp combo;
    combo.weight = g1.weight;
    combo.level = 1;
    combo.trunc = 40;
    for (long n = 0; n <= 40; ++n)
      combo.set_plus(n, alpha * g1.plus_at(n) + beta * g2.plus_at(n));
    for (long n = -40; n <= -1; ++n)
      combo.set_minus(n, alpha * g1.minus_at(n) + beta * g2.minus_at(n));
    combo.minus_zero = alpha * g1.minus_zero + beta * g2.minus_zero;
    auto L = hecke_tp(combo, 2);
    auto A = hecke_tp(g1, 2);
    auto B = hecke_tp(g2, 2);
    for (long n = -L.trunc; n <= L.trunc && r.pass; ++n) {
      if (!(L.plus_at(n) == alpha * A.plus_at(n) + beta * B.plus_at(n)))
        fail("Hecke linearity (plus)");
      if (n != 0 && !(L.minus_at(n) == alpha * A.minus_at(n) + beta * B.minus_at(n)))
        fail("Hecke linearity (minus)");
    }
    if (r.pass && !(L.minus_zero == alpha * A.minus_zero + beta * B.minus_zero))
      fail("Hecke linearity (constant)");
  }
  // inc_gamma recurrence
  std::uniform_real_distribution<double> xd(0.01, 50.0);
  for (int t = 0; t < 200 && r.pass; ++t) {
    double x = xd(rng);
    for (long tw = 1; tw <= 19; tw += 2) {
      double lhs = inc_gamma(HalfInt::halves(tw + 2), x);
      double s = tw / 2.0;
      double rhs = s * inc_gamma(HalfInt::halves(tw), x) + std::pow(x, s) * std::exp(-x);
      if (std::abs(lhs - rhs) > 1e-11 * (std::abs(lhs) + 1e-300)) fail("inc_gamma recurrence");
    }
  }
  // SymScalar ring axioms (spot)
  for (int t = 0; t < 60 && r.pass; ++t) {
    SymScalar a = Rat(dist(rng) - 150, 7) * SymScalar::zeta_sym(3);
    SymScalar b = Rat(dist(rng) - 150, 3) * SymScalar::i_unit();
    SymScalar c = Rat(dist(rng) - 150, 5) * SymScalar::pi_half_pow(dist(rng) % 5 - 2);
    if (!(a * (b + c) == a * b + a * c) || !((a + b) + c == a + (b + c)))
      fail("SymScalar ring axioms");
  }
  if (r.pass) r.detail = quick ? "reduced scales" : "stated exhaustive/randomized scales";
  return r;
}

}  // namespace selftest_detail

inline std::vector<CriterionResult> run_acceptance(bool quick) {
  namespace sd = selftest_detail;
  std::vector<CriterionResult> out;
  auto timed = [&](CriterionResult r, auto start) {
    r.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.push_back(std::move(r));
  };
  auto run = [&](auto fn) {
    auto t0 = std::chrono::steady_clock::now();
    timed(fn(), t0);
  };
  run([&] { return sd::c1(); });
  run([&] { return sd::c2(quick ? 60 : 200); });
  run([&] {
    return quick ? sd::c3(2, {2, 3}, 100) : sd::c3(4, {2, 3, 5, 7}, 200);
  });
  run([&] { return quick ? sd::c4(1, {3}, 99) : sd::c4(3, {3, 5}, 225); });
  run([&] { return quick ? sd::c5(2, 1, 40) : sd::c5(4, 3, 100); });
  run([&] { return sd::c6(); });
  run([&] { return sd::c7(); });
  run([&] { return sd::c8(quick ? 120 : 500); });
  run([&] { return quick ? sd::c9(10, 5) : sd::c9(50, 20); });
  run([&] { return quick ? sd::c10(3, 40) : sd::c10(5, 100); });
  run([&] { return sd::c11(quick ? 2 : 5); });
  run([&] { return sd::c12(quick); });
  return out;
}

}  // namespace maasslab
