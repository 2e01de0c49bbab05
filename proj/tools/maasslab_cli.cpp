// maasslab: construct harmonic Maass Hecke eigenforms and their p-adic
// avatars as exact truncated expansions, and verify the finitely checkable
// identities (Hecke eigenvalues, xi-images, Dirichlet-series identities,
// stabilization, Kummer congruences, p-adic limits, numerical harmonicity).
//
// Exit codes: 0 pass, 1 verification failure, 2 usage error, 3 resource or
// precision exhaustion.

#include <CLI11.hpp>

#include <maasslab/json_io.hpp>
#include <maasslab/selftest.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

using namespace maasslab;

namespace {

struct RunConfig {
  long trunc = 100;
  long prec = 10;
  double tol = 1e-8;          // exact-identity float comparisons
  double tol_numeric = 1e-5;  // residual checks

  static RunConfig from_env() {
    RunConfig c;
    if (const char* e = std::getenv("MAASSLAB_TRUNC")) c.trunc = std::atol(e);
    if (const char* e = std::getenv("MAASSLAB_PREC")) c.prec = std::atol(e);
    if (const char* e = std::getenv("MAASSLAB_TOL")) c.tol = std::atof(e);
    return c;
  }
};

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream os(out_path);
  if (!os) throw std::runtime_error("cannot open output file " + out_path);
  os << text << "\n";
}

int verdict(bool pass) { return pass ? 0 : 1; }

}  // namespace

int run(int argc, char** argv) {
  RunConfig cfg = RunConfig::from_env();
  CLI::App app{"maasslab: exact harmonic Maass Hecke eigenforms and their p-adic limits"};
  app.require_subcommand(1);

  std::string family, format = "text", out_path, generator = "S";
  long k = 1, r = 1, k2 = 6, p = 5, n_trunc = cfg.trunc, prec = cfg.prec;
  long range = 100, k1c = 6, k2c = 10, level_a = 1, depth = 5, kn = 6, km = 10;
  long k0 = 1, r0 = 1, disc = -4, s_arg = 2, M = 100;
  double tol = cfg.tol, tol_num = cfg.tol_numeric, re = 0.1, im = 1.2, h_step = 1e-3;
  bool as_json = false, quick = false, table = false;

  // ---- expand ----
  auto* cmd_expand = app.add_subcommand("expand", "construct a truncated expansion");
  cmd_expand->add_option("--family", family, "Eis|EisP|G|H|Gp|Hp|Cohen")->required();
  cmd_expand->add_option("-k,--k", k, "G-family parameter (weight -2k)");
  cmd_expand->add_option("-r,--r", r, "H-family parameter (weight -r+1/2)");
  cmd_expand->add_option("--k2", k2, "Eisenstein weight");
  cmd_expand->add_option("--rp1", k2, "Cohen index (alias of --k2)");
  cmd_expand->add_option("-p,--p", p, "prime");
  cmd_expand->add_option("-n,--truncation", n_trunc, "truncation");
  cmd_expand->add_option("--prec", prec, "p-adic precision");
  cmd_expand->add_option("--format", format, "text|json");
  cmd_expand->add_option("--out", out_path, "output file");

  // ---- eval ----
  auto* cmd_eval = app.add_subcommand("eval", "evaluate a form at a point of H");
  cmd_eval->add_option("--family", family, "Eis|EisP|G|H")->required();
  cmd_eval->add_option("-k,--k", k, "");
  cmd_eval->add_option("-r,--r", r, "");
  cmd_eval->add_option("--k2", k2, "");
  cmd_eval->add_option("-p,--p", p, "");
  cmd_eval->add_option("--re", re, "Re z")->required();
  cmd_eval->add_option("--im", im, "Im z")->required();
  cmd_eval->add_option("-n,--truncation", n_trunc, "");
  cmd_eval->add_option("--format", format, "text|json|csv");
  cmd_eval->add_option("--out", out_path, "");

  // ---- verify ----
  auto* cmd_verify = app.add_subcommand("verify", "run a named verification");
  cmd_verify->require_subcommand(1);
  auto add_common = [&](CLI::App* c) {
    c->add_flag("--json", as_json, "JSON report");
    c->add_option("--out", out_path, "output file");
  };

  auto* v_hecke = cmd_verify->add_subcommand("hecke", "Hecke eigenvalue check");
  v_hecke->add_option("--family", family, "G|H")->required();
  v_hecke->add_option("-k,--k", k, "");
  v_hecke->add_option("-r,--r", r, "");
  v_hecke->add_option("-p,--p", p, "")->required();
  v_hecke->add_option("--range", range, "");
  add_common(v_hecke);

  auto* v_xi = cmd_verify->add_subcommand("xi", "xi-image proportionality");
  v_xi->add_option("--family", family, "G|H")->required();
  v_xi->add_option("-k,--k", k, "");
  v_xi->add_option("-r,--r", r, "");
  v_xi->add_option("--range", range, "");
  add_common(v_xi);

  auto* v_inter = cmd_verify->add_subcommand("intertwine", "xi/Hecke intertwining");
  v_inter->add_option("--family", family, "G|H")->required();
  v_inter->add_option("-k,--k", k, "");
  v_inter->add_option("-r,--r", r, "");
  v_inter->add_option("-p,--p", p, "")->required();
  v_inter->add_option("--range", range, "");
  add_common(v_inter);

  auto* v_zagier = cmd_verify->add_subcommand("zagier", "Gauss-sum Dirichlet identity");
  v_zagier->add_option("-n,--n", kn, "")->required();
  v_zagier->add_option("-s,--s", s_arg, "");
  v_zagier->add_option("-M,--M", M, "");
  v_zagier->add_option("--tol", tol, "");
  v_zagier->add_flag("--table", table, "per-m CSV table");
  add_common(v_zagier);

  auto* v_cong = cmd_verify->add_subcommand("congruence", "weight-family congruence");
  v_cong->add_option("-p,--p", p, "")->required();
  v_cong->add_option("--k1", k1c, "")->required();
  v_cong->add_option("--k2", k2c, "")->required();
  v_cong->add_option("-a,--a", level_a, "")->required();
  v_cong->add_option("--range", range, "");
  v_cong->add_flag("--csv", table, "CSV valuation table");
  add_common(v_cong);

  auto* v_limit = cmd_verify->add_subcommand("limit", "p-adic limit convergence");
  v_limit->add_option("--family", family, "G|H")->required();
  v_limit->add_option("--k0", k0, "G target (0 = weight-0 target)");
  v_limit->add_option("--r0", r0, "H target");
  v_limit->add_option("-p,--p", p, "");
  v_limit->add_option("--depth", depth, "");
  v_limit->add_option("--range", range, "");
  v_limit->add_option("--prec", prec, "");
  add_common(v_limit);

  auto* v_serre = cmd_verify->add_subcommand("serre", "xi_0 preimage of Serre's E_2");
  v_serre->add_option("-p,--p", p, "");
  v_serre->add_option("--depth", depth, "");
  v_serre->add_option("--range", range, "");
  add_common(v_serre);

  auto* v_gammaval = cmd_verify->add_subcommand("gammaval", "Gamma^(p) valuation diagnostic");
  v_gammaval->add_option("-p,--p", p, "");
  v_gammaval->add_option("--prec", prec, "");
  add_common(v_gammaval);

  auto* v_kummer = cmd_verify->add_subcommand("kummer", "classical Kummer congruence");
  v_kummer->add_option("-p,--p", p, "")->required();
  v_kummer->add_option("-n,--n", kn, "")->required();
  v_kummer->add_option("-m,--m", km, "")->required();
  v_kummer->add_option("-a,--a", level_a, "");
  add_common(v_kummer);

  auto* v_genk = cmd_verify->add_subcommand("genkummer", "twisted Kummer congruence");
  v_genk->add_option("-p,--p", p, "")->required();
  v_genk->add_option("--disc", disc, "fundamental discriminant of chi")->required();
  v_genk->add_option("-n,--n", kn, "")->required();
  v_genk->add_option("-m,--m", km, "")->required();
  v_genk->add_option("-a,--a", level_a, "");
  add_common(v_genk);

  auto* v_lap = cmd_verify->add_subcommand("laplacian", "harmonicity residual");
  v_lap->add_option("--family", family, "G|H")->required();
  v_lap->add_option("-k,--k", k, "");
  v_lap->add_option("-r,--r", r, "");
  v_lap->add_option("--re", re, "");
  v_lap->add_option("--im", im, "");
  v_lap->add_option("--step", h_step, "finite-difference step");
  v_lap->add_option("-n,--truncation", n_trunc, "");
  v_lap->add_option("--tol", tol_num, "");
  add_common(v_lap);

  auto* v_mod = cmd_verify->add_subcommand("modularity", "transformation residual");
  v_mod->add_option("-k,--k", k, "G-family parameter");
  v_mod->add_option("--gen", generator, "S|T");
  v_mod->add_option("--re", re, "");
  v_mod->add_option("--im", im, "");
  v_mod->add_option("-n,--truncation", n_trunc, "");
  v_mod->add_option("--tol", tol_num, "");
  add_common(v_mod);

  // ---- selftest ----
  auto* cmd_selftest = app.add_subcommand("selftest", "run the acceptance suite");
  cmd_selftest->add_flag("--quick", quick, "reduced ranges");
  cmd_selftest->add_flag("--json", as_json, "structured summary");
  cmd_selftest->add_option("--out", out_path, "");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  // ---------- dispatch ----------
  if (*cmd_expand) {
    std::string text;
    json j;
    if (family == "Eis") {
      auto f = eisenstein(k2, n_trunc);
      text = render_expansion_text(f);
      j = to_json(f);
    } else if (family == "EisP") {
      auto f = eisenstein_p(k2, p, n_trunc);
      text = render_expansion_text(f);
      j = to_json(f);
    } else if (family == "G") {
      auto f = maass_g(k, n_trunc);
      text = render_expansion_text(f);
      j = to_json(f);
    } else if (family == "H") {
      auto f = maass_h(r, n_trunc);
      text = render_expansion_text(f);
      j = to_json(f);
    } else if (family == "Gp") {
      auto f = maass_g_p(k, p, n_trunc, prec);
      text = render_expansion_text(f);
      j = to_json(f);
    } else if (family == "Hp") {
      auto f = maass_h_p(r, p, n_trunc, prec);
      text = render_expansion_text(f);
      j = to_json(f);
    } else if (family == "Cohen") {
      // weight rp1 + 1/2 Cohen-Eisenstein series
      HarmonicQExp f;
      f.family = "Cohen";
      f.weight = HalfInt::halves(2 * k2 + 1);
      f.level = 4;
      f.trunc = n_trunc;
      long sign = k2 % 2 == 0 ? 1 : -1;
      f.set_plus(0, SymScalar(cohen_h(k2, 0)));
      for (long n = 1; n <= n_trunc; ++n) f.set_plus(n, SymScalar(cohen_h(k2, sign * n)));
      text = render_expansion_text(f);
      j = to_json(f);
    } else {
      throw CLI::ValidationError("--family", "unknown family " + family);
    }
    emit(format == "json" ? j.dump(2) : text, out_path);
    return 0;
  }

  if (*cmd_eval) {
    HarmonicQExp f;
    if (family == "Eis")
      f = eisenstein(k2, n_trunc);
    else if (family == "EisP")
      f = eisenstein_p(k2, p, n_trunc);
    else if (family == "G")
      f = maass_g(k, n_trunc);
    else if (family == "H")
      f = maass_h(r, n_trunc);
    else
      throw CLI::ValidationError("--family", "unknown family " + family);
    PointEval ev = eval_form(f, {re, im}, n_trunc);
    if (format == "json") {
      emit(to_json(ev).dump(2), out_path);
    } else if (format == "csv") {
      std::ostringstream os;
      os << "re,im,value_re,value_im,tail,reliable\n"
         << re << "," << im << "," << ev.value.real() << "," << ev.value.imag() << ","
         << ev.tail_estimate << "," << ev.in_reliable_window;
      emit(os.str(), out_path);
    } else {
      std::ostringstream os;
      os << family << "(" << re << " + " << im << "i) = " << ev.value.real() << " + "
         << ev.value.imag() << "i   (tail ~ " << ev.tail_estimate << ")";
      if (!ev.in_reliable_window) os << "  [outside documented window Im z in [0.8, 3]]";
      emit(os.str(), out_path);
    }
    return 0;
  }

  if (*v_hecke) {
    HeckeReport rep;
    if (family == "G") {
      auto g = maass_g(k, range * p);
      rep = eigen_check(g, HeckeOp::Tp, p,
                        SymScalar(Rat(1) + rat_pow(Rat(p), -(2 * k + 1))), range);
    } else if (family == "H") {
      auto hf = maass_h(r, range * p * p);
      rep = eigen_check(hf, HeckeOp::Tp2, p,
                        SymScalar(Rat(1) + rat_pow(Rat(p), -(2 * r + 1))), range);
    } else {
      throw CLI::ValidationError("--family", "hecke: family must be G or H");
    }
    emit(as_json ? to_json(rep).dump(2)
                 : std::string(rep.pass ? "PASS" : "FAIL") + " " + rep.form + " | " + rep.op +
                       ", p=" + std::to_string(p) + ", eigenvalue " + rep.eigenvalue +
                       ", range " + std::to_string(rep.checked_range) +
                       (rep.first_failure
                            ? ", first failure at n=" + std::to_string(*rep.first_failure)
                            : ""),
         out_path);
    return verdict(rep.pass);
  }

  if (*v_xi) {
    bool pass = true;
    std::string detail;
    if (family == "G") {
      auto xi = xi_image(maass_g(k, range));
      auto e = eisenstein(2 * k + 2, range);
      SymScalar expect =
          Rat(k % 2 == 0 ? -1 : 1) * rat_pow(Rat(2), 2 * k + 2) * SymScalar::pi_pow(1);
      for (long n = 0; n <= range && pass; ++n) {
        auto q = xi.plus_at(n).ratio(e.plus_at(n));
        if (!q || !(*q == expect)) pass = false;
      }
      detail = "constant " + expect.str();
    } else if (family == "H") {
      auto xi = xi_image(maass_h(r, range));
      long sign_img = (r + 1) % 2 == 0 ? 1 : -1;
      SymScalar base_img;
      Rat base_cohen;
      bool have = false;
      for (long n = 1; n <= range && pass; ++n) {
        Rat ch = cohen_h(r + 1, sign_img * n);
        SymScalar im_c = xi.plus_at(n);
        if (ch == 0) {
          if (!im_c.is_zero()) pass = false;
          continue;
        }
        if (im_c.is_zero()) {
          pass = false;
          break;
        }
        if (!have) {
          base_img = im_c;
          base_cohen = ch;
          have = true;
          continue;
        }
        auto q = im_c.ratio(base_img);
        if (!q || !(*q == SymScalar(ch / base_cohen))) pass = false;
      }
      detail = "ratios against Cohen coefficients";
    } else {
      throw CLI::ValidationError("--family", "xi: family must be G or H");
    }
    emit((pass ? "PASS xi " : "FAIL xi ") + family + " (" + detail + ")", out_path);
    return verdict(pass);
  }

  if (*v_inter) {
    HarmonicQExp f;
    if (family == "G")
      f = maass_g(k, range * p);
    else if (family == "H")
      f = maass_h(r, range * p * p);
    else
      throw CLI::ValidationError("--family", "intertwine: family must be G or H");
    bool pass = intertwine_check(f, p, range);
    emit((pass ? "PASS" : "FAIL") + std::string(" intertwining, family ") + family +
             ", p=" + std::to_string(p) + ", range " + std::to_string(range),
         out_path);
    return verdict(pass);
  }

  if (*v_zagier) {
    auto rep = verify_zagier(kn, s_arg, M, tol);
    if (table) {
      std::ostringstream os;
      os << "m,a_m_re,a_m_im" << (rep.vanishing_branch ? "" : ",rhs_m") << "\n";
      auto a = en_coeffs(kn, M);
      std::optional<DirichletPoly> rhs;
      if (!rep.vanishing_branch) rhs = rhs_coeffs(kn, M);
      for (long m = 1; m <= M; ++m) {
        os << m << "," << a[m].real() << "," << a[m].imag();
        if (rhs) os << "," << rat_str(rhs->at(m));
        os << "\n";
      }
      emit(os.str(), out_path.empty() ? "" : out_path);
      return verdict(rep.pass);
    }
    emit(as_json ? to_json(rep).dump(2)
                 : std::string(rep.pass ? "PASS" : "FAIL") + " zagier n=" + std::to_string(kn) +
                       (rep.vanishing_branch ? " (vanishing branch)" : "") + ", max dev " +
                       std::to_string(rep.max_coeff_dev),
         out_path);
    return verdict(rep.pass);
  }

  if (*v_cong) {
    auto rep = family_congruence(p, k1c, k2c, level_a, range);
    if (table) {
      // CSV of per-n valuations for the Eisenstein pair
      auto a = eisenstein_p(k1c, p, range), b = eisenstein_p(k2c, p, range);
      std::ostringstream os;
      os << "n,vp_diff\n";
      for (long n = 0; n <= range; ++n) {
        SymScalar d = a.plus_at(n) - b.plus_at(n);
        os << n << "," << (d.is_zero() ? std::string("inf")
                                       : std::to_string(vp_rat(d.rational_value(), p)))
           << "\n";
      }
      emit(os.str(), out_path);
      return verdict(rep.pass);
    }
    emit(as_json ? to_json(rep).dump(2)
                 : std::string(rep.pass ? "PASS" : "FAIL") + " congruence mod " +
                       std::to_string(p) + "^" + std::to_string(level_a) + " for weights " +
                       std::to_string(k1c) + ", " + std::to_string(k2c) +
                       (rep.note.empty() ? "" : "\n  note: " + rep.note),
         out_path);
    return verdict(rep.pass);
  }

  if (*v_limit) {
    LimitReport rep;
    if (family == "G")
      rep = padic_limit_check_g(v_limit->count("--k0") ? k0 : 1, p, depth, range,
                                v_limit->count("--prec") ? prec : 10);
    else if (family == "H")
      rep = padic_limit_check_h(r0, p, depth, std::min(range, 30L),
                                v_limit->count("--prec") ? prec : 6);
    else
      throw CLI::ValidationError("--family", "limit: family must be G or H");
    emit(as_json ? to_json(rep).dump(2)
                 : std::string(rep.pass ? "PASS" : "FAIL") + " p-adic limit, family " + family +
                       (rep.note.empty() ? "" : "\n  note: " + rep.note),
         out_path);
    return verdict(rep.pass);
  }

  if (*v_serre) {
    bool pass = xi_serre_check(p, depth, range);
    emit((pass ? "PASS" : "FAIL") + std::string(" xi_0 preimage of Serre E_2, p=") +
             std::to_string(p),
         out_path);
    return verdict(pass);
  }

  if (*v_gammaval) {
    auto rep = gamma_valuation_report(p, prec);
    if (as_json) {
      json j{{"p", rep.p}, {"pi_valuation", rep.pi_valuation}};
      json vals = json::array();
      for (auto& [x, v] : rep.gamma_valuations) vals.push_back({{"x", x}, {"v_p", v}});
      j["gamma_valuations"] = vals;
      emit(j.dump(2), out_path);
    } else {
      std::ostringstream os;
      os << "computed valuations at p = " << rep.p << ":\n";
      for (auto& [x, v] : rep.gamma_valuations)
        os << "  v_p(Gamma_p(" << x << ")) = " << v << "\n";
      os << "  v_p(pi_p) = " << rep.pi_valuation;
      emit(os.str(), out_path);
    }
    return 0;  // diagnostic: reports, never asserts
  }

  if (*v_kummer) {
    bool pass = kummer_check(p, kn, km, level_a);
    emit((pass ? "PASS" : "FAIL") + std::string(" Kummer congruence"), out_path);
    return verdict(pass);
  }

  if (*v_genk) {
    bool pass = gen_kummer_check(p, DirichletChar::kronecker_char(disc), kn, km, level_a);
    emit((pass ? "PASS" : "FAIL") + std::string(" twisted Kummer congruence"), out_path);
    return verdict(pass);
  }

  if (*v_lap) {
    HarmonicQExp f = family == "G" ? maass_g(k, n_trunc) : maass_h(r, n_trunc);
    double res = laplacian_residual(f, {re, im}, h_step, n_trunc);
    bool pass = res < tol_num;
    std::ostringstream os;
    os << (pass ? "PASS" : "FAIL") << " laplacian residual " << res << " (tol " << tol_num
       << ")";
    emit(os.str(), out_path);
    return verdict(pass);
  }

  if (*v_mod) {
    auto g = maass_g(k, n_trunc);
    std::array<long, 4> mat = generator == "T" ? std::array<long, 4>{1, 1, 0, 1}
                                               : std::array<long, 4>{0, -1, 1, 0};
    double res = modularity_residual(g, mat, {re, im}, n_trunc);
    bool pass = res < tol_num;
    std::ostringstream os;
    os << (pass ? "PASS" : "FAIL") << " modularity residual " << res << " under " << generator;
    emit(os.str(), out_path);
    return verdict(pass);
  }

  if (*cmd_selftest) {
    auto results = run_acceptance(quick);
    bool all = true;
    if (as_json) {
      json j = json::array();
      for (auto& rr : results) {
        j.push_back({{"criterion", rr.id},
                     {"name", rr.name},
                     {"pass", rr.pass},
                     {"detail", rr.detail},
                     {"seconds", rr.seconds}});
        all = all && rr.pass;
      }
      emit(j.dump(2), out_path);
    } else {
      std::ostringstream os;
      for (auto& rr : results) {
        os << (rr.pass ? "PASS" : "FAIL") << "  criterion " << rr.id << "  (" << rr.seconds
           << "s)  " << rr.name << "\n";
        if (!rr.detail.empty()) os << "      " << rr.detail << "\n";
        all = all && rr.pass;
      }
      os << (all ? "ALL PASS" : "FAILURES PRESENT");
      emit(os.str(), out_path);
    }
    return all ? 0 : 1;
  }

  return 2;
}

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const CLI::Error& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return 2;
  } catch (const pole_error& e) {
    std::cerr << "pole: " << e.what() << " (residue " << rat_str(e.residue()) << ")\n";
    return 3;
  } catch (const resource_error& e) {
    std::cerr << "resource: " << e.what() << "\n";
    return 3;
  } catch (const std::domain_error& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
