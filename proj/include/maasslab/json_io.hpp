#pragma once

// JSON schemas for expansions and reports.  Symbolic coefficients use the
// canonical SymScalar text rendering and round-trip through SymScalar::parse;
// p-adic coefficients use the digit rendering and are output-only.

#include <maasslab/congruence.hpp>
#include <maasslab/hecke.hpp>
#include <maasslab/numeric.hpp>
#include <maasslab/qexp.hpp>
#include <maasslab/zagier.hpp>

#include <json.hpp>

namespace maasslab {

using nlohmann::json;

inline json weight_json(HalfInt w) {
  if (w.is_integer()) return json{{"num", w.integer()}, {"den", 1}};
  return json{{"num", w.twice}, {"den", 2}};
}

inline HalfInt weight_from_json(const json& j) {
  long num = j.at("num").get<long>();
  long den = j.at("den").get<long>();
  if (den == 1) return HalfInt::whole(num);
  if (den == 2) return HalfInt::halves(num);
  throw std::invalid_argument("weight: denominator must be 1 or 2");
}

inline json to_json(const HarmonicQExp& f) {
  json plus = json::array(), minus = json::array();
  for (auto& [n, c] : f.plus) plus.push_back({{"n", n}, {"coeff", c.str()}});
  for (auto& [n, c] : f.minus) minus.push_back({{"n", n}, {"coeff", c.str()}});
  return json{{"family", f.family},
              {"weight", weight_json(f.weight)},
              {"level", f.level},
              {"truncation", f.trunc},
              {"plus", plus},
              {"minus_zero", f.minus_zero.str()},
              {"minus", minus}};
}

inline HarmonicQExp qexp_from_json(const json& j) {
  HarmonicQExp f;
  f.family = j.at("family").get<std::string>();
  f.weight = weight_from_json(j.at("weight"));
  f.level = j.at("level").get<long>();
  f.trunc = j.at("truncation").get<long>();
  for (auto& e : j.at("plus"))
    f.set_plus(e.at("n").get<long>(), SymScalar::parse(e.at("coeff").get<std::string>()));
  f.minus_zero = SymScalar::parse(j.at("minus_zero").get<std::string>());
  for (auto& e : j.at("minus"))
    f.set_minus(e.at("n").get<long>(), SymScalar::parse(e.at("coeff").get<std::string>()));
  return f;
}

inline json to_json(const PadicQExp& f) {
  json plus = json::array(), minus = json::array();
  for (auto& [n, c] : f.plus) plus.push_back({{"n", n}, {"coeff", c.str()}});
  for (auto& [n, c] : f.minus) minus.push_back({{"n", n}, {"coeff", c.str()}});
  json flags = json::array();
  for (auto& [n, msg] : f.flags) flags.push_back({{"n", n}, {"flag", msg}});
  json out{{"family", f.family},
           {"weight", json{{"residue", f.weight.residue}, {"s", f.weight.s_component.str()}}},
           {"level", f.level},
           {"truncation", f.trunc},
           {"plus", plus},
           {"minus_zero", f.minus_zero.str()},
           {"minus", minus},
           {"padic", json{{"p", f.p}, {"precision", f.prec}}}};
  if (!flags.empty()) out["flags"] = flags;
  return out;
}

inline json to_json(const HeckeReport& r) {
  json j{{"form", r.form},       {"operator", r.op},
         {"p", r.p},             {"eigenvalue", r.eigenvalue},
         {"checked_range", r.checked_range}, {"pass", r.pass}};
  j["first_failure"] = r.first_failure ? json(*r.first_failure) : json(nullptr);
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

inline json to_json(const CongruenceReport& r) {
  auto floor_json = [](const std::optional<Rat>& v) {
    return v ? json(rat_str(*v)) : json("exceeds precision");
  };
  json j{{"form_a", r.form_a}, {"form_b", r.form_b}, {"p", r.p},
         {"checked_range", r.checked_range}, {"pass", r.pass}};
  if (r.asserted_level) j["asserted_level"] = *r.asserted_level;
  j["plus_floor"] = floor_json(r.plus_floor);
  j["minus_floor"] = floor_json(r.minus_floor);
  j["const_floor"] = floor_json(r.const_floor);
  if (!r.exceptional.empty()) j["exceptional"] = r.exceptional;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

inline json to_json(const ZagierReport& r) {
  return json{{"n", r.n},
              {"s", r.s},
              {"M", r.M},
              {"tol", r.tol},
              {"vanishing_branch", r.vanishing_branch},
              {"max_coeff_dev", r.max_coeff_dev},
              {"partial_sum_dev", r.partial_sum_dev},
              {"max_imag", r.max_imag},
              {"pass", r.pass}};
}

inline json to_json(const LimitReport& r) {
  auto rats = [](const std::vector<Rat>& v) {
    json a = json::array();
    for (auto& x : v) a.push_back(rat_str(x));
    return a;
  };
  json j{{"family", r.family}, {"p", r.p}, {"depth", r.depth}, {"range", r.range},
         {"pass", r.pass}};
  j["plus_part"] = rats(r.plus_part);
  j["minus_part"] = rats(r.minus_part);
  j["plus_const"] = rats(r.plus_const);
  j["minus_const"] = rats(r.minus_const);
  j["plus_const_pole"] = r.plus_const_pole;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

inline json to_json(const PointEval& e) {
  return json{{"z", {e.z.real(), e.z.imag()}},
              {"truncation", e.truncation},
              {"value", {e.value.real(), e.value.imag()}},
              {"tail_estimate", e.tail_estimate},
              {"in_reliable_window", e.in_reliable_window},
              {"truncation_warning", e.truncation_warning}};
}

// Display-style text rendering: rational constant first, ascending q-powers,
// sign-aware joining; harmonic expansions append the y-part and the
// incomplete-gamma terms.
inline std::string render_expansion_text(const HarmonicQExp& f) {
  std::string out;
  bool first = true;
  auto join = [&](std::string piece) {
    if (first) {
      out += piece;
    } else if (!piece.empty() && piece[0] == '-') {
      out += " - " + piece.substr(1);
    } else {
      out += " + " + piece;
    }
    first = false;
  };
  for (auto& [n, c] : f.plus) {
    if (c.is_zero()) continue;
    std::string piece;
    if (n == 0) {
      piece = c.is_rational() ? rat_str(c.rational_value()) : "(" + c.str() + ")";
    } else {
      if (c.is_rational()) {
        Rat r = c.rational_value();
        if (r == -1)
          piece = "-";
        else if (r != 1)
          piece = rat_str(r);
      } else {
        piece = "(" + c.str() + ")";
      }
      piece += "q";
      if (n != 1) piece += "^" + std::to_string(n);
    }
    join(piece);
  }
  if (!f.minus_zero.is_zero()) {
    HalfInt e = HalfInt::whole(1) - f.weight;
    join("(" + f.minus_zero.str() + ")*y^(" + e.str() + ")");
  }
  for (auto& [n, c] : f.minus) {
    if (c.is_zero()) continue;
    HalfInt e = HalfInt::whole(1) - f.weight;
    join("(" + c.str() + ")*G(" + e.str() + ", " + std::to_string(-4 * n) + "*pi*y)q^" +
         std::to_string(n));
  }
  return out.empty() ? "0" : out;
}

inline std::string render_expansion_text(const PadicQExp& f) {
  std::string out;
  bool first = true;
  for (auto& [n, c] : f.plus) {
    std::string piece = "(" + c.str() + ")";
    if (n != 0) {
      piece += "q";
      if (n != 1) piece += "^" + std::to_string(n);
    }
    out += first ? piece : " + " + piece;
    first = false;
  }
  if (!f.minus_zero.is_zero()) {
    out += (first ? "" : " + ") + std::string("(") + f.minus_zero.str() + ")*y^(1-k)";
    first = false;
  }
  for (auto& [n, c] : f.minus) {
    out += (first ? "" : " + ") + std::string("(") + c.str() + ")*G(1-k, " +
           std::to_string(-4 * n) + "*pi*y)q^" + std::to_string(n);
    first = false;
  }
  return out.empty() ? "0" : out;
}

}  // namespace maasslab
