#pragma once

// Exact symbolic coefficients: rational linear combinations of monomials in
// the formal generators i, pi^(1/2), sqrt(n), zeta(m) (m odd >= 3) and
// L(D, s) (D fundamental, s >= 2).  Distinct generators are treated as
// algebraically independent; equality is equality of canonical forms.
// i^2 = -1 and sqrt(m)sqrt(n) = g*sqrt(mn/g^2) fold into the rational part.

#include <maasslab/arith.hpp>
#include <maasslab/rat.hpp>

#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace maasslab {

struct Monomial {
  int i_exp = 0;    // 0 or 1 in canonical form
  int pi_half = 0;  // exponent of pi^(1/2), any integer
  long sqrt_rad = 1;  // squarefree radicand >= 1 (1 = no surd)
  std::map<long, int> zeta;                   // m -> exponent
  std::map<std::pair<long, long>, int> lval;  // (D, s) -> exponent

  bool operator==(const Monomial& o) const {
    return i_exp == o.i_exp && pi_half == o.pi_half && sqrt_rad == o.sqrt_rad &&
           zeta == o.zeta && lval == o.lval;
  }
  bool operator<(const Monomial& o) const {
    return std::tie(i_exp, pi_half, sqrt_rad, zeta, lval) <
           std::tie(o.i_exp, o.pi_half, o.sqrt_rad, o.zeta, o.lval);
  }
  bool is_unit() const {
    return i_exp == 0 && pi_half == 0 && sqrt_rad == 1 && zeta.empty() &&
           lval.empty();
  }
};

namespace detail {

// Product of two monomials; the folded-out rational factor is returned too.
inline std::pair<Monomial, Rat> mul_monomial(const Monomial& a, const Monomial& b) {
  Monomial m;
  Rat fac = 1;
  int ie = a.i_exp + b.i_exp;
  if (ie >= 2) {
    ie -= 2;
    fac = -fac;
  }
  m.i_exp = ie;
  m.pi_half = a.pi_half + b.pi_half;
  long g = std::gcd(a.sqrt_rad, b.sqrt_rad);
  m.sqrt_rad = (a.sqrt_rad / g) * (b.sqrt_rad / g);
  fac *= g;
  m.zeta = a.zeta;
  for (auto& [k, e] : b.zeta) {
    int ne = (m.zeta[k] += e);
    if (ne == 0) m.zeta.erase(k);
  }
  m.lval = a.lval;
  for (auto& [k, e] : b.lval) {
    int ne = (m.lval[k] += e);
    if (ne == 0) m.lval.erase(k);
  }
  return {m, fac};
}

inline std::pair<Monomial, Rat> inverse_monomial(const Monomial& a) {
  Monomial m;
  Rat fac = 1;
  if (a.i_exp == 1) {
    m.i_exp = 1;  // 1/i = -i
    fac = -1;
  }
  m.pi_half = -a.pi_half;
  if (a.sqrt_rad != 1) {
    m.sqrt_rad = a.sqrt_rad;  // 1/sqrt(r) = sqrt(r)/r
    fac /= a.sqrt_rad;
  }
  for (auto& [k, e] : a.zeta) m.zeta[k] = -e;
  for (auto& [k, e] : a.lval) m.lval[k] = -e;
  return {m, fac};
}

}  // namespace detail

class SymScalar {
 public:
  SymScalar() = default;
  SymScalar(long n) { insert(Monomial{}, Rat(n)); }  // NOLINT(runtime/explicit)
  SymScalar(Rat r) { insert(Monomial{}, std::move(r)); }  // NOLINT

  static SymScalar i_unit() {
    SymScalar s;
    Monomial m;
    m.i_exp = 1;
    s.insert(m, Rat(1));
    return s;
  }

  // i^e for any integer e.
  static SymScalar i_pow(long e) {
    long r = ((e % 4) + 4) % 4;
    SymScalar s;
    Monomial m;
    Rat c = 1;
    if (r == 1 || r == 3) m.i_exp = 1;
    if (r == 2 || r == 3) c = -1;
    s.insert(m, c);
    return s;
  }

  // pi^(e/2)
  static SymScalar pi_half_pow(long e) {
    SymScalar s;
    Monomial m;
    m.pi_half = static_cast<int>(e);
    s.insert(m, Rat(1));
    return s;
  }
  static SymScalar pi_pow(long e) { return pi_half_pow(2 * e); }

  static SymScalar zeta_sym(long m_arg) {
    if (m_arg < 3 || m_arg % 2 == 0)
      throw std::domain_error("zeta symbol requires odd argument >= 3");
    SymScalar s;
    Monomial m;
    m.zeta[m_arg] = 1;
    s.insert(m, Rat(1));
    return s;
  }

  // L(s, chi_D); the trivial character is routed to zeta at construction.
  static SymScalar lval_sym(long D, long s_arg) {
    if (s_arg < 2) throw std::domain_error("L symbol requires s >= 2");
    if (D == 1) return zeta_sym(s_arg);
    if (!is_fundamental_disc(D))
      throw std::domain_error("L symbol requires fundamental discriminant");
    SymScalar s;
    Monomial m;
    m.lval[{D, s_arg}] = 1;
    s.insert(m, Rat(1));
    return s;
  }

  // sqrt(n) for n >= 1, with the square part folded into the rational.
  static SymScalar sqrt_int(long n) {
    if (n < 1) throw std::domain_error("sqrt_int: n must be positive");
    auto [s, f] = squarefree_part(n);
    SymScalar out;
    Monomial m;
    m.sqrt_rad = s;
    out.insert(m, Rat(f));
    return out;
  }

  // n^(num/2) for n >= 1 positive integer base, half-integer exponent.
  static SymScalar int_pow_half(long n, HalfInt e) {
    if (n < 1) throw std::domain_error("int_pow_half: base must be positive");
    if (e.is_integer()) return SymScalar(rat_pow(Rat(n), e.integer()));
    long fl = e.floor();  // e = fl + 1/2
    return SymScalar(rat_pow(Rat(n), fl)) * sqrt_int(n);
  }

  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 && terms_.begin()->first.is_unit();
  }
  Rat rational_value() const {
    if (terms_.empty()) return Rat(0);
    if (!is_rational()) throw std::domain_error("SymScalar: not rational");
    return terms_.begin()->second;
  }
  size_t term_count() const { return terms_.size(); }
  const std::map<Monomial, Rat>& terms() const { return terms_; }

  friend SymScalar operator+(const SymScalar& a, const SymScalar& b) {
    SymScalar s = a;
    for (auto& [m, c] : b.terms_) s.insert(m, c);
    return s;
  }
  friend SymScalar operator-(const SymScalar& a, const SymScalar& b) {
    SymScalar s = a;
    for (auto& [m, c] : b.terms_) s.insert(m, -c);
    return s;
  }
  friend SymScalar operator-(const SymScalar& a) {
    SymScalar s;
    for (auto& [m, c] : a.terms_) s.insert(m, -c);
    return s;
  }
  friend SymScalar operator*(const SymScalar& a, const SymScalar& b) {
    SymScalar s;
    for (auto& [ma, ca] : a.terms_)
      for (auto& [mb, cb] : b.terms_) {
        auto [m, fac] = detail::mul_monomial(ma, mb);
        s.insert(m, ca * cb * fac);
      }
    return s;
  }
  SymScalar& operator+=(const SymScalar& b) { return *this = *this + b; }
  SymScalar& operator-=(const SymScalar& b) { return *this = *this - b; }
  SymScalar& operator*=(const SymScalar& b) { return *this = *this * b; }

  friend bool operator==(const SymScalar& a, const SymScalar& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const SymScalar& a, const SymScalar& b) {
    return !(a == b);
  }

  // Complex conjugation: i -> -i, all real generators fixed.
  SymScalar conj() const {
    SymScalar s;
    for (auto& [m, c] : terms_) s.insert(m, m.i_exp == 1 ? -c : c);
    return s;
  }

  // a / b for b a single monomial.  Empty unless *this is a rational
  // multiple of a single monomial (zero divides to zero).
  std::optional<SymScalar> ratio(const SymScalar& b) const {
    if (b.is_zero()) throw std::domain_error("SymScalar: division by zero");
    if (b.terms_.size() != 1) return std::nullopt;
    if (is_zero()) return SymScalar();
    if (terms_.size() != 1) return std::nullopt;
    auto& [mb, cb] = *b.terms_.begin();
    auto& [ma, ca] = *terms_.begin();
    auto [ib, fb] = detail::inverse_monomial(mb);
    auto [m, fac] = detail::mul_monomial(ma, ib);
    SymScalar s;
    s.insert(m, ca / cb * fb * fac);
    return s;
  }

  std::string str() const;
  static SymScalar parse(const std::string& text);

 private:
  void insert(const Monomial& m, Rat c) {
    if (c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, std::move(c));
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  std::map<Monomial, Rat> terms_;
};

inline SymScalar operator*(const Rat& r, const SymScalar& s) {
  return SymScalar(r) * s;
}

// epsilon_n: 1 for n = 1 mod 4, i for n = 3 mod 4.
inline SymScalar eps(long n) {
  if (n < 1 || n % 2 == 0) throw std::domain_error("eps: n must be odd positive");
  return n % 4 == 1 ? SymScalar(1) : SymScalar::i_unit();
}

// Exact Gamma at positive integers and half-integers:
// Gamma(m) = (m-1)!,  Gamma(m + 1/2) = ((2m)! / (4^m m!)) pi^(1/2).
inline SymScalar gamma_half(HalfInt t) {
  if (t.twice <= 0) throw std::domain_error("gamma_half: argument must be positive");
  if (t.is_integer()) {
    Int f = 1;
    for (long j = 2; j < t.integer(); ++j) f *= j;
    return SymScalar(Rat(f));
  }
  long m = (t.twice - 1) / 2;  // t = m + 1/2
  Int num = 1;
  for (long j = 2; j <= 2 * m; ++j) num *= j;
  Int den = ipow(4, m);
  for (long j = 2; j <= m; ++j) den *= j;
  return Rat(num, den) * SymScalar::pi_half_pow(1);
}

// ---- canonical text rendering -------------------------------------------

namespace detail {

inline std::string pi_factor_str(int e) {
  if (e == 2) return "pi";
  if (e % 2 == 0) {
    int w = e / 2;
    return w < 0 ? "pi^(" + std::to_string(w) + ")" : "pi^" + std::to_string(w);
  }
  return "pi^(" + std::to_string(e) + "/2)";
}

inline void append_exp(std::string& s, int e) {
  if (e == 1) return;
  s += e < 0 ? "^(" + std::to_string(e) + ")" : "^" + std::to_string(e);
}

}  // namespace detail

inline std::string SymScalar::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto& [m, c] : terms_) {
    if (!first) out += " + ";
    first = false;
    std::vector<std::string> factors;
    if (m.i_exp == 1) factors.push_back("i");
    if (m.pi_half != 0) factors.push_back(detail::pi_factor_str(m.pi_half));
    if (m.sqrt_rad != 1) factors.push_back("sqrt(" + std::to_string(m.sqrt_rad) + ")");
    for (auto& [arg, e] : m.zeta) {
      std::string f = "zeta(" + std::to_string(arg) + ")";
      detail::append_exp(f, e);
      factors.push_back(f);
    }
    for (auto& [key, e] : m.lval) {
      std::string f = "L(" + std::to_string(key.first) + "," + std::to_string(key.second) + ")";
      detail::append_exp(f, e);
      factors.push_back(f);
    }
    if (factors.empty()) {
      out += rat_str(c);
      continue;
    }
    std::string joined;
    for (size_t j = 0; j < factors.size(); ++j) {
      if (j) joined += "*";
      joined += factors[j];
    }
    if (c == 1) {
      out += joined;
    } else {
      out += "(" + rat_str(c) + ")*" + joined;
    }
  }
  return out;
}

namespace detail {

inline Rat parse_rational(const std::string& tok) {
  std::string t = tok;
  if (!t.empty() && t.front() == '(' && t.back() == ')') t = t.substr(1, t.size() - 2);
  auto slash = t.find('/');
  if (slash == std::string::npos) return Rat(Int(t));
  return Rat(Int(t.substr(0, slash)), Int(t.substr(slash + 1)));
}

// "name(args)^exp" -> args string and exponent.
inline std::pair<std::string, int> parse_call(const std::string& tok, size_t open) {
  auto close = tok.find(')', open);
  if (close == std::string::npos) throw std::invalid_argument("SymScalar parse: bad token " + tok);
  std::string args = tok.substr(open + 1, close - open - 1);
  int e = 1;
  if (close + 1 < tok.size()) {
    std::string rest = tok.substr(close + 1);
    if (rest.size() < 2 || rest[0] != '^')
      throw std::invalid_argument("SymScalar parse: bad token " + tok);
    rest = rest.substr(1);
    if (rest.front() == '(' && rest.back() == ')') rest = rest.substr(1, rest.size() - 2);
    e = std::stoi(rest);
  }
  return {args, e};
}

}  // namespace detail

inline SymScalar SymScalar::parse(const std::string& text) {
  if (text == "0") return SymScalar();
  SymScalar out;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t next = text.find(" + ", pos);
    std::string term = text.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
    pos = next == std::string::npos ? text.size() : next + 3;

    Monomial m;
    Rat c = 1;
    size_t fpos = 0;
    while (fpos < term.size()) {
      // Split on '*' at depth 0 (tokens contain at most one '(...)').
      size_t fend = fpos;
      int depth = 0;
      while (fend < term.size() && !(term[fend] == '*' && depth == 0)) {
        if (term[fend] == '(') ++depth;
        if (term[fend] == ')') --depth;
        ++fend;
      }
      std::string tok = term.substr(fpos, fend - fpos);
      fpos = fend + 1;
      if (tok.empty()) throw std::invalid_argument("SymScalar parse: empty factor");

      if (tok == "i") {
        int ie = m.i_exp + 1;
        if (ie >= 2) {
          ie -= 2;
          c = -c;
        }
        m.i_exp = ie;
      } else if (tok == "pi") {
        m.pi_half += 2;
      } else if (tok.rfind("pi^", 0) == 0) {
        std::string e = tok.substr(3);
        if (e.front() == '(' && e.back() == ')') e = e.substr(1, e.size() - 2);
        auto slash = e.find('/');
        if (slash == std::string::npos)
          m.pi_half += 2 * std::stoi(e);
        else
          m.pi_half += std::stoi(e.substr(0, slash));  // ".../2"
      } else if (tok.rfind("sqrt(", 0) == 0) {
        auto [args, e] = detail::parse_call(tok, 4);
        if (e != 1) throw std::invalid_argument("SymScalar parse: sqrt exponent");
        long g = std::gcd(m.sqrt_rad, std::stol(args));
        m.sqrt_rad = (m.sqrt_rad / g) * (std::stol(args) / g);
        c *= g;
      } else if (tok.rfind("zeta(", 0) == 0) {
        auto [args, e] = detail::parse_call(tok, 4);
        int ne = (m.zeta[std::stol(args)] += e);
        if (ne == 0) m.zeta.erase(std::stol(args));
      } else if (tok.rfind("L(", 0) == 0) {
        auto [args, e] = detail::parse_call(tok, 1);
        auto comma = args.find(',');
        if (comma == std::string::npos) throw std::invalid_argument("SymScalar parse: bad L token");
        long D = std::stol(args.substr(0, comma));
        long s = std::stol(args.substr(comma + 1));
        auto key = std::make_pair(D, s);
        int ne = (m.lval[key] += e);
        if (ne == 0) m.lval.erase(key);
      } else {
        c *= detail::parse_rational(tok);
      }
    }
    out.insert(m, c);
  }
  return out;
}

}  // namespace maasslab
