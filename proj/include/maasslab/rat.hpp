#pragma once

// Exact arbitrary-precision integers and rationals, plus the handful of
// valuation / power helpers everything downstream leans on.

#include <boost/multiprecision/cpp_int.hpp>

#include <limits>
#include <stdexcept>
#include <string>

namespace maasslab {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Thrown when a requested precision / iteration budget cannot be met.
class resource_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown when a p-adic L-function is evaluated at its pole.  Carries the
// residue (1 - 1/p).
class pole_error : public std::runtime_error {
 public:
  pole_error(const std::string& what, Rat residue)
      : std::runtime_error(what), residue_(std::move(residue)) {}
  const Rat& residue() const { return residue_; }

 private:
  Rat residue_;
};

inline Int ipow(Int base, long e) {
  if (e < 0) throw std::domain_error("ipow: negative exponent");
  Int r = 1;
  while (e > 0) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

// b^e for any integer e (negative exponents allowed, b != 0 then).
inline Rat rat_pow(const Rat& b, long e) {
  if (e == 0) return Rat(1);
  if (b == 0) {
    if (e > 0) return Rat(0);
    throw std::domain_error("rat_pow: 0 to negative power");
  }
  bool inv = e < 0;
  unsigned long m = inv ? static_cast<unsigned long>(-(e + 1)) + 1ul
                        : static_cast<unsigned long>(e);
  Rat r = 1, x = b;
  while (m > 0) {
    if (m & 1) r *= x;
    x *= x;
    m >>= 1;
  }
  return inv ? Rat(1) / r : r;
}

// p-adic valuation of a nonzero integer.
inline long vp_int(Int n, const Int& p) {
  if (n == 0) throw std::domain_error("vp_int: valuation of 0");
  long v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

inline long vp_rat(const Rat& r, const Int& p) {
  if (r == 0) throw std::domain_error("vp_rat: valuation of 0");
  return vp_int(boost::multiprecision::numerator(r), p) -
         vp_int(boost::multiprecision::denominator(r), p);
}

inline std::string rat_str(const Rat& r) {
  std::string s = boost::multiprecision::numerator(r).str();
  if (boost::multiprecision::denominator(r) != 1)
    s += "/" + boost::multiprecision::denominator(r).str();
  return s;
}

inline bool fits_long(const Int& n) {
  return n >= std::numeric_limits<long>::min() &&
         n <= std::numeric_limits<long>::max();
}

inline long to_long(const Int& n) {
  if (!fits_long(n)) throw std::overflow_error("to_long: out of range");
  return static_cast<long>(n);
}

// Half-integers, stored as twice their value.  Weights of all forms in this
// library live here.
struct HalfInt {
  long twice = 0;

  constexpr HalfInt() = default;
  constexpr explicit HalfInt(long twice_value) : twice(twice_value) {}
  static constexpr HalfInt whole(long n) { return HalfInt(2 * n); }
  static constexpr HalfInt halves(long t) { return HalfInt(t); }

  bool is_integer() const { return twice % 2 == 0; }
  long integer() const {
    if (!is_integer()) throw std::domain_error("HalfInt: not an integer");
    return twice / 2;
  }
  Rat as_rat() const { return Rat(twice, 2); }
  // Integer part (floor), used where a single normalization convention is
  // needed for half-integral weights.
  long floor() const { return twice >= 0 ? twice / 2 : (twice - 1) / 2; }

  friend HalfInt operator+(HalfInt a, HalfInt b) { return HalfInt(a.twice + b.twice); }
  friend HalfInt operator-(HalfInt a, HalfInt b) { return HalfInt(a.twice - b.twice); }
  friend HalfInt operator-(HalfInt a) { return HalfInt(-a.twice); }
  friend bool operator==(HalfInt a, HalfInt b) { return a.twice == b.twice; }
  friend bool operator!=(HalfInt a, HalfInt b) { return a.twice != b.twice; }
  friend bool operator<(HalfInt a, HalfInt b) { return a.twice < b.twice; }
  friend bool operator>(HalfInt a, HalfInt b) { return a.twice > b.twice; }

  std::string str() const {
    if (is_integer()) return std::to_string(integer());
    return std::to_string(twice) + "/2";
  }
};

}  // namespace maasslab
