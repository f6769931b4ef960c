#ifndef QSEP_RATIONAL_HPP
#define QSEP_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace qsep {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline int sgn(const Int& x) { return x.sign(); }
inline int sgn(const Rat& x) { return x.sign(); }

inline Int rat_num(const Rat& x) { return boost::multiprecision::numerator(x); }
inline Int rat_den(const Rat& x) { return boost::multiprecision::denominator(x); }

inline bool is_integer(const Rat& x) { return rat_den(x) == 1; }

// x^e for integer e (e < 0 requires x != 0).
inline Rat rat_pow(const Rat& x, long e) {
  if (e < 0) {
    if (x == 0) throw std::domain_error("rat_pow: 0 to negative power");
    return Rat(1) / rat_pow(x, -e);
  }
  Rat r(1), b(x);
  unsigned long k = static_cast<unsigned long>(e);
  while (k) {
    if (k & 1) r *= b;
    b *= b;
    k >>= 1;
  }
  return r;
}

inline Rat rat_abs(const Rat& x) { return x < 0 ? Rat(-x) : x; }

inline double rat_to_double(const Rat& x) { return x.convert_to<double>(); }

inline Int rat_floor(const Rat& x) {
  Int n = rat_num(x), d = rat_den(x);
  Int q = n / d;
  if (n < 0 && q * d != n) --q;
  return q;
}

// The rational with the smallest denominator in the open interval (lo, hi),
// by continued-fraction descent.
inline Rat simplest_rational_between(const Rat& lo, const Rat& hi) {
  if (!(lo < hi)) throw std::invalid_argument("simplest_rational_between: empty interval");
  if (lo < 0 && hi > 0) return Rat(0);
  if (hi <= 0) return -simplest_rational_between(Rat(-hi), Rat(-lo));
  Int a = rat_floor(lo);
  if (Rat(a + 1) < hi) return Rat(a + 1);
  if (Rat(a) == lo) {
    Rat c = hi - Rat(a);
    Int t = rat_floor(Rat(1) / c) + 1;
    return Rat(a) + Rat(1) / Rat(t);
  }
  Rat u = lo - Rat(a);
  Rat v = hi - Rat(a);
  return Rat(a) + Rat(1) / simplest_rational_between(Rat(1) / v, Rat(1) / u);
}

// Canonical form used across every report and CLI surface: "p" when the
// denominator is 1, else "p/q" with q > 0.
inline std::string rat_str(const Rat& x) {
  std::string n = rat_num(x).str();
  if (rat_den(x) == 1) return n;
  return n + "/" + rat_den(x).str();
}

// Accepts "p", "p/q", optional leading '-' on p (and, defensively, on q).
inline Rat parse_rat(const std::string& s) {
  auto bad = [&]() { return std::invalid_argument("parse_rat: malformed rational '" + s + "'"); };
  if (s.empty()) throw bad();
  auto slash = s.find('/');
  auto check_int = [&](const std::string& t) {
    if (t.empty()) throw bad();
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) throw bad();
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') throw bad();
  };
  if (slash == std::string::npos) {
    check_int(s);
    return Rat(Int(s));
  }
  std::string p = s.substr(0, slash), q = s.substr(slash + 1);
  check_int(p);
  check_int(q);
  Int den(q);
  if (den == 0) throw std::invalid_argument("parse_rat: zero denominator in '" + s + "'");
  return Rat(Int(p), den);
}

// Gaussian rationals Q(i); enough field structure for the self-inversive
// machinery (conjugation, exact division).
struct GaussRat {
  Rat re{0};
  Rat im{0};

  GaussRat() = default;
  GaussRat(Rat r) : re(std::move(r)) {}
  GaussRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }

  friend GaussRat operator+(const GaussRat& a, const GaussRat& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussRat operator-(const GaussRat& a, const GaussRat& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussRat operator-(const GaussRat& a) { return {-a.re, -a.im}; }
  friend GaussRat operator*(const GaussRat& a, const GaussRat& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend GaussRat operator/(const GaussRat& a, const GaussRat& b) {
    Rat n = b.re * b.re + b.im * b.im;
    if (n == 0) throw std::domain_error("GaussRat: division by zero");
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
  }
  GaussRat& operator+=(const GaussRat& b) { return *this = *this + b; }
  GaussRat& operator-=(const GaussRat& b) { return *this = *this - b; }
  GaussRat& operator*=(const GaussRat& b) { return *this = *this * b; }
  GaussRat& operator/=(const GaussRat& b) { return *this = *this / b; }
  friend bool operator==(const GaussRat& a, const GaussRat& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }
};

inline GaussRat conj(const GaussRat& a) { return {a.re, -a.im}; }

inline GaussRat gauss_i() { return {Rat(0), Rat(1)}; }

// i^k, k may be negative.
inline GaussRat gauss_i_pow(long k) {
  long m = ((k % 4) + 4) % 4;
  switch (m) {
    case 0: return {Rat(1), Rat(0)};
    case 1: return {Rat(0), Rat(1)};
    case 2: return {Rat(-1), Rat(0)};
    default: return {Rat(0), Rat(-1)};
  }
}

inline std::string gauss_str(const GaussRat& a) {
  if (a.im == 0) return rat_str(a.re);
  std::string s = "(" + rat_str(a.re);
  s += (a.im < 0) ? " - " : " + ";
  s += rat_str(rat_abs(a.im)) + "i)";
  return s;
}

}  // namespace qsep

#endif
