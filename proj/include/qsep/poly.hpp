#ifndef QSEP_POLY_HPP
#define QSEP_POLY_HPP

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qsep/rational.hpp"

namespace qsep {

// Dense univariate polynomial over a commutative ring K with exact
// arithmetic. Coefficients are stored low to high with trailing zeros
// stripped, so the zero polynomial has an empty vector and degree -1.
template <class K>
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<K> coeffs) : c_(std::move(coeffs)) { normalize(); }

  static Poly zero() { return Poly(); }
  static Poly one() { return constant(K(1)); }
  static Poly constant(K v) {
    Poly p;
    p.c_.push_back(std::move(v));
    p.normalize();
    return p;
  }
  static Poly monomial(std::size_t k, K v) {
    Poly p;
    p.c_.assign(k + 1, K(0));
    p.c_[k] = std::move(v);
    p.normalize();
    return p;
  }

  long degree() const { return static_cast<long>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }

  const K& operator[](std::size_t k) const {
    static const K kZero{0};
    return k < c_.size() ? c_[k] : kZero;
  }
  K coeff(std::size_t k) const { return (*this)[k]; }
  const std::vector<K>& coeffs() const { return c_; }

  const K& lead() const {
    if (c_.empty()) throw std::domain_error("Poly::lead: zero polynomial");
    return c_.back();
  }

  // Order of vanishing at the origin; 0 for the zero polynomial by
  // convention (callers must special-case zero anyway).
  std::size_t origin_order() const {
    for (std::size_t k = 0; k < c_.size(); ++k)
      if (!(c_[k] == K(0))) return k;
    return 0;
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<K> r(std::max(a.c_.size(), b.c_.size()), K(0));
    for (std::size_t k = 0; k < r.size(); ++k) r[k] = a[k] + b[k];
    return Poly(std::move(r));
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    std::vector<K> r(std::max(a.c_.size(), b.c_.size()), K(0));
    for (std::size_t k = 0; k < r.size(); ++k) r[k] = a[k] - b[k];
    return Poly(std::move(r));
  }
  friend Poly operator-(const Poly& a) {
    std::vector<K> r = a.c_;
    for (auto& v : r) v = -v;
    return Poly(std::move(r));
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<K> r(a.c_.size() + b.c_.size() - 1, K(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == K(0)) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(std::move(r));
  }
  friend Poly operator*(const K& s, const Poly& a) {
    std::vector<K> r = a.c_;
    for (auto& v : r) v = s * v;
    return Poly(std::move(r));
  }
  friend Poly operator*(const Poly& a, const K& s) { return s * a; }
  Poly& operator+=(const Poly& b) { return *this = *this + b; }
  Poly& operator-=(const Poly& b) { return *this = *this - b; }
  Poly& operator*=(const Poly& b) { return *this = *this * b; }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  template <class P>
  P evaluate(const P& x) const {
    P acc(0);
    for (std::size_t k = c_.size(); k-- > 0;) acc = acc * x + P(c_[k]);
    return acc;
  }

  Poly derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<K> r(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) r[k - 1] = K(static_cast<long>(k)) * c_[k];
    return Poly(std::move(r));
  }

  // F(s*z)
  Poly scale_arg(const K& s) const {
    std::vector<K> r = c_;
    K p(1);
    for (std::size_t k = 0; k < r.size(); ++k) {
      r[k] = r[k] * p;
      p = p * s;
    }
    return Poly(std::move(r));
  }

  // z^k * F
  Poly shift_up(std::size_t k) const {
    if (is_zero()) return Poly();
    std::vector<K> r(c_.size() + k, K(0));
    for (std::size_t j = 0; j < c_.size(); ++j) r[j + k] = c_[j];
    return Poly(std::move(r));
  }

  // F / z^k, requiring z^k | F.
  Poly shift_down(std::size_t k) const {
    if (is_zero()) return Poly();
    if (origin_order() < k) throw std::domain_error("Poly::shift_down: not divisible by z^k");
    std::vector<K> r(c_.begin() + static_cast<long>(k), c_.end());
    return Poly(std::move(r));
  }

  // Field-only operations below (K must support exact division).

  friend std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::domain_error("Poly divrem: division by zero polynomial");
    Poly q, r = a;
    if (a.degree() < b.degree()) return {q, r};
    q.c_.assign(static_cast<std::size_t>(a.degree() - b.degree()) + 1, K(0));
    while (!r.is_zero() && r.degree() >= b.degree()) {
      std::size_t d = static_cast<std::size_t>(r.degree() - b.degree());
      K f = r.lead() / b.lead();
      q.c_[d] = f;
      // r -= f * z^d * b, done in place to skip the known-cancelling top term
      for (std::size_t j = 0; j < b.c_.size(); ++j) r.c_[j + d] -= f * b.c_[j];
      r.normalize();
    }
    q.normalize();
    return {q, r};
  }

  friend Poly divexact(const Poly& a, const Poly& b) {
    auto [q, r] = divrem(a, b);
    if (!r.is_zero()) throw std::domain_error("Poly divexact: inexact division");
    return q;
  }

  Poly monic() const {
    if (is_zero()) return Poly();
    return *this * (K(1) / lead());
  }

 private:
  void normalize() {
    while (!c_.empty() && c_.back() == K(0)) c_.pop_back();
  }

  std::vector<K> c_;
};

using RPoly = Poly<Rat>;
using CPoly = Poly<GaussRat>;
using IPoly = Poly<Int>;

// --- integer polynomial helpers (kept exact and sign-faithful; the Sturm
// --- machinery in realroots.hpp depends on positive-scale invariance) ---

inline Int ipoly_content(const IPoly& p) {
  Int g = 0;
  for (const auto& c : p.coeffs()) g = boost::multiprecision::gcd(g, c);
  return g;  // 0 for the zero polynomial
}

inline IPoly ipoly_primitive(const IPoly& p) {
  Int g = ipoly_content(p);
  if (g == 0 || g == 1) return p;
  std::vector<Int> r(p.coeffs());
  for (auto& c : r) c /= g;
  return IPoly(std::move(r));
}

// Clears denominators and strips content; the result has the same real
// roots and the same sign everywhere (the dropped factor is positive).
inline IPoly to_integer_primitive(const RPoly& p) {
  if (p.is_zero()) return IPoly();
  Int l = 1;
  for (const auto& c : p.coeffs()) l = boost::multiprecision::lcm(l, rat_den(c));
  std::vector<Int> r(static_cast<std::size_t>(p.degree()) + 1);
  for (std::size_t k = 0; k < r.size(); ++k) {
    const Rat& c = p[k];
    r[k] = rat_num(c) * (l / rat_den(c));
  }
  return ipoly_primitive(IPoly(std::move(r)));
}

inline RPoly to_rpoly(const IPoly& p) {
  std::vector<Rat> r(p.coeffs().size());
  for (std::size_t k = 0; k < r.size(); ++k) r[k] = Rat(p[k]);
  return RPoly(std::move(r));
}

// Pseudo-remainder scaled so that the result equals a *positive* multiple
// of rem(a, b) over Q; this keeps sign-based algorithms valid.
inline IPoly signed_prem(const IPoly& a, const IPoly& b) {
  if (b.is_zero()) throw std::domain_error("signed_prem: zero divisor");
  IPoly r = a;
  long db = b.degree();
  const Int& lb = b.lead();
  long steps = 0;
  while (!r.is_zero() && r.degree() >= db) {
    std::size_t d = static_cast<std::size_t>(r.degree() - db);
    Int f = r.lead();
    std::vector<Int> rc(r.coeffs());
    for (auto& c : rc) c *= lb;
    for (std::size_t j = 0; j <= static_cast<std::size_t>(db); ++j)
      rc[j + d] -= f * b[j];
    r = IPoly(std::move(rc));
    ++steps;
  }
  // each step multiplied the running remainder by lb; fix the overall sign
  // when lb < 0 and the number of steps is odd
  if (lb < 0 && (steps & 1)) r = -r;
  return r;
}

// Primitive-PRS gcd; result is primitive with positive leading coefficient.
inline IPoly ipoly_gcd(IPoly a, IPoly b) {
  a = ipoly_primitive(a);
  b = ipoly_primitive(b);
  if (a.is_zero()) return b.is_zero() || b.lead() > 0 ? b : -b;
  if (b.is_zero()) return a.lead() > 0 ? a : -a;
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    IPoly r = ipoly_primitive(signed_prem(a, b));
    a = std::move(b);
    b = std::move(r);
  }
  return a.lead() > 0 ? a : -a;
}

// gcd over Q, normalized monic (gcd(0,0) = 0).
inline RPoly gcd(const RPoly& a, const RPoly& b) {
  IPoly g = ipoly_gcd(to_integer_primitive(a), to_integer_primitive(b));
  if (g.is_zero()) return RPoly();
  return to_rpoly(g).monic();
}

// gcd over Q(i) via monic Euclid, normalized monic.
inline CPoly gcd(const CPoly& a, const CPoly& b) {
  CPoly x = a, y = b;
  while (!y.is_zero()) {
    auto [q, r] = divrem(x, y);
    (void)q;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

inline RPoly squarefree_part(const RPoly& p) {
  if (p.is_zero()) return RPoly();
  if (p.degree() == 0) return RPoly::one();
  return divexact(p, gcd(p, p.derivative())).monic();
}

// Yun decomposition: returns the monic squarefree factors with their
// multiplicities, highest powers included, constants dropped.
inline std::vector<std::pair<RPoly, int>> yun_decomposition(const RPoly& p) {
  std::vector<std::pair<RPoly, int>> out;
  if (p.degree() <= 0) return out;
  RPoly f = p.monic();
  RPoly g = gcd(f, f.derivative());
  if (g.degree() == 0) {
    out.push_back({f, 1});
    return out;
  }
  RPoly w = divexact(f, g);
  RPoly y = divexact(f.derivative(), g);
  RPoly z = y - w.derivative();
  int i = 1;
  while (w.degree() > 0) {
    RPoly a = gcd(w, z);
    if (a.degree() > 0) out.push_back({a, i});
    w = divexact(w, a);
    y = divexact(z, a);
    z = y - w.derivative();
    ++i;
  }
  return out;
}

// F and G equal up to a nonzero constant factor.
template <class K>
bool is_proportional(const Poly<K>& f, const Poly<K>& g) {
  if (f.is_zero() || g.is_zero()) return f.is_zero() && g.is_zero();
  if (f.degree() != g.degree()) return false;
  // cross-multiply against the leading coefficients
  for (long k = 0; k <= f.degree(); ++k)
    if (!(f[static_cast<std::size_t>(k)] * g.lead() ==
          g[static_cast<std::size_t>(k)] * f.lead()))
      return false;
  return true;
}

// z^n F(-1/z): the degree-n reversal involution on real polynomials.
inline RPoly reverse_n(const RPoly& f, long n) {
  if (n < f.degree()) throw std::domain_error("reverse_n: ambient degree below deg F");
  if (f.is_zero()) return RPoly();
  std::vector<Rat> r(static_cast<std::size_t>(n) + 1, Rat(0));
  for (long k = 0; k <= f.degree(); ++k) {
    Rat v = f[static_cast<std::size_t>(k)];
    if (k & 1) v = -v;
    r[static_cast<std::size_t>(n - k)] = v;
  }
  return RPoly(std::move(r));
}

// z^n conj(F(1/conj z)): coefficientwise a_k -> conj(a_{n-k}).
inline CPoly n_inverse(const CPoly& f, long n) {
  if (n < f.degree()) throw std::domain_error("n_inverse: ambient degree below deg F");
  if (f.is_zero()) return CPoly();
  std::vector<GaussRat> r(static_cast<std::size_t>(n) + 1, GaussRat());
  for (long k = 0; k <= n; ++k)
    r[static_cast<std::size_t>(k)] = conj(f[static_cast<std::size_t>(n - k)]);
  return CPoly(std::move(r));
}

inline bool is_self_inversive(const CPoly& f, long n) {
  return n_inverse(f, n) == f;
}

// Real/imaginary split: P = F + iG with F, G real.
inline std::pair<RPoly, RPoly> complex_split(const CPoly& p) {
  std::vector<Rat> re, im;
  re.reserve(p.coeffs().size());
  im.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) {
    re.push_back(c.re);
    im.push_back(c.im);
  }
  return {RPoly(std::move(re)), RPoly(std::move(im))};
}

inline CPoly to_cpoly(const RPoly& f) {
  std::vector<GaussRat> c;
  c.reserve(f.coeffs().size());
  for (const auto& v : f.coeffs()) c.push_back(GaussRat(v));
  return CPoly(std::move(c));
}

template <class K>
std::string poly_str(const Poly<K>& f, const std::string& var = "z");

inline std::string coeff_str(const Rat& c) { return rat_str(c); }
inline std::string coeff_str(const GaussRat& c) { return gauss_str(c); }
inline std::string coeff_str(const Int& c) { return c.str(); }

template <class K>
std::string poly_str(const Poly<K>& f, const std::string& var) {
  if (f.is_zero()) return "0";
  std::string s;
  for (long k = f.degree(); k >= 0; --k) {
    const K& c = f[static_cast<std::size_t>(k)];
    if (c == K(0)) continue;
    if (!s.empty()) s += " + ";
    s += coeff_str(c);
    if (k > 0) s += "*" + var + (k > 1 ? "^" + std::to_string(k) : "");
  }
  return s;
}

}  // namespace qsep

#endif
