#pragma once

// q-calculus layer: q-binomial coefficients, the canonical product polynomial
// R_n(q;z), coefficient transforms against its basis, the two q-difference
// operators, the weighted coefficientwise product, and membership tests for
// the classes of polynomials with geometrically separated real zeros.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qsep/intersperse.hpp"
#include "qsep/poly.hpp"
#include "qsep/rational.hpp"
#include "qsep/realroots.hpp"

namespace qsep {

// C_k^n(q): the coefficient of z^k in prod_{j=1}^{n} (1 + q^{j-1} z).
// Computed as q^{k(k-1)/2} * prod_{j=1}^{k} (1-q^{j+n-k})/(1-q^j) for
// q in [0,1) (at q=0 every factor is 1 and the prefactor kills k >= 2),
// and as the plain binomial coefficient at q=1.
inline Rat q_binomial(long n, long k, const Rat& q) {
  if (n < 0 || k < 0 || k > n) throw std::domain_error("q_binomial: need 0 <= k <= n");
  if (q < 0 || q > 1) throw std::domain_error("q_binomial: need q in [0, 1]");
  if (q == 1) {
    Int c = 1;
    for (long j = 1; j <= k; ++j) {
      c *= n - k + j;
      c /= j;
    }
    return Rat(c);
  }
  Rat r = rat_pow(q, k * (k - 1) / 2);
  for (long j = 1; j <= k; ++j)
    r *= (1 - rat_pow(q, j + n - k)) / (1 - rat_pow(q, j));
  return r;
}

// R_n(q;z) = prod_{j=1}^{n} (1 + q^{j-1} z). Its coefficients are the
// q-binomials; the expansion is checked against q_binomial on every call.
inline RPoly r_poly(long n, const Rat& q) {
  if (n < 0) throw std::domain_error("r_poly: need n >= 0");
  if (q < 0 || q > 1) throw std::domain_error("r_poly: need q in [0, 1]");
  RPoly f = RPoly::one();
  Rat p(1);
  for (long j = 1; j <= n; ++j) {
    f = f * RPoly(std::vector<Rat>{Rat(1), p});
    p *= q;
  }
  for (long k = 0; k <= n; ++k)
    if (f.coeff(static_cast<std::size_t>(k)) != q_binomial(n, k, q))
      throw internal_error("r_poly: expansion disagrees with q_binomial");
  return f;
}

// Coefficients of a polynomial written in the basis {C_k^n(q) z^k}_{k=0..n}.
struct QBasisVector {
  long n = 0;
  Rat q;
  std::vector<Rat> a;  // size n + 1; the polynomial is sum a_k C_k^n(q) z^k
};

inline QBasisVector to_q_basis(const RPoly& f, long n, const Rat& q) {
  if (n < 0 || f.degree() > n) throw std::domain_error("to_q_basis: need deg F <= n");
  if (q <= 0 || q > 1) throw std::domain_error("to_q_basis: need q in (0, 1]");
  QBasisVector v;
  v.n = n;
  v.q = q;
  v.a.resize(static_cast<std::size_t>(n) + 1);
  for (long k = 0; k <= n; ++k)
    v.a[static_cast<std::size_t>(k)] = f.coeff(static_cast<std::size_t>(k)) / q_binomial(n, k, q);
  return v;
}

inline RPoly from_q_basis(const QBasisVector& v) {
  if (v.n < 0 || v.a.size() != static_cast<std::size_t>(v.n) + 1)
    throw std::invalid_argument("from_q_basis: coefficient count must be n + 1");
  if (v.q <= 0 || v.q > 1) throw std::domain_error("from_q_basis: need q in (0, 1]");
  std::vector<Rat> c(v.a.size());
  for (long k = 0; k <= v.n; ++k)
    c[static_cast<std::size_t>(k)] = v.a[static_cast<std::size_t>(k)] * q_binomial(v.n, k, v.q);
  return RPoly(std::move(c));
}

// Forward q-difference: (F(z) - F(q^{-1}z)) / ((q^{n-1} - q^{-1}) z),
// which degenerates to F'(z)/n at q = 1. Computed twice, once from the
// defining quotient and once by the index shift it induces on q-basis
// coefficients, and the results are required to match.
inline RPoly q_diff(const RPoly& f, long n, const Rat& q) {
  if (n < 1) throw std::domain_error("q_diff: need n >= 1");
  if (f.degree() > n) throw std::domain_error("q_diff: need deg F <= n");
  if (q <= 0 || q > 1) throw std::domain_error("q_diff: need q in (0, 1]");
  RPoly out;
  if (q == 1) {
    out = f.derivative() * (Rat(1) / Rat(n));
  } else {
    Rat qi = Rat(1) / q;
    RPoly num = f - f.scale_arg(qi);
    out = num.is_zero() ? RPoly::zero()
                        : num.shift_down(1) * (Rat(1) / (rat_pow(q, n - 1) - qi));
  }
  QBasisVector v = to_q_basis(f, n, q);
  QBasisVector w;
  w.n = n - 1;
  w.q = q;
  w.a.assign(v.a.begin() + 1, v.a.end());
  if (out != from_q_basis(w)) throw internal_error("q_diff: quotient and basis routes disagree");
  return out;
}

// Polar-type q-difference: (q^{-n}F(z) - F(q^{-1}z)) / (q^{-n} - 1), which
// degenerates to F(z) - zF'(z)/n at q = 1. Dual-route checked like q_diff;
// in the q-basis it truncates the top coefficient.
inline RPoly q_diff_star(const RPoly& f, long n, const Rat& q) {
  if (n < 1) throw std::domain_error("q_diff_star: need n >= 1");
  if (f.degree() > n) throw std::domain_error("q_diff_star: need deg F <= n");
  if (q <= 0 || q > 1) throw std::domain_error("q_diff_star: need q in (0, 1]");
  RPoly out;
  if (q == 1) {
    out = f - (f.derivative() * (Rat(1) / Rat(n))).shift_up(1);
  } else {
    Rat qn = rat_pow(q, -n);
    out = (f * qn - f.scale_arg(Rat(1) / q)) * (Rat(1) / (qn - 1));
  }
  QBasisVector v = to_q_basis(f, n, q);
  QBasisVector w;
  w.n = n - 1;
  w.q = q;
  w.a.assign(v.a.begin(), v.a.end() - 1);
  if (out != from_q_basis(w))
    throw internal_error("q_diff_star: quotient and basis routes disagree");
  return out;
}

// Coefficientwise product weighted against the q-binomials: the coefficient
// of z^k in the result is f_k g_k / C_k^n(q). R_n(q;z) is the identity.
inline RPoly hadamard_q(const RPoly& f, const RPoly& g, long n, const Rat& q) {
  if (n < 0 || f.degree() > n || g.degree() > n)
    throw std::domain_error("hadamard_q: need deg <= n");
  if (q <= 0 || q > 1) throw std::domain_error("hadamard_q: need q in (0, 1]");
  std::vector<Rat> c(static_cast<std::size_t>(n) + 1);
  for (long k = 0; k <= n; ++k) {
    std::size_t i = static_cast<std::size_t>(k);
    c[i] = f.coeff(i) * g.coeff(i) / q_binomial(n, k, q);
  }
  return RPoly(std::move(c));
}

// Verdict for the pairwise zero-ratio test. On failure, `witness` holds
// (approximate) locations of an offending pair of zeros.
struct SeparationVerdict {
  bool holds = false;
  std::string detail;
  std::optional<std::pair<Rat, Rat>> witness;
};

// Tests whether the isolated real zeros are q-separated: for every pair of
// same-sign zeros x, y with |x| <= |y| the ratio |x|/|y| must be at most q
// (strict mode: less than q). Zeros at the origin are exempt; a repeated
// nonzero zero is a pair with ratio one. Ratios compound along a sorted
// chain of same-sign zeros, so only consecutive pairs need checking.
inline SeparationVerdict strict_q_separation(RootIsolation& iso, const Rat& q, bool strict) {
  if (q < 0 || q > 1) throw std::domain_error("strict_q_separation: need q in [0, 1]");
  SeparationVerdict v;
  for (auto& r : iso.roots) {
    if (r.sign() == 0 || r.multiplicity < 2) continue;
    if (strict || q < 1) {
      v.detail = "repeated nonzero zero (ratio 1)";
      v.witness = std::make_pair(r.midpoint(), r.midpoint());
      return v;
    }
  }
  std::vector<std::size_t> neg, pos;
  for (std::size_t i = 0; i < iso.roots.size(); ++i) {
    int s = iso.roots[i].sign();
    if (s < 0) neg.push_back(i);
    if (s > 0) pos.push_back(i);
  }
  auto fail = [&](const IsolatedRoot& a, const IsolatedRoot& b, bool tie) {
    v.detail = tie ? "zero ratio equal to q" : "zero ratio above q";
    v.witness = std::make_pair(a.midpoint(), b.midpoint());
    return v;
  };
  if (q == 0) {
    // no positive ratio passes; demand at most one zero of each sign
    if (neg.size() > 1) return fail(iso.roots[neg[0]], iso.roots[neg[1]], false);
    if (pos.size() > 1) return fail(iso.roots[pos[0]], iso.roots[pos[1]], false);
    v.holds = true;
    return v;
  }
  std::optional<IPoly> scaled;
  std::optional<IPoly> common;
  std::optional<SturmChain> common_chain;
  // exact comparison of a zero against q times a neighbouring zero
  auto cmp = [&](IsolatedRoot& x, const IsolatedRoot& y) {
    if (!scaled) {
      scaled = scale_roots(iso.sf, q);
      common = ipoly_gcd(iso.sf, *scaled);
      if (common->degree() >= 1) common_chain.emplace(*common);
    }
    IsolatedRoot yq{y.lo * q, y.hi * q, y.exact, 1};
    return compare_algebraic(iso.sf, x, *scaled, yq, &*common,
                             common_chain ? &*common_chain : nullptr);
  };
  for (std::size_t t = 0; t + 1 < neg.size(); ++t) {
    IsolatedRoot& far = iso.roots[neg[t]];       // larger magnitude
    IsolatedRoot& near = iso.roots[neg[t + 1]];  // smaller magnitude
    int c = cmp(near, far);                      // near vs q * far
    if (c < 0 || (strict && c == 0)) return fail(far, near, c == 0);
  }
  for (std::size_t t = 0; t + 1 < pos.size(); ++t) {
    IsolatedRoot& near = iso.roots[pos[t]];      // smaller magnitude
    IsolatedRoot& far = iso.roots[pos[t + 1]];   // larger magnitude
    int c = cmp(near, far);                      // near vs q * far
    if (c > 0 || (strict && c == 0)) return fail(near, far, c == 0);
  }
  v.holds = true;
  return v;
}

enum class QClass { kClosureR, kR, kClosureN, kN, kU };

inline std::string q_class_name(QClass c) {
  switch (c) {
    case QClass::kClosureR: return "closure-R";
    case QClass::kR: return "R";
    case QClass::kClosureN: return "closure-N";
    case QClass::kN: return "N";
    case QClass::kU: return "U";
  }
  throw std::invalid_argument("q_class_name: unknown class");
}

// Class membership verdict. route_agreement reports that every decision
// route that ran produced the same answer; a disagreement throws
// internal_error instead of returning a verdict.
struct MembershipVerdict {
  QClass cls = QClass::kClosureR;
  bool member = false;
  bool route_agreement = true;
  std::string detail;
  std::optional<std::pair<Rat, Rat>> witness_pair;  // zeros with a bad ratio
  std::optional<Rat> witness_point;                 // a zero off the allowed set
};

// Membership of F in the chosen class at parameter q with ambient degree n.
// Route A inspects the zeros directly: real-rootedness, the sign constraint
// for the nonpositive-zero classes, and the pairwise ratio test (weak for
// the closure classes, strict otherwise). For q in (0,1) an independent
// route B decides the same question through the alternation relation
// between F(z) and F(q^{-1}z), and the two answers must agree. At q = 0
// the classes collapse to the monomials {0, 1, z, ..., z^n}.
inline MembershipVerdict class_membership(const RPoly& f, long n, const Rat& q, QClass cls) {
  if (cls == QClass::kU)
    throw std::invalid_argument("class_membership: use u_class_membership for the complex class");
  if (n < 0 || f.degree() > n) throw std::domain_error("class_membership: need deg F <= n");
  if (q < 0 || q > 1) throw std::domain_error("class_membership: need q in [0, 1]");
  MembershipVerdict v;
  v.cls = cls;
  if (f.is_zero()) {
    v.member = true;
    v.detail = "zero polynomial";
    return v;
  }
  if (q == 0) {
    v.member = f.origin_order() == static_cast<std::size_t>(f.degree());
    if (!v.member) v.detail = "not a scalar multiple of a monomial";
    return v;
  }
  bool nonpos_class = cls == QClass::kClosureN || cls == QClass::kN;
  bool strict = cls == QClass::kR || cls == QClass::kN;
  bool a_member = false;
  bool real_rooted = is_real_rooted(f);
  if (!real_rooted) {
    v.detail = "zeros off the real line";
  } else if (nonpos_class && !zeros_nonpositive(f)) {
    v.detail = "zero on the positive axis";
    v.witness_point = detail::positive_zero_witness(f);
  } else {
    RootIsolation iso = isolate_real_roots(f);
    SeparationVerdict s = strict_q_separation(iso, q, strict);
    a_member = s.holds;
    if (!s.holds) {
      v.detail = s.detail;
      v.witness_pair = s.witness;
    }
  }
  if (q < 1) {
    RelationKind k = cls == QClass::kClosureR   ? RelationKind::kAlternate
                     : cls == QClass::kR        ? RelationKind::kAlternateStrict
                     : cls == QClass::kClosureN ? RelationKind::kAlternateNonpos
                                                : RelationKind::kAlternateNonposStrict;
    bool b_member = real_rooted && relation(f, f.scale_arg(Rat(1) / q), k).holds;
    if (a_member != b_member) throw internal_error("class_membership: routes disagree");
  }
  v.member = a_member;
  return v;
}

// Extremality verdict: whether F is a nonzero scalar multiple of
// R_n(q; a z) for some real a != 0, and that a when it exists.
struct ExtremalVerdict {
  bool extremal = false;
  Rat scale;
};

// Solves for the argument scale a from the two leading coefficients, then
// demands exact proportionality of the full coefficient vector against
// R_n(q; a z). The class argument only names the context; the extremal
// family is the same for all classes.
inline ExtremalVerdict is_extremal(const RPoly& f, long n, const Rat& q,
                                   QClass cls = QClass::kClosureR) {
  (void)cls;
  if (n < 0 || f.degree() > n) throw std::domain_error("is_extremal: need deg F <= n");
  if (q <= 0 || q > 1) throw std::domain_error("is_extremal: need q in (0, 1]");
  ExtremalVerdict v;
  if (f.is_zero()) return v;
  if (n == 0) {
    v.extremal = true;  // nonzero constant
    v.scale = Rat(1);
    return v;
  }
  // every coefficient of c * R_n(q; a z) is nonzero, so the top two
  // coefficients of an extremal F determine a
  if (f.degree() != n || f.coeff(static_cast<std::size_t>(n) - 1) == 0) return v;
  Rat a = f.coeff(static_cast<std::size_t>(n)) / f.coeff(static_cast<std::size_t>(n) - 1) *
          q_binomial(n, n - 1, q) / q_binomial(n, n, q);
  Rat c = f.coeff(0);
  Rat ap(1);
  for (long k = 0; k <= n; ++k) {
    if (f.coeff(static_cast<std::size_t>(k)) != c * q_binomial(n, k, q) * ap) return v;
    ap *= a;
  }
  v.extremal = true;
  v.scale = a;
  return v;
}

// Membership in the complex class {F + iG : F, G in the weak real class,
// F strictly interlacing G}, decided on the coefficientwise real and
// imaginary parts of P.
inline MembershipVerdict u_class_membership(const CPoly& p, long n, const Rat& q) {
  if (n < 0 || p.degree() > n) throw std::domain_error("u_class_membership: need deg P <= n");
  if (q <= 0 || q > 1) throw std::domain_error("u_class_membership: need q in (0, 1]");
  MembershipVerdict v;
  v.cls = QClass::kU;
  if (p.is_zero()) {
    v.member = true;
    v.detail = "zero polynomial";
    return v;
  }
  auto [re, im] = complex_split(p);
  MembershipVerdict mre = class_membership(re, n, q, QClass::kClosureR);
  if (!mre.member) {
    v.detail = "real part: " + mre.detail;
    v.witness_pair = mre.witness_pair;
    v.witness_point = mre.witness_point;
    return v;
  }
  MembershipVerdict mim = class_membership(im, n, q, QClass::kClosureR);
  if (!mim.member) {
    v.detail = "imaginary part: " + mim.detail;
    v.witness_pair = mim.witness_pair;
    v.witness_point = mim.witness_point;
    return v;
  }
  RelationVerdict rel = relation(re, im, RelationKind::kInterlaceStrict, n);
  v.member = rel.holds;
  if (!rel.holds) {
    v.detail = "parts fail strict interlacing: " + rel.detail;
    v.witness_point = rel.witness_point;
  }
  return v;
}

}  // namespace qsep
