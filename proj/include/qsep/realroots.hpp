#ifndef QSEP_REALROOTS_HPP
#define QSEP_REALROOTS_HPP

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qsep/poly.hpp"
#include "qsep/rational.hpp"

namespace qsep {

struct internal_error : std::logic_error {
  using std::logic_error::logic_error;
};

// Raised when interval refinement exceeds its iteration guard. With
// rational input data every comparison this library performs terminates
// long before the guard, so seeing this indicates a logic bug upstream.
struct refinement_limit_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr int kRefineGuard = 4096;

// Sign of P(p/q) for integer P, evaluated homogeneously (exact).
inline int ipoly_sign_at(const IPoly& p, const Rat& x) {
  if (p.is_zero()) return 0;
  const Int& num = rat_num(x);
  const Int& den = rat_den(x);
  long d = p.degree();
  Int acc = p[static_cast<std::size_t>(d)];
  Int dpow = 1;
  for (long k = d - 1; k >= 0; --k) {
    dpow *= den;
    acc = acc * num + p[static_cast<std::size_t>(k)] * dpow;
  }
  return acc.sign();
}

inline int ipoly_sign_at_pos_inf(const IPoly& p) {
  return p.is_zero() ? 0 : p.lead().sign();
}

inline int ipoly_sign_at_neg_inf(const IPoly& p) {
  if (p.is_zero()) return 0;
  int s = p.lead().sign();
  return (p.degree() & 1) ? -s : s;
}

// Canonical Sturm chain over Z (primitive parts, sign-faithful).
class SturmChain {
 public:
  SturmChain() = default;
  explicit SturmChain(IPoly p) {
    p = ipoly_primitive(p);
    if (p.is_zero()) throw std::domain_error("SturmChain: zero polynomial");
    chain_.push_back(std::move(p));
    if (chain_[0].degree() >= 1) {
      chain_.push_back(ipoly_primitive(chain_[0].derivative()));
      while (chain_.back().degree() >= 1) {
        IPoly r = signed_prem(chain_[chain_.size() - 2], chain_.back());
        if (r.is_zero()) break;
        chain_.push_back(ipoly_primitive(-r));
      }
    }
  }

  bool valid() const { return !chain_.empty(); }
  const IPoly& head() const { return chain_.front(); }

  int variations_at(const Rat& x) const {
    int prev = 0, var = 0;
    for (const auto& s : chain_) {
      int sg = ipoly_sign_at(s, x);
      if (sg == 0) continue;
      if (prev != 0 && sg != prev) ++var;
      prev = sg;
    }
    return var;
  }

  int variations_neg_inf() const {
    int prev = 0, var = 0;
    for (const auto& s : chain_) {
      int sg = ipoly_sign_at_neg_inf(s);
      if (sg == 0) continue;
      if (prev != 0 && sg != prev) ++var;
      prev = sg;
    }
    return var;
  }

  int variations_pos_inf() const {
    int prev = 0, var = 0;
    for (const auto& s : chain_) {
      int sg = ipoly_sign_at_pos_inf(s);
      if (sg == 0) continue;
      if (prev != 0 && sg != prev) ++var;
      prev = sg;
    }
    return var;
  }

  // Distinct real roots of the head in the open interval. Endpoints must
  // not be roots of the head.
  int count(const std::optional<Rat>& lo, const std::optional<Rat>& hi) const {
    if (lo && ipoly_sign_at(head(), *lo) == 0)
      throw std::domain_error("sturm count: left endpoint is a root; perturb the endpoint");
    if (hi && ipoly_sign_at(head(), *hi) == 0)
      throw std::domain_error("sturm count: right endpoint is a root; perturb the endpoint");
    if (lo && hi && !(*lo < *hi)) return 0;
    int va = lo ? variations_at(*lo) : variations_neg_inf();
    int vb = hi ? variations_at(*hi) : variations_pos_inf();
    return va - vb;
  }

 private:
  std::vector<IPoly> chain_;
};

// Distinct real roots of P in the open interval (lo, hi), with nullopt as
// the corresponding infinity. P need not be squarefree. Errors if an
// endpoint is a root.
inline int sturm_count(const RPoly& p, const std::optional<Rat>& lo = std::nullopt,
                       const std::optional<Rat>& hi = std::nullopt) {
  if (p.is_zero()) throw std::domain_error("sturm_count: zero polynomial");
  if (p.degree() == 0) return 0;
  return SturmChain(to_integer_primitive(p)).count(lo, hi);
}

// Strict dyadic bound: every real root of p lies in (-B, B).
inline Rat cauchy_bound(const IPoly& p) {
  if (p.degree() < 1) return Rat(2);
  Rat m(0);
  Int lead = boost::multiprecision::abs(p.lead());
  for (long k = 0; k < p.degree(); ++k) {
    Rat v(boost::multiprecision::abs(p[static_cast<std::size_t>(k)]), lead);
    if (v > m) m = v;
  }
  Rat b = m + 1;
  Rat pow(2);
  while (pow < b) pow *= 2;  // dyadic endpoints keep bisection arithmetic small
  return pow;
}

// One isolated real root. Exact roots satisfy lo == hi == value. Interval
// roots lie in the open interval (lo, hi) whose endpoints are not roots of
// the defining squarefree polynomial, which changes sign across it.
struct IsolatedRoot {
  Rat lo;
  Rat hi;
  bool exact = false;
  int multiplicity = 1;

  bool contains_zero_inside() const { return exact ? lo == 0 : (lo < 0 && 0 < hi); }
  int sign() const {
    if (exact) return sgn(lo);
    if (hi <= 0) return -1;
    if (lo >= 0) return 1;
    throw internal_error("IsolatedRoot::sign: interval straddles zero");
  }
  Rat width() const { return exact ? Rat(0) : Rat(hi - lo); }
  Rat midpoint() const { return exact ? lo : Rat((lo + hi) / 2); }
};

namespace detail {

// Bisect an interval containing exactly one simple root of sf with a sign
// change across it. May collapse to an exact root.
inline void refine_once(const IPoly& sf, IsolatedRoot& r) {
  if (r.exact) return;
  Rat m = (r.lo + r.hi) / 2;
  int sm = ipoly_sign_at(sf, m);
  if (sm == 0) {
    r.lo = r.hi = m;
    r.exact = true;
    return;
  }
  int sl = ipoly_sign_at(sf, r.lo);
  if (sl == 0) throw internal_error("refine_once: endpoint is a root");
  if (sm == sl)
    r.lo = m;
  else
    r.hi = m;
}

inline void refine_below(const IPoly& sf, IsolatedRoot& r, const Rat& eps,
                         int guard = kRefineGuard) {
  while (!r.exact && !(r.width() < eps)) {
    refine_once(sf, r);
    if (--guard < 0) throw refinement_limit_error("refine_below: iteration guard");
  }
}

// Isolating intervals for all real roots of a squarefree integer
// polynomial, sorted increasing. Interval endpoints are never roots.
inline std::vector<IsolatedRoot> isolate_squarefree(const IPoly& sf, const SturmChain& chain) {
  std::vector<IsolatedRoot> out;
  if (sf.degree() < 1) return out;
  Rat bound = cauchy_bound(sf);
  struct Seg {
    Rat lo, hi;
    int count;
  };
  std::vector<Seg> stack;
  {
    int total = chain.count(Rat(-bound), bound);
    if (total > 0) stack.push_back({-bound, bound, total});
  }
  int guard = kRefineGuard * 64;
  while (!stack.empty()) {
    if (--guard < 0) throw refinement_limit_error("isolate_squarefree: guard");
    Seg s = stack.back();
    stack.pop_back();
    if (s.count == 1) {
      out.push_back({s.lo, s.hi, false, 1});
      continue;
    }
    Rat m = (s.lo + s.hi) / 2;
    if (ipoly_sign_at(sf, m) != 0) {
      int left = chain.count(s.lo, m);
      int right = s.count - left;
      if (left > 0) stack.push_back({s.lo, m, left});
      if (right > 0) stack.push_back({m, s.hi, right});
      continue;
    }
    // midpoint hit a root: carve out a punctured neighbourhood of m so the
    // flanks can be counted with non-root endpoints
    out.push_back({m, m, true, 1});
    Rat delta = (s.hi - s.lo) / 4;
    int inner_guard = kRefineGuard;
    while (true) {
      if (--inner_guard < 0) throw refinement_limit_error("isolate_squarefree: puncture guard");
      Rat a = m - delta, b = m + delta;
      if (ipoly_sign_at(sf, a) != 0 && ipoly_sign_at(sf, b) != 0 && chain.count(a, b) == 1) {
        int left = chain.count(s.lo, a);
        int right = s.count - 1 - left;
        if (left > 0) stack.push_back({s.lo, a, left});
        if (right > 0) stack.push_back({b, s.hi, right});
        break;
      }
      delta /= 2;
    }
  }
  std::sort(out.begin(), out.end(), [](const IsolatedRoot& a, const IsolatedRoot& b) {
    if (a.lo != b.lo) return a.lo < b.lo;
    return a.hi < b.hi;
  });
  return out;
}

}  // namespace detail

// Real-root picture of a nonzero rational polynomial: isolated roots with
// multiplicities (sorted increasing, pairwise disjoint, no interval
// straddling zero, origin root exact), the order of vanishing at the
// origin, and, when an ambient degree is supplied, the order at infinity.
class RootIsolation {
 public:
  std::vector<IsolatedRoot> roots;
  std::size_t origin_order = 0;
  std::optional<long> infinity_order;
  long degree = -1;

  // squarefree part of P / z^origin_order (primitive, positive lead);
  // every non-origin root is a simple root of it
  IPoly sf;

  long multiplicity_sum() const {
    long s = 0;
    for (const auto& r : roots) s += r.multiplicity;
    return s;
  }

  bool all_nonpositive() const {
    for (const auto& r : roots)
      if (r.sign() > 0) return false;
    return true;
  }

  void refine_all(const Rat& eps) {
    for (auto& r : roots)
      if (!r.exact) detail::refine_below(sf, r, eps);
  }
};

// Isolate the real roots of nonzero P. With ambient_n, records the order
// of the root at infinity (ambient_n - deg P).
inline RootIsolation isolate_real_roots(const RPoly& p,
                                        std::optional<long> ambient_n = std::nullopt) {
  if (p.is_zero()) throw std::domain_error("isolate_real_roots: zero polynomial");
  if (ambient_n && *ambient_n < p.degree())
    throw std::domain_error("isolate_real_roots: ambient degree below deg P");
  RootIsolation iso;
  iso.degree = p.degree();
  if (ambient_n) iso.infinity_order = *ambient_n - p.degree();
  iso.origin_order = p.origin_order();
  RPoly body = iso.origin_order ? p.shift_down(iso.origin_order) : p;
  iso.sf = IPoly::one();
  if (body.degree() >= 1) {
    auto factors = yun_decomposition(body);
    RPoly sf_q = RPoly::one();
    for (const auto& [f, m] : factors) sf_q = sf_q * f;
    iso.sf = to_integer_primitive(sf_q);
    SturmChain chain(iso.sf);
    iso.roots = detail::isolate_squarefree(iso.sf, chain);
    // multiplicities: each root belongs to exactly one Yun factor, found by
    // sign change (interval roots are simple) or direct evaluation
    if (factors.size() == 1) {
      for (auto& r : iso.roots) r.multiplicity = factors[0].second;
    } else {
      std::vector<IPoly> fi;
      fi.reserve(factors.size());
      for (const auto& [f, m] : factors) fi.push_back(to_integer_primitive(f));
      for (auto& r : iso.roots) {
        int owner = -1;
        for (std::size_t j = 0; j < fi.size(); ++j) {
          bool has = r.exact ? ipoly_sign_at(fi[j], r.lo) == 0
                             : ipoly_sign_at(fi[j], r.lo) * ipoly_sign_at(fi[j], r.hi) < 0;
          if (has) {
            owner = static_cast<int>(j);
            break;
          }
        }
        if (owner < 0) throw internal_error("isolate_real_roots: root owner not found");
        r.multiplicity = factors[static_cast<std::size_t>(owner)].second;
      }
    }
    // keep every interval on one side of zero (body(0) != 0)
    for (auto& r : iso.roots) {
      int guard = kRefineGuard;
      while (!r.exact && r.contains_zero_inside()) {
        detail::refine_once(iso.sf, r);
        if (--guard < 0) throw refinement_limit_error("isolate_real_roots: zero exclusion");
      }
    }
  }
  if (iso.origin_order > 0) {
    IsolatedRoot zero{Rat(0), Rat(0), true, static_cast<int>(iso.origin_order)};
    auto it = iso.roots.begin();
    while (it != iso.roots.end() && it->sign() < 0) ++it;
    iso.roots.insert(it, zero);
  }
  return iso;
}

// Refine all interval roots below eps (exact roots untouched).
inline void refine(RootIsolation& iso, const Rat& eps) { iso.refine_all(eps); }

inline bool is_real_rooted(const RPoly& p) {
  if (p.degree() <= 0) return true;  // 0 and constants vacuously
  RPoly sf = squarefree_part(p);
  if (sf.degree() == 0) return true;
  return sturm_count(sf) == sf.degree();
}

// --- exact comparison of isolated algebraic numbers ---

namespace detail {

// Strict order when the representations cannot overlap: -1, 0 (=, exact
// only), +1; returns false when undecided at current widths.
inline bool order_if_disjoint(const IsolatedRoot& a, const IsolatedRoot& b, int& out) {
  if (a.exact && b.exact) {
    out = a.lo < b.lo ? -1 : (a.lo == b.lo ? 0 : 1);
    return true;
  }
  if (a.exact) {
    if (a.lo <= b.lo) { out = -1; return true; }
    if (a.lo >= b.hi) { out = 1; return true; }
    return false;
  }
  if (b.exact) {
    if (b.lo <= a.lo) { out = 1; return true; }
    if (b.lo >= a.hi) { out = -1; return true; }
    return false;
  }
  if (a.hi <= b.lo) { out = -1; return true; }
  if (b.hi <= a.lo) { out = 1; return true; }
  return false;
}

}  // namespace detail

// Compares the root a of A with the root b of B; both refinable in place.
// gcd_ab, when supplied, must be gcd(A, B) (pass its chain too if handy).
// Returns -1/0/+1. Termination: unequal roots separate under bisection;
// equal roots are recognized through the gcd.
inline int compare_algebraic(const IPoly& A, IsolatedRoot& a, const IPoly& B, IsolatedRoot& b,
                             const IPoly* gcd_ab = nullptr,
                             const SturmChain* gcd_chain = nullptr) {
  int guard = kRefineGuard;
  IPoly gcd_local;
  bool have_gcd = gcd_ab != nullptr;
  SturmChain chain_local;
  bool have_chain = gcd_chain != nullptr;
  while (true) {
    int ord;
    if (detail::order_if_disjoint(a, b, ord)) return ord;
    if (a.exact) {
      if (b.lo < a.lo && a.lo < b.hi && ipoly_sign_at(B, a.lo) == 0) return 0;
      detail::refine_once(B, b);
    } else if (b.exact) {
      if (a.lo < b.lo && b.lo < a.hi && ipoly_sign_at(A, b.lo) == 0) return 0;
      detail::refine_once(A, a);
    } else {
      if (!have_gcd) {
        gcd_local = ipoly_gcd(A, B);
        have_gcd = true;
      }
      const IPoly& g = gcd_ab ? *gcd_ab : gcd_local;
      if (g.degree() >= 1) {
        if (!have_chain) {
          chain_local = SturmChain(g);
          have_chain = true;
        }
        const SturmChain& gc = gcd_chain ? *gcd_chain : chain_local;
        // endpoints of a (resp. b) are non-roots of A (resp. B), hence of g
        if (gc.count(a.lo, a.hi) == 1 && gc.count(b.lo, b.hi) == 1) {
          Rat lo = a.lo > b.lo ? a.lo : b.lo;
          Rat hi = a.hi < b.hi ? a.hi : b.hi;
          if (lo < hi && gc.count(lo, hi) == 1) return 0;
        }
      }
      detail::refine_once(A, a);
      detail::refine_once(B, b);
    }
    if (--guard < 0) throw refinement_limit_error("compare_algebraic: iteration guard");
  }
}

// A rational point strictly between root i and root i+1 of the isolation
// (i == -1: below all roots; i+1 == count: above all). The returned point
// is never a root. Interval roots may get refined in the process.
inline Rat sample_between(RootIsolation& iso, long i) {
  long n = static_cast<long>(iso.roots.size());
  if (n == 0) return Rat(0);
  auto low_rep = [](const IsolatedRoot& r) { return r.lo; };
  auto high_rep = [](const IsolatedRoot& r) { return r.hi; };
  if (i < 0) return low_rep(iso.roots.front()) - 1;
  if (i + 1 >= n) return high_rep(iso.roots.back()) + 1;
  IsolatedRoot& a = iso.roots[static_cast<std::size_t>(i)];
  IsolatedRoot& b = iso.roots[static_cast<std::size_t>(i + 1)];
  int guard = kRefineGuard;
  while (!(high_rep(a) < low_rep(b))) {
    if (!a.exact) detail::refine_once(iso.sf, a);
    if (!b.exact) detail::refine_once(iso.sf, b);
    if (a.exact && b.exact && !(a.lo < b.lo))
      throw internal_error("sample_between: roots out of order");
    if (--guard < 0) throw refinement_limit_error("sample_between: guard");
  }
  return (high_rep(a) + low_rep(b)) / 2;
}

// When the interval root r of iso.sf is rational, converts it to exact form
// and returns true; otherwise returns false. A rational root of a primitive
// integer polynomial has denominator dividing the leading coefficient, so
// once the interval is narrower than 1/lead^2 the simplest fraction inside
// is the only possible candidate.
inline bool rationalize_root(RootIsolation& iso, IsolatedRoot& r) {
  if (r.exact) return true;
  Int lead = iso.sf.lead();
  if (lead < 0) lead = -lead;
  detail::refine_below(iso.sf, r, Rat(1) / Rat(lead * lead));
  if (r.exact) return true;
  Rat s = simplest_rational_between(r.lo, r.hi);
  if (ipoly_sign_at(iso.sf, s) == 0) {
    r.lo = s;
    r.hi = s;
    r.exact = true;
    return true;
  }
  return false;
}

// A(z/q) integerized: its roots are q * (roots of A), q > 0.
inline IPoly scale_roots(const IPoly& A, const Rat& q) {
  if (q <= 0) throw std::domain_error("scale_roots: scale must be positive");
  std::vector<Rat> c(A.coeffs().size());
  Rat inv = Rat(1) / q;
  Rat p(1);
  for (std::size_t k = 0; k < c.size(); ++k) {
    c[k] = Rat(A[k]) * p;
    p *= inv;
  }
  return to_integer_primitive(RPoly(std::move(c)));
}

inline IsolatedRoot scale_root_interval(const IsolatedRoot& r, const Rat& q) {
  IsolatedRoot s = r;
  s.lo = r.lo * q;
  s.hi = r.hi * q;
  return s;
}

}  // namespace qsep

#endif
