#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qsep/poly.hpp"
#include "qsep/rational.hpp"
#include "qsep/realroots.hpp"

namespace qsep {

// Pairwise zero-position relations between real-rooted polynomials, plus the
// two unit-circle variants for conjugate-reciprocal polynomials.
enum class RelationKind {
  kInterlace,              // wronskian(f, g) <= 0 everywhere
  kInterlaceStrict,        // ... < 0 everywhere (no common zeros)
  kInterlaceOrigin,        // <= 0 and common zeros confined to the origin
  kAlternate,              // g interlaces z*f
  kAlternateStrict,        // g origin-interlaces z*f
  kAlternateNonpos,        // alternate, and all zeros of f and g in (-inf, 0]
  kAlternateNonposStrict,  //
  kCircleInterlace,        // interlace after transport to the real axis
  kCircleInterlaceStrict,  //
};

inline std::string relation_name(RelationKind k) {
  switch (k) {
    case RelationKind::kInterlace: return "interlace";
    case RelationKind::kInterlaceStrict: return "interlace_strict";
    case RelationKind::kInterlaceOrigin: return "interlace_origin";
    case RelationKind::kAlternate: return "alternate";
    case RelationKind::kAlternateStrict: return "alternate_strict";
    case RelationKind::kAlternateNonpos: return "alternate_nonpos";
    case RelationKind::kAlternateNonposStrict: return "alternate_nonpos_strict";
    case RelationKind::kCircleInterlace: return "circle_interlace";
    case RelationKind::kCircleInterlaceStrict: return "circle_interlace_strict";
  }
  return "unknown";
}

struct RelationVerdict {
  RelationKind kind = RelationKind::kInterlace;
  bool holds = false;
  std::string detail;                // short reason tag, always set when !holds
  std::optional<Rat> witness_point;  // point where a sign condition fails
};

inline RPoly wronskian(const RPoly& f, const RPoly& g) {
  return f.derivative() * g - f * g.derivative();
}

// true iff h == z^deg(h) up to the (monic) normalization
inline bool is_origin_power(const RPoly& h) {
  if (h.is_zero()) return false;
  for (long k = 0; k < h.degree(); ++k)
    if (sgn(h.coeff(static_cast<std::size_t>(k))) != 0) return false;
  return true;
}

inline bool only_simple_zeros(const RPoly& f) {
  if (f.degree() <= 0) return true;
  for (const auto& fm : yun_decomposition(f))
    if (fm.second > 1) return false;
  return true;
}

inline bool only_simple_zeros_off_origin(const RPoly& f) {
  if (f.degree() <= 0) return true;
  for (const auto& fm : yun_decomposition(f)) {
    if (fm.second <= 1) continue;
    const RPoly& fac = fm.first;
    if (!(fac.degree() == 1 && sgn(fac.coeff(0)) == 0)) return false;
  }
  return true;
}

// {0} together with the real-rooted polynomials that have only simple zeros
// and, when an ambient degree n is given, degree n or n-1
inline bool simple_zero_class_member(const RPoly& f, std::optional<long> ambient) {
  if (f.is_zero()) return true;
  if (!is_real_rooted(f) || !only_simple_zeros(f)) return false;
  if (ambient) return f.degree() == *ambient || f.degree() == *ambient - 1;
  return true;
}

// For real-rooted f != 0: every zero lies in (-inf, 0] iff all coefficients
// share the sign of the leading one.
inline bool zeros_nonpositive(const RPoly& f) {
  int s = sgn(f.lead());
  for (const auto& c : f.coeffs())
    if (sgn(c) * s < 0) return false;
  return true;
}

namespace detail {

inline Rat positive_zero_witness(const RPoly& h) {
  auto iso = isolate_real_roots(h);
  for (auto& r : iso.roots)
    if (r.sign() > 0) return r.exact ? r.lo : r.midpoint();
  throw internal_error("positive zero witness requested but no positive zero");
}

// Decides wronskian(f, g) <= 0 on all of R for nonzero real-rooted f, g.
// On failure the verdict carries a rational point with positive wronskian.
inline RelationVerdict wronskian_nonpositive(const RPoly& f, const RPoly& g) {
  RelationVerdict v;
  RPoly w = wronskian(f, g);
  if (w.is_zero()) {
    v.holds = true;
    v.detail = "wronskian vanishes identically";
    return v;
  }
  RPoly odd = RPoly::one();
  if (w.degree() >= 1) {
    for (const auto& fm : yun_decomposition(w))
      if (fm.second % 2 == 1) odd = odd * fm.first;
  }
  bool sign_change = odd.degree() >= 1 && sturm_count(odd) > 0;
  if (!sign_change) {
    Rat s(0);
    for (long k = 0;; ++k) {
      s = Rat(k % 2 == 0 ? k / 2 : -(k / 2 + 1));
      if (sgn(w.evaluate(s)) != 0) break;
    }
    if (sgn(w.evaluate(s)) < 0) {
      if (w.degree() % 2 != 0 || sgn(w.lead()) > 0)
        throw internal_error("wronskian sign analysis inconsistent at infinity");
      v.holds = true;
      v.detail = "wronskian nonpositive";
      return v;
    }
  }
  // not nonpositive: exhibit a point where the wronskian is positive
  auto iso = isolate_real_roots(w);
  long cnt = static_cast<long>(iso.roots.size());
  for (long i = -1; i < cnt; ++i) {
    Rat t = sample_between(iso, i);
    if (sgn(w.evaluate(t)) > 0) {
      v.holds = false;
      v.detail = "wronskian positive";
      v.witness_point = t;
      return v;
    }
  }
  throw internal_error("wronskian positivity witness not found");
}

// Zero/pole alternation decision for "g interlaces z*f", read off the
// rational function f/g directly: after cancelling the gcd, the negative
// axis must carry zero < pole < zero < ... < pole (the leftmost zero may sit
// at -inf), the positive axis pole < zero < ... < pole < zero (the rightmost
// zero may sit at +inf), a pole at the origin may close either side, and f/g
// must be positive between the two innermost poles (or tend to -inf at a
// double origin pole).
inline bool alternate_by_pattern(const RPoly& f, const RPoly& g) {
  RPoly c = gcd(f, g);
  RPoly p = c.degree() >= 1 ? divexact(f, c) : f;
  RPoly q = c.degree() >= 1 ? divexact(g, c) : g;
  if (p.degree() <= 0 && q.degree() <= 0) return sgn(p.coeff(0)) == sgn(q.coeff(0));
  long m_inf = q.degree() - p.degree();
  if (m_inf < 0 || m_inf > 2) return false;
  if (p.origin_order() > 0) return false;
  long zq = static_cast<long>(q.origin_order());
  if (zq > 2) return false;

  std::optional<RootIsolation> ip, iq;
  if (p.degree() >= 1) ip.emplace(isolate_real_roots(p));
  if (q.degree() >= 1) iq.emplace(isolate_real_roots(q));
  if (ip)
    for (const auto& r : ip->roots)
      if (r.multiplicity != 1) return false;
  if (iq)
    for (const auto& r : iq->roots)
      if (r.multiplicity != 1 && !(r.exact && sgn(r.lo) == 0)) return false;

  std::vector<IsolatedRoot*> pneg, ppos, qneg, qpos;
  if (ip)
    for (auto& r : ip->roots) (r.sign() < 0 ? pneg : ppos).push_back(&r);
  if (iq)
    for (auto& r : iq->roots) {
      if (r.exact && sgn(r.lo) == 0) continue;
      (r.sign() < 0 ? qneg : qpos).push_back(&r);
    }
  const IPoly* sp = ip ? &ip->sf : nullptr;
  const IPoly* sq = iq ? &iq->sf : nullptr;

  struct El {
    int kind;  // 0: -inf marker, 1: finite root, 2: origin, 3: +inf marker
    IsolatedRoot* r;
  };
  auto el_cmp = [&](const El& a, const IPoly* oa, const El& b, const IPoly* ob) -> int {
    if (a.kind == 0) return -1;
    if (b.kind == 0) return 1;
    if (a.kind == 3) return 1;
    if (b.kind == 3) return -1;
    if (a.kind == 2 && b.kind == 2) throw internal_error("pattern: origin vs origin");
    if (a.kind == 2) return -(b.r->sign());
    if (b.kind == 2) return a.r->sign();
    if (oa == ob || !oa || !ob) throw internal_error("pattern: bad owner pairing");
    return compare_algebraic(*oa, *a.r, *ob, *b.r);
  };
  // first[0] < second[0] < first[1] < second[1] < ...
  auto interleaved = [&](const std::vector<El>& first, const IPoly* of,
                         const std::vector<El>& second, const IPoly* os) -> bool {
    if (first.size() != second.size()) return false;
    for (std::size_t i = 0; i < first.size(); ++i) {
      if (el_cmp(first[i], of, second[i], os) >= 0) return false;
      if (i + 1 < first.size() && el_cmp(second[i], os, first[i + 1], of) >= 0) return false;
    }
    return true;
  };

  for (int inf_left = 0; inf_left <= 1; ++inf_left) {
    int inf_right = static_cast<int>(m_inf) - inf_left;
    if (inf_right < 0 || inf_right > 1) continue;
    for (int zero_left = 0; zero_left <= 1; ++zero_left) {
      int zero_right = static_cast<int>(zq) - zero_left;
      if (zero_right < 0 || zero_right > 1) continue;

      std::vector<El> lz, lp, rp, rz;
      if (inf_left) lz.push_back({0, nullptr});
      for (auto* r : pneg) lz.push_back({1, r});
      for (auto* r : qneg) lp.push_back({1, r});
      if (zero_left) lp.push_back({2, nullptr});
      if (zero_right) rp.push_back({2, nullptr});
      for (auto* r : qpos) rp.push_back({1, r});
      for (auto* r : ppos) rz.push_back({1, r});
      if (inf_right) rz.push_back({3, nullptr});

      if (!interleaved(lz, sp, lp, sq)) continue;
      if (!interleaved(rp, sq, rz, sp)) continue;

      if (zq == 2) {
        // double pole at the origin: the ratio must tend to -inf there
        if (sgn(p.coeff(0)) * sgn(q.coeff(static_cast<std::size_t>(zq))) < 0) return true;
        continue;
      }
      // sample strictly between the innermost poles
      long idx_lower;
      if (zero_left)
        idx_lower = static_cast<long>(qneg.size());
      else if (!qneg.empty())
        idx_lower = static_cast<long>(qneg.size()) - 1;
      else
        idx_lower = -1;
      if (!iq) throw internal_error("pattern: positivity without poles");
      Rat s = sample_between(*iq, idx_lower);
      int sig = sgn(p.evaluate(s)) * sgn(q.evaluate(s));
      if (sig == 0) throw internal_error("pattern: positivity sample hit a zero");
      if (sig > 0) return true;
    }
  }
  return false;
}

}  // namespace detail

namespace detail {

inline RelationVerdict relation_impl(const RPoly& f, const RPoly& g, RelationKind kind,
                                     std::optional<long> ambient) {
  if (kind == RelationKind::kCircleInterlace || kind == RelationKind::kCircleInterlaceStrict)
    throw std::invalid_argument("relation: circle relations take complex inputs, use t_relation");
  if (ambient && (*ambient < f.degree() || *ambient < g.degree()))
    throw std::domain_error("relation: ambient degree below the input degrees");
  if (!is_real_rooted(f) || !is_real_rooted(g))
    throw std::domain_error("relation: inputs must be real-rooted");

  RelationVerdict v;
  const bool fz = f.is_zero(), gz = g.is_zero();
  switch (kind) {
    case RelationKind::kInterlace: {
      if (fz || gz) {
        v.holds = true;
        v.detail = "zero polynomial convention";
        return v;
      }
      return detail::wronskian_nonpositive(f, g);
    }
    case RelationKind::kInterlaceStrict: {
      if (fz || gz) {
        const RPoly& other = fz ? g : f;
        std::optional<long> amb = ambient ? ambient
                                          : std::optional<long>(std::max(f.degree(), g.degree()));
        v.holds = simple_zero_class_member(other, amb);
        v.detail = v.holds ? "zero polynomial convention"
                           : "counterpart of 0 must have simple zeros and near-ambient degree";
        return v;
      }
      if (f.degree() == 0 && g.degree() == 0) {
        v.holds = true;
        v.detail = "nonzero constants";
        return v;
      }
      RPoly w = wronskian(f, g);
      bool route_w = false;
      if (w.is_zero()) {
        v.detail = "wronskian vanishes identically";
      } else if (sturm_count(w) > 0) {
        v.detail = "wronskian has a real zero";
      } else {
        int s = sgn(w.evaluate(Rat(0)));
        route_w = s < 0;
        if (!route_w) {
          v.detail = "wronskian positive";
          v.witness_point = Rat(0);
        }
      }
      bool route_def =
          detail::wronskian_nonpositive(f, g).holds && gcd(f, g).degree() == 0;
      if (route_w != route_def) throw internal_error("strict interlacing routes disagree");
      v.holds = route_w;
      if (v.holds) v.detail = "wronskian negative";
      return v;
    }
    case RelationKind::kInterlaceOrigin: {
      if (fz || gz) {
        const RPoly& other = fz ? g : f;
        v.holds = only_simple_zeros_off_origin(other);
        v.detail = v.holds ? "zero polynomial convention"
                           : "counterpart of 0 has a multiple zero away from the origin";
        return v;
      }
      RelationVerdict base = detail::wronskian_nonpositive(f, g);
      if (!base.holds) return base;
      if (!is_origin_power(gcd(f, g))) {
        v.holds = false;
        v.detail = "common zero away from the origin";
        return v;
      }
      v.holds = true;
      v.detail = "wronskian nonpositive, common zeros only at the origin";
      return v;
    }
    case RelationKind::kAlternate:
    case RelationKind::kAlternateStrict: {
      const bool strict = kind == RelationKind::kAlternateStrict;
      if (fz || gz) {
        if (strict) {
          const RPoly& other = fz ? g : f;
          v.holds = only_simple_zeros_off_origin(other);
          v.detail = v.holds ? "zero polynomial convention"
                             : "counterpart of 0 has a multiple zero away from the origin";
        } else {
          v.holds = true;
          v.detail = "zero polynomial convention";
        }
        return v;
      }
      RPoly zf = f.shift_up(1);
      RelationVerdict r1 = relation_impl(
          g, zf, strict ? RelationKind::kInterlaceOrigin : RelationKind::kInterlace,
          std::nullopt);
      bool r2 = detail::alternate_by_pattern(f, g);
      if (strict) r2 = r2 && is_origin_power(gcd(f, g));
      if (r1.holds != r2) throw internal_error("alternation routes disagree");
      return r1;
    }
    case RelationKind::kAlternateNonpos:
    case RelationKind::kAlternateNonposStrict: {
      for (const RPoly* h : {&f, &g}) {
        if (!h->is_zero() && !zeros_nonpositive(*h)) {
          v.holds = false;
          v.detail = "zero in (0, inf)";
          v.witness_point = detail::positive_zero_witness(*h);
          return v;
        }
      }
      return relation_impl(f, g,
                           kind == RelationKind::kAlternateNonpos
                               ? RelationKind::kAlternate
                               : RelationKind::kAlternateStrict,
                           ambient);
    }
    default:
      throw std::invalid_argument("relation: unknown kind");
  }
}

}  // namespace detail

inline RelationVerdict relation(const RPoly& f, const RPoly& g, RelationKind kind,
                                std::optional<long> ambient = std::nullopt) {
  RelationVerdict v = detail::relation_impl(f, g, kind, ambient);
  v.kind = kind;
  return v;
}

// --- linear-fraction decomposition over the zeros of f ---

struct PartialFractionTerm {
  Rat pole;   // a zero y of f
  Rat coeff;  // coefficient on f / (z - y)
};

// g written in the basis {-z*f, f, f/(z - y)}: g = c_inf * (-z*f) + c_0 * f
// + sum_y c_y * f/(z - y). Requires all zeros of f real, simple and rational,
// and deg g <= deg f + 1.
struct PartialFractions {
  Rat c_inf;
  Rat c_0;
  std::vector<PartialFractionTerm> terms;
};

inline PartialFractions partial_fractions(const RPoly& f, const RPoly& g) {
  if (f.is_zero()) throw std::domain_error("partial_fractions: zero denominator");
  if (g.degree() > f.degree() + 1)
    throw std::domain_error("partial_fractions: deg g exceeds deg f + 1");
  PartialFractions out;
  out.c_inf = g.degree() == f.degree() + 1 ? Rat(-(g.lead() / f.lead())) : Rat(0);
  RPoly fp = f.derivative();
  RPoly acc = g + out.c_inf * f.shift_up(1);  // strip the -z*f component
  if (f.degree() >= 1) {
    auto iso = isolate_real_roots(f);
    if (iso.multiplicity_sum() != f.degree())
      throw std::domain_error("partial_fractions: zeros of f must all be real");
    for (auto& r : iso.roots) {
      if (r.multiplicity != 1 || !rationalize_root(iso, r))
        throw std::domain_error("partial_fractions: zeros of f must be simple and rational");
      Rat y = r.lo;
      Rat cy = g.evaluate(y) / fp.evaluate(y);
      // the same coefficient through the reciprocal derivative of f/g
      if (sgn(g.evaluate(y)) != 0) {
        RPoly num = fp * g - f * g.derivative();
        Rat recip = num.evaluate(y) / (g.evaluate(y) * g.evaluate(y));
        if (cy * recip != 1) throw internal_error("partial_fractions: residue cross-check");
      }
      out.terms.push_back({y, cy});
      RPoly linear(std::vector<Rat>{-y, Rat(1)});
      acc = acc - cy * divexact(f, linear);
    }
  }
  if (acc.is_zero()) {
    out.c_0 = Rat(0);
  } else {
    RPoly c0 = divexact(acc, f);
    if (c0.degree() > 0) throw internal_error("partial_fractions: nonconstant remainder");
    out.c_0 = c0.coeff(0);
  }
  // exact reconstruction
  RPoly rebuilt = out.c_0 * f - out.c_inf * f.shift_up(1);
  for (const auto& t : out.terms) {
    RPoly linear(std::vector<Rat>{-t.pole, Rat(1)});
    rebuilt = rebuilt + t.coeff * divexact(f, linear);
  }
  if (rebuilt != g) throw internal_error("partial_fractions: reconstruction mismatch");
  return out;
}

inline bool partial_fraction_coeffs_nonpositive(const PartialFractions& pf) {
  if (sgn(pf.c_inf) > 0) return false;
  for (const auto& t : pf.terms)
    if (sgn(t.coeff) > 0) return false;
  return true;
}

inline bool partial_fraction_coeffs_strict(const PartialFractions& pf) {
  if (sgn(pf.c_inf) > 0) return false;
  for (const auto& t : pf.terms)
    if (sgn(t.coeff) >= 0) return false;
  return true;
}

// --- transport between the unit circle and the real axis ---

namespace detail {

// sum_k h_k (z - i)^k (z + i)^(n - k)
inline CPoly mobius_transport(const CPoly& h, long n) {
  if (n < 0 || h.degree() > n) throw std::domain_error("mobius_psi: degree exceeds ambient");
  CPoly zm(std::vector<GaussRat>{GaussRat(Rat(0), Rat(-1)), GaussRat(Rat(1))});
  CPoly zp(std::vector<GaussRat>{GaussRat(Rat(0), Rat(1)), GaussRat(Rat(1))});
  std::vector<CPoly> pm(static_cast<std::size_t>(n) + 1), pp(static_cast<std::size_t>(n) + 1);
  pm[0] = CPoly::one();
  pp[0] = CPoly::one();
  for (std::size_t k = 1; k <= static_cast<std::size_t>(n); ++k) {
    pm[k] = pm[k - 1] * zm;
    pp[k] = pp[k - 1] * zp;
  }
  CPoly out;
  for (long k = 0; k <= h.degree(); ++k)
    out = out + h.coeff(static_cast<std::size_t>(k)) *
                    (pm[static_cast<std::size_t>(k)] * pp[static_cast<std::size_t>(n - k)]);
  return out;
}

// inverse transport: (2i)^(-n) sum_k p_k i^k (1 + w)^k (1 - w)^(n - k)
inline CPoly mobius_transport_inv(const CPoly& p, long n) {
  if (n < 0 || p.degree() > n) throw std::domain_error("mobius_psi_inv: degree exceeds ambient");
  CPoly op(std::vector<GaussRat>{GaussRat(Rat(1)), GaussRat(Rat(1))});
  CPoly om(std::vector<GaussRat>{GaussRat(Rat(1)), GaussRat(Rat(-1))});
  std::vector<CPoly> pa(static_cast<std::size_t>(n) + 1), pb(static_cast<std::size_t>(n) + 1);
  pa[0] = CPoly::one();
  pb[0] = CPoly::one();
  for (std::size_t k = 1; k <= static_cast<std::size_t>(n); ++k) {
    pa[k] = pa[k - 1] * op;
    pb[k] = pb[k - 1] * om;
  }
  CPoly out;
  for (long k = 0; k <= p.degree(); ++k)
    out = out + (p.coeff(static_cast<std::size_t>(k)) * gauss_i_pow(k)) *
                    (pa[static_cast<std::size_t>(k)] * pb[static_cast<std::size_t>(n - k)]);
  GaussRat scale = gauss_i_pow(-n);
  scale.re /= rat_pow(Rat(2), n);
  scale.im /= rat_pow(Rat(2), n);
  return scale * out;
}

}  // namespace detail

// Conjugate-reciprocal polynomials with all zeros on the unit circle map to
// real polynomials with all zeros on the real axis, preserving relative zero
// positions; this realizes that change of variable.
inline RPoly mobius_psi(const CPoly& h, long n) {
  if (!h.is_zero() && !is_self_inversive(h, n))
    throw std::domain_error("mobius_psi: input must be conjugate-reciprocal");
  auto parts = complex_split(detail::mobius_transport(h, n));
  if (!parts.second.is_zero())
    throw internal_error("mobius_psi: image of a conjugate-reciprocal input must be real");
  return parts.first;
}

inline CPoly mobius_psi_inv(const RPoly& p, long n) {
  return detail::mobius_transport_inv(to_cpoly(p), n);
}

namespace detail {

inline std::complex<double> eval_cd(const CPoly& h, std::complex<double> z) {
  std::complex<double> acc(0.0, 0.0);
  for (long k = h.degree(); k >= 0; --k) {
    const GaussRat& c = h.coeff(static_cast<std::size_t>(k));
    acc = acc * z + std::complex<double>(rat_to_double(c.re), rat_to_double(c.im));
  }
  return acc;
}

}  // namespace detail

// Relations on conjugate-reciprocal polynomials with unit-circle zeros,
// decided through the real-axis transport. When the verdict is positive it
// is cross-checked on a grid inside the unit disk, where the imaginary part
// of f/g must not be positive.
inline RelationVerdict t_relation(const CPoly& f, const CPoly& g, RelationKind kind, long n) {
  if (kind != RelationKind::kCircleInterlace && kind != RelationKind::kCircleInterlaceStrict)
    throw std::invalid_argument("t_relation: takes circle relation kinds only");
  const bool strict = kind == RelationKind::kCircleInterlaceStrict;
  if (n < f.degree() || n < g.degree())
    throw std::domain_error("t_relation: ambient degree below the input degrees");
  for (const CPoly* h : {&f, &g})
    if (!h->is_zero() && !is_self_inversive(*h, n))
      throw std::domain_error("t_relation: inputs must be conjugate-reciprocal");
  RPoly a = mobius_psi(f, n);
  RPoly b = mobius_psi(g, n);
  if (!is_real_rooted(a) || !is_real_rooted(b))
    throw std::domain_error("t_relation: zeros must lie on the unit circle");

  RelationVerdict v;
  v.kind = kind;
  if (strict && !f.is_zero() && !g.is_zero()) {
    // a common zero at 1 transports to a common degree drop, invisible to
    // the gcd of the images
    if (f.evaluate(GaussRat(Rat(1))) == GaussRat() &&
        g.evaluate(GaussRat(Rat(1))) == GaussRat()) {
      v.holds = false;
      v.detail = "common zero at 1";
      return v;
    }
  }
  v = relation(a, b, strict ? RelationKind::kInterlaceStrict : RelationKind::kInterlace, n);
  v.kind = kind;

  if (v.holds && !f.is_zero() && !g.is_zero()) {
    for (int ri = 0; ri < 4; ++ri) {
      static const double radii[4] = {0.25, 0.5, 0.75, 0.9};
      for (int j = 0; j < 8; ++j) {
        double theta = 2.0 * 3.14159265358979323846 * (j + 1.0 / 3.0) / 8.0;
        std::complex<double> z = radii[ri] * std::complex<double>(std::cos(theta), std::sin(theta));
        std::complex<double> fv = detail::eval_cd(f, z);
        std::complex<double> gv = detail::eval_cd(g, z);
        if (std::abs(gv) < 1e-12) continue;
        std::complex<double> ratio = fv / gv;
        if (ratio.imag() > 1e-7 * (1.0 + std::abs(ratio)))
          throw internal_error("t_relation: disk sample contradicts the verdict");
      }
    }
  }
  return v;
}

}  // namespace qsep
