#pragma once

// Strict log-concavity of finite rational sequences, the q-certificate
// search that realizes it through membership of Σ C_k^n(q) a_k z^k in the
// geometric-separation classes, small-q root predictions used as sanity
// windows, and a floating-point half-plane cross-check.

#include <complex>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qsep/poly.hpp"
#include "qsep/qcalc.hpp"
#include "qsep/rational.hpp"
#include "qsep/realroots.hpp"

namespace qsep {

// A finite rational sequence a_0..a_n.
struct Sequence {
  std::vector<Rat> a;
};

struct LogConcavityVerdict {
  bool holds = false;
  std::optional<long> failing_index;
};

// a_k^2 > a_{k-1} a_{k+1} for every k inside the support envelope (some
// nonzero entry at or before k, and some at or after k); a_{-1} and
// a_{n+1} count as 0. Indices outside the envelope are exempt.
inline LogConcavityVerdict is_strictly_log_concave(const Sequence& s) {
  if (s.a.empty()) throw std::invalid_argument("is_strictly_log_concave: empty sequence");
  long n = static_cast<long>(s.a.size()) - 1;
  long lo = -1, hi = -1;
  for (long k = 0; k <= n; ++k)
    if (s.a[static_cast<std::size_t>(k)] != 0) {
      if (lo < 0) lo = k;
      hi = k;
    }
  LogConcavityVerdict v;
  if (lo < 0) {
    v.holds = true;  // all-zero sequence, nothing to check
    return v;
  }
  auto at = [&](long k) { return k < 0 || k > n ? Rat(0) : s.a[static_cast<std::size_t>(k)]; };
  for (long k = lo; k <= hi; ++k) {
    if (!(at(k) * at(k) > at(k - 1) * at(k + 1))) {
      v.failing_index = k;
      return v;
    }
  }
  v.holds = true;
  return v;
}

// Strict log-concavity plus a uniform sign (all entries >= 0 or all <= 0).
inline LogConcavityVerdict is_log_concave_plus(const Sequence& s) {
  LogConcavityVerdict v = is_strictly_log_concave(s);
  if (!v.holds) return v;
  bool has_pos = false, has_neg = false;
  for (long k = 0; k < static_cast<long>(s.a.size()); ++k) {
    int sg = sgn(s.a[static_cast<std::size_t>(k)]);
    if (sg > 0) has_pos = true;
    if (sg < 0) has_neg = true;
    if (has_pos && has_neg) {
      v.holds = false;
      v.failing_index = k;  // index where the second sign appeared
      return v;
    }
  }
  return v;
}

// A verified witness that the sequence's weighted polynomial lies in the
// strict class at parameter q.
struct QCertificate {
  Rat q;
  long n = 0;
  RPoly poly;  // sum C_k^n(q) a_k z^k
  RootIsolation iso;
  QClass cls = QClass::kR;
};

enum class CertificateOutcome { kFound, kNotLogConcave, kFloorReached };

struct CertificateSearch {
  CertificateOutcome outcome = CertificateOutcome::kNotLogConcave;
  std::optional<QCertificate> cert;
  std::string detail;
};

namespace detail {

inline RPoly weighted_poly(const Sequence& s, const Rat& q) {
  QBasisVector v;
  v.n = static_cast<long>(s.a.size()) - 1;
  v.q = q;
  v.a = s.a;
  return from_q_basis(v);
}

}  // namespace detail

// Searches for the largest verifiable q: descend the grid 1/2, 1/4, ...
// until membership of the weighted polynomial in the strict class first
// holds, then bisect upward toward the supremum. Smaller q stay workable
// once one works, so the largest verified q is a canonical answer. With a
// uniform sign the target class is N, otherwise R.
inline CertificateSearch find_q_certificate(const Sequence& s,
                                            const Rat& q_floor = Rat(1, 1048576),
                                            int bisection_depth = 30) {
  if (q_floor <= 0 || q_floor >= 1)
    throw std::domain_error("find_q_certificate: need q_floor in (0, 1)");
  if (bisection_depth < 0)
    throw std::domain_error("find_q_certificate: need bisection_depth >= 0");
  CertificateSearch out;
  LogConcavityVerdict lc = is_strictly_log_concave(s);
  if (!lc.holds) {
    out.outcome = CertificateOutcome::kNotLogConcave;
    out.detail = "not strictly log-concave (index " +
                 std::to_string(lc.failing_index.value_or(-1)) + ")";
    return out;
  }
  long n = static_cast<long>(s.a.size()) - 1;
  QClass cls = is_log_concave_plus(s).holds ? QClass::kN : QClass::kR;
  bool all_zero = true;
  for (const auto& x : s.a)
    if (x != 0) all_zero = false;
  if (all_zero) {
    QCertificate c;
    c.q = Rat(1);
    c.n = n;
    c.poly = RPoly::zero();
    c.cls = QClass::kN;
    out.outcome = CertificateOutcome::kFound;
    out.cert = std::move(c);
    out.detail = "all-zero sequence";
    return out;
  }
  auto member = [&](const Rat& q) {
    return class_membership(detail::weighted_poly(s, q), n, q, cls).member;
  };
  Rat lo;
  Rat hi(1);
  Rat q(1, 2);
  while (true) {
    if (member(q)) {
      lo = q;
      break;
    }
    hi = q;
    q /= 2;
    if (q < q_floor) {
      out.outcome = CertificateOutcome::kFloorReached;
      out.detail = "strictly log-concave but no workable q above " + rat_str(q_floor) +
                   " (grid exhausted at " + rat_str(hi) + ")";
      return out;
    }
  }
  for (int i = 0; i < bisection_depth; ++i) {
    Rat mid = (lo + hi) / 2;
    if (member(mid))
      lo = mid;
    else
      hi = mid;
  }
  QCertificate c;
  c.q = lo;
  c.n = n;
  c.poly = detail::weighted_poly(s, lo);
  c.cls = cls;
  MembershipVerdict recheck = class_membership(c.poly, n, lo, cls);
  if (!recheck.member) throw internal_error("find_q_certificate: certificate failed re-verification");
  c.iso = isolate_real_roots(c.poly);
  out.outcome = CertificateOutcome::kFound;
  out.cert = std::move(c);
  return out;
}

namespace detail {

// Floor of sqrt(x) to about 2^-48 relative error; exact for perfect squares.
inline Rat rat_sqrt_approx(const Rat& x) {
  if (x < 0) throw std::domain_error("rat_sqrt_approx: negative argument");
  Int p = rat_num(x), r = rat_den(x);
  if (p == 0) return Rat(0);
  const unsigned k = 48;
  Int shifted = (p * r) << (2 * k);
  Int root = boost::multiprecision::sqrt(shifted);
  return Rat(root) / (Rat(r) * rat_pow(Rat(2), k));
}

}  // namespace detail

// Leading-order locations of the zeros of sum C_k^n(q) a_k z^k as q -> 0:
// slot m carries -q^{-m} a_m / a_{m+1} when both entries are nonzero, and
// an interior zero entry a_{m+1} = 0 produces the symmetric pair
// -+ q^{-m-1/2} sqrt(-a_m / a_{m+2}) in slots m, m+1. Requires a strictly
// log-concave sequence with a_0 != 0 and a_n != 0, which makes the slot
// assignment complete (no two adjacent entries can vanish).
inline std::vector<Rat> small_q_prediction(const Sequence& s, const Rat& q) {
  LogConcavityVerdict lc = is_strictly_log_concave(s);
  if (!lc.holds) throw std::domain_error("small_q_prediction: sequence not strictly log-concave");
  if (q <= 0 || q > 1) throw std::domain_error("small_q_prediction: need q in (0, 1]");
  long n = static_cast<long>(s.a.size()) - 1;
  if (n < 0 || s.a.front() == 0 || s.a.back() == 0)
    throw std::domain_error("small_q_prediction: need a_0 != 0 and a_n != 0");
  auto at = [&](long k) { return s.a[static_cast<std::size_t>(k)]; };
  std::vector<Rat> pred(static_cast<std::size_t>(n));
  long m = 0;
  while (m <= n - 1) {
    if (at(m) != 0 && at(m + 1) != 0) {
      pred[static_cast<std::size_t>(m)] = -rat_pow(q, -m) * at(m) / at(m + 1);
      ++m;
    } else {
      // a_{m+1} == 0 (a_m != 0 by log-concavity); pair straddling zero
      Rat mag = rat_pow(q, -m - 1) * detail::rat_sqrt_approx(q * (-at(m) / at(m + 2)));
      pred[static_cast<std::size_t>(m)] = -mag;
      pred[static_cast<std::size_t>(m) + 1] = mag;
      m += 2;
    }
  }
  return pred;
}

enum class HalfPlaneOutcome { kOneHalfPlane, kMixed, kIndeterminate, kNumericFailure };

struct HalfPlaneVerdict {
  HalfPlaneOutcome outcome = HalfPlaneOutcome::kNumericFailure;
  std::string detail;
  std::vector<std::complex<double>> roots;  // nonzero roots found (diagnostic)
};

namespace detail {

// Bit length of |x|, roughly log2.
inline long int_log2(const Int& x) {
  Int a = x < 0 ? Int(-x) : x;
  if (a == 0) return 0;
  return static_cast<long>(boost::multiprecision::msb(a));
}

inline long rat_log2(const Rat& x) { return int_log2(rat_num(x)) - int_log2(rat_den(x)); }

// Simultaneous root iteration on a monic-normalized complex polynomial.
// Returns false when the iteration stalls or residuals stay large.
inline bool aberth_roots(const std::vector<std::complex<double>>& coeff,
                         std::vector<std::complex<double>>& roots) {
  long d = static_cast<long>(coeff.size()) - 1;
  if (d < 1) {
    roots.clear();
    return true;
  }
  double bound = 0;
  for (long k = 0; k < d; ++k) bound = std::max(bound, std::abs(coeff[static_cast<std::size_t>(k)] / coeff[static_cast<std::size_t>(d)]));
  double radius = 1 + bound;
  roots.resize(static_cast<std::size_t>(d));
  const double pi = 3.14159265358979323846;
  for (long j = 0; j < d; ++j) {
    double ang = 2 * pi * (static_cast<double>(j) + 0.354) / static_cast<double>(d);
    roots[static_cast<std::size_t>(j)] = std::polar(radius * 0.7, ang);
  }
  auto eval = [&](std::complex<double> z, std::complex<double>& p, std::complex<double>& dp) {
    p = coeff[static_cast<std::size_t>(d)];
    dp = 0;
    for (long k = d - 1; k >= 0; --k) {
      dp = dp * z + p;
      p = p * z + coeff[static_cast<std::size_t>(k)];
    }
  };
  bool settled = false;
  for (int step = 0; step < 400 && !settled; ++step) {
    settled = true;
    for (long j = 0; j < d; ++j) {
      std::complex<double>& z = roots[static_cast<std::size_t>(j)];
      std::complex<double> p, dp;
      eval(z, p, dp);
      if (p == std::complex<double>(0)) continue;
      std::complex<double> w = dp == std::complex<double>(0) ? std::complex<double>(0)
                                                             : p / dp;
      if (w == std::complex<double>(0)) {
        z += 1e-3 * radius;  // stalled on a critical point; nudge
        settled = false;
        continue;
      }
      std::complex<double> sum = 0;
      for (long k = 0; k < d; ++k)
        if (k != j) sum += std::complex<double>(1) / (z - roots[static_cast<std::size_t>(k)]);
      std::complex<double> delta = w / (std::complex<double>(1) - w * sum);
      z -= delta;
      if (std::abs(delta) > 1e-13 * (1 + std::abs(z))) settled = false;
    }
  }
  if (!settled) return false;
  for (long j = 0; j < d; ++j) {
    std::complex<double> z = roots[static_cast<std::size_t>(j)], p, dp;
    eval(z, p, dp);
    double scale = 0, zp = 1;
    for (long k = 0; k <= d; ++k) {
      scale += std::abs(coeff[static_cast<std::size_t>(k)]) * zp;
      zp *= std::abs(z);
    }
    if (std::abs(p) > 1e-8 * (scale > 0 ? scale : 1)) return false;
  }
  return true;
}

}  // namespace detail

// Floating-point cross-check: the zeros of
//   sum (C_k^n(q) a_k + i q^{k-1} C_{k-1}^n(q) a_{k-1}) z^k
// away from the origin should occupy one open half-plane exactly when the
// weighted polynomial of the sequence has the separation property. This
// check is advisory: it reports indeterminate near the boundary and a
// numeric failure when iteration or residuals are unreliable, and never
// overrides the exact route.
inline HalfPlaneVerdict hermite_biehler_check(const Sequence& s, const Rat& q) {
  if (q <= 0 || q > 1) throw std::domain_error("hermite_biehler_check: need q in (0, 1]");
  if (s.a.empty()) throw std::invalid_argument("hermite_biehler_check: empty sequence");
  long n = static_cast<long>(s.a.size()) - 1;
  HalfPlaneVerdict v;
  std::vector<GaussRat> c(static_cast<std::size_t>(n) + 2);
  for (long k = 0; k <= n + 1; ++k) {
    Rat re = k <= n ? q_binomial(n, k, q) * s.a[static_cast<std::size_t>(k)] : Rat(0);
    Rat im = k >= 1 && k - 1 <= n
                 ? rat_pow(q, k - 1) * q_binomial(n, k - 1, q) * s.a[static_cast<std::size_t>(k) - 1]
                 : Rat(0);
    c[static_cast<std::size_t>(k)] = GaussRat(re, im);
  }
  CPoly p{std::vector<GaussRat>(c)};
  if (p.is_zero()) {
    v.outcome = HalfPlaneOutcome::kOneHalfPlane;
    v.detail = "zero polynomial, nothing to locate";
    return v;
  }
  CPoly body = p.shift_down(p.origin_order());
  if (body.degree() < 1) {
    v.outcome = HalfPlaneOutcome::kOneHalfPlane;
    v.detail = "no zeros away from the origin";
    return v;
  }
  // balance the argument scale by a power of two so the double conversion
  // keeps the dynamic range manageable
  long d = body.degree();
  long spread = detail::rat_log2(rat_abs(body.coeff(0).re) + rat_abs(body.coeff(0).im)) -
                detail::rat_log2(rat_abs(body.lead().re) + rat_abs(body.lead().im));
  long e = spread / (2 * d);
  Rat t = rat_pow(Rat(2), e);
  CPoly balanced = body.scale_arg(GaussRat(t));
  std::vector<std::complex<double>> dc(static_cast<std::size_t>(d) + 1);
  double top = 0;
  for (long k = 0; k <= d; ++k) {
    const GaussRat& g = balanced[static_cast<std::size_t>(k)];
    dc[static_cast<std::size_t>(k)] = {rat_to_double(g.re), rat_to_double(g.im)};
    top = std::max(top, std::abs(dc[static_cast<std::size_t>(k)]));
  }
  if (!(top > 0) || !std::isfinite(top)) {
    v.detail = "coefficients outside double range";
    return v;
  }
  for (auto& z : dc) z /= top;
  std::vector<std::complex<double>> roots;
  if (!detail::aberth_roots(dc, roots)) {
    v.detail = "root iteration did not converge";
    return v;
  }
  double td = rat_to_double(t);
  for (auto& z : roots) z *= td;  // undo the balancing (positive factor)
  v.roots = roots;
  const double tol = 1e-9;
  bool up = false, down = false, borderline = false;
  for (const auto& z : roots) {
    double rel = std::abs(z.imag()) / (1 + std::abs(z));
    if (rel <= tol) {
      borderline = true;
    } else if (z.imag() > 0) {
      up = true;
    } else {
      down = true;
    }
  }
  if (up && down) {
    v.outcome = HalfPlaneOutcome::kMixed;
    v.detail = "zeros on both sides of the real axis";
  } else if (borderline) {
    v.outcome = HalfPlaneOutcome::kIndeterminate;
    v.detail = "a zero sits within tolerance of the real axis";
  } else {
    v.outcome = HalfPlaneOutcome::kOneHalfPlane;
  }
  return v;
}

}  // namespace qsep
