#pragma once

// High-precision moments of the density
//   Phi(t) = sum_{n>=1} (2 n^4 pi^2 e^{9t} - 3 n^2 pi e^{5t}) e^{-n^2 pi e^{4t}}
// and the derived necessary-condition checks on f_n = n! b_n / (2n)! where
// b_n = int_0^inf t^{2n} Phi(t) dt: enclosure-certified strict log-concavity
// (pass/fail) and an exploratory weighted-polynomial membership probe.
//
// Every arithmetic step runs at a selectable binary precision; quadrature
// values are accepted only when two panel resolutions agree, and each
// reported value carries an explicit absolute error bound combining the
// resolution gap, the series tails, the integral tail, and a roundoff
// cushion.

#include <algorithm>
#include <cstdlib>
#include <ios>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "qsep/logconcave.hpp"
#include "qsep/poly.hpp"
#include "qsep/qcalc.hpp"
#include "qsep/rational.hpp"
#include "qsep/realroots.hpp"

namespace qsep {

template <unsigned Bits>
using BigFloat =
    boost::multiprecision::number<boost::multiprecision::backends::cpp_bin_float<
                                      Bits, boost::multiprecision::backends::digit_base_2>,
                                  boost::multiprecision::et_off>;

inline const std::vector<long>& supported_precision_bits() {
  static const std::vector<long> menu{64, 128, 160, 192, 256};
  return menu;
}

struct PhiValue {
  std::string value;       // partial sum
  std::string tail_bound;  // rigorous majorant of the omitted terms
  long terms_used = 0;
};

struct XiCoeffs {
  std::vector<std::string> values;        // b_0 .. b_N
  std::vector<std::string> error_bounds;  // absolute, per entry
  long precision_bits = 0;
  long series_terms = 0;    // deepest series truncation used
  std::string t_cutoff;     // largest upper integration endpoint
};

enum class CheckStatus { kPass, kFail, kInsufficient };

inline std::string check_status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::kPass: return "PASS";
    case CheckStatus::kFail: return "FAIL";
    case CheckStatus::kInsufficient: return "INSUFFICIENT";
  }
  return "UNKNOWN";
}

struct TuranEntry {
  long index = 0;
  CheckStatus status = CheckStatus::kInsufficient;
  std::string lhs_low;   // worst-case lower bound of f_k^2
  std::string rhs_high;  // worst-case upper bound of f_{k-1} f_{k+1}
};

struct QExploration {
  Rat q;
  bool member_midpoint = false;  // membership of the midpoint polynomial
  std::string membership_detail;
  bool margin_reliable = false;  // zero-ratio margins dominate enclosure widths
  std::string margin_note;
};

struct RiemannReport {
  long n_max = 0;
  long precision_bits = 0;
  XiCoeffs moments;
  std::vector<std::string> scaled_values;  // f_n = n! b_n / (2n)!
  std::vector<std::string> scaled_errors;
  bool positivity = false;  // every f_n strictly positive by its enclosure
  std::vector<TuranEntry> turan;
  CheckStatus log_concavity = CheckStatus::kInsufficient;
  std::vector<QExploration> explorations;
};

namespace detail {

template <class F>
const F& pi_const() {
  static const F p = atan(F(1)) * 4;
  return p;
}

template <class F>
std::string float_str(const F& x, long precision_bits) {
  auto digits = static_cast<std::streamsize>(precision_bits * 30103L / 100000L + 4);
  return x.str(digits, std::ios_base::scientific);
}

template <class F>
F float_of_rat(const Rat& r) {
  return F(rat_num(r)) / F(rat_den(r));
}

// Exact decimal snapshot of a printed value, good enough to hand a float to
// the exact-arithmetic layer.
inline Rat rat_of_decimal(const std::string& s) {
  Int mant = 0;
  long exp10 = 0, frac = 0;
  bool neg = false, in_frac = false, done = false;
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = s[i++] == '-';
  for (; i < s.size() && !done; ++i) {
    char c = s[i];
    if (c >= '0' && c <= '9') {
      mant = mant * 10 + (c - '0');
      if (in_frac) ++frac;
    } else if (c == '.') {
      in_frac = true;
    } else if (c == 'e' || c == 'E') {
      exp10 = std::atol(s.c_str() + i + 1);
      done = true;
    } else {
      throw std::invalid_argument("rat_of_decimal: malformed decimal " + s);
    }
  }
  Rat out(mant);
  long shift = exp10 - frac;
  Int pow10 = 1;
  for (long k = 0; k < (shift < 0 ? -shift : shift); ++k) pow10 *= 10;
  if (shift >= 0)
    out *= Rat(pow10);
  else
    out /= Rat(pow10);
  return neg ? -out : out;
}

template <class F>
struct PhiResult {
  F value;
  F tail;
  long terms;
};

// Partial sum with an explicit geometric-domination majorant: every term is
// positive for t >= 0, and for n > N
//   term_n <= 3 pi^2 n^4 e^{9t} r^{n^2},  r = e^{-pi e^{4t}},
// so the tail is at most 3 pi^2 e^{9t} M^2 r^M (1+r)/(1-r)^3 with M = (N+1)^2.
// The bound is doubled as a cushion for the floating-point evaluation itself.
template <class F>
PhiResult<F> phi_impl(const F& t, long terms_min, long goal_bits) {
  if (t < 0) throw std::domain_error("phi: need t >= 0");
  const F& pi = pi_const<F>();
  F e4 = exp(4 * t), e5 = exp(5 * t), e9 = exp(9 * t);
  F r = exp(-pi * e4);
  F sum = 0;
  long n = 0;
  long cap = std::max<long>(terms_min, 64);
  F tail = 0;
  for (;;) {
    ++n;
    F n2 = F(n) * F(n);
    sum += (2 * pi * pi * n2 * n2 * e9 - 3 * pi * n2 * e5) * exp(-n2 * pi * e4);
    if (n < terms_min) continue;
    F m = F(n + 1) * F(n + 1);
    tail = 6 * pi * pi * e9 * m * m * exp(-pi * m * e4) * (1 + r) / pow(1 - r, 3);
    if (tail <= ldexp(sum, -static_cast<int>(goal_bits)) || n >= cap) break;
  }
  return {sum, tail, n};
}

template <class F>
struct GaussRule {
  std::vector<F> nodes;    // on (-1, 1)
  std::vector<F> weights;
};

template <class F>
GaussRule<F> make_gauss_rule(int order) {
  GaussRule<F> rule;
  rule.nodes.resize(static_cast<std::size_t>(order));
  rule.weights.resize(static_cast<std::size_t>(order));
  const F& pi = pi_const<F>();
  for (int i = 0; i < order; ++i) {
    F x = cos(pi * (F(i) + F(3) / 4) / (F(order) + F(1) / 2));
    F dp = 0;
    for (int it = 0; it < 200; ++it) {
      F p0 = 1, p1 = x;
      for (int k = 2; k <= order; ++k) {
        F p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1);
      F dx = p1 / dp;
      x -= dx;
      if (abs(dx) <= ldexp(F(1), -static_cast<int>(std::numeric_limits<F>::digits) + 4)) break;
    }
    rule.nodes[static_cast<std::size_t>(i)] = x;
    rule.weights[static_cast<std::size_t>(i)] = 2 / ((1 - x * x) * dp * dp);
  }
  return rule;
}

template <class F>
const GaussRule<F>& gauss_rule_20() {
  static const GaussRule<F> rule = make_gauss_rule<F>(20);
  return rule;
}

// int_T^inf t^{2n} Phi(t) dt <= 6 pi^2 exp((2n+9)T - pi e^{4T}) / (4 pi e^{4T} - (2n+9))
// for T >= 1, using t^{2n} e^{9t} <= e^{(2n+9)t} and the convexity lower
// bound e^{4t} >= e^{4T}(1 + 4(t-T)).
template <class F>
F moment_tail_bound(const F& T, long n) {
  const F& pi = pi_const<F>();
  F e4T = exp(4 * T);
  F denom = 4 * pi * e4T - (2 * n + 9);
  if (denom <= 0) return F(1e30);
  return 6 * pi * pi * exp((2 * n + 9) * T - pi * e4T) / denom;
}

template <class F>
struct MomentResult {
  F value;
  F error;
  long terms;
  F t_cutoff;
  long panels;
};

// Panel sum with per-node series-tail accumulation.
template <class F>
F integrate_moment(long n, const F& T, long panels, long goal_bits, F& series_err, long& terms_max) {
  const GaussRule<F>& rule = gauss_rule_20<F>();
  F total = 0;
  series_err = 0;
  for (long p = 0; p < panels; ++p) {
    F a = T * p / panels, b = T * (p + 1) / panels;
    F mid = (a + b) / 2, half = (b - a) / 2;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      F t = mid + half * rule.nodes[i];
      PhiResult<F> ph = phi_impl<F>(t, 3, goal_bits);
      terms_max = std::max(terms_max, ph.terms);
      F tn = n == 0 ? F(1) : pow(t, static_cast<int>(2 * n));
      total += rule.weights[i] * half * tn * ph.value;
      series_err += rule.weights[i] * half * tn * ph.tail;
    }
  }
  return total;
}

template <class F>
MomentResult<F> xi_moment_impl(long n, long precision_bits) {
  if (n < 0) throw std::domain_error("xi_moment: need n >= 0");
  long goal = precision_bits - 4;
  F junk = 0;
  long terms_max = 0;
  // rough magnitude on a generous window, used only to set the target scale
  F rough = integrate_moment<F>(n, F(3), 8, goal, junk, terms_max);
  if (rough <= 0) throw internal_error("xi_moment: nonpositive rough estimate");
  F tol = rough * ldexp(F(1), -static_cast<int>(precision_bits - 16));

  F T = 1;
  while (moment_tail_bound<F>(T, n) > tol / 4 && T < 8) T += F(1) / 4;
  T = T * 2;
  if (T > 10) T = 10;
  F tail_int = moment_tail_bound<F>(T, n);

  long panels = 8;
  F prev = integrate_moment<F>(n, T, panels, goal, junk, terms_max);
  F cur = 0, series_err = 0, gap = 0;
  for (;;) {
    cur = integrate_moment<F>(n, T, 2 * panels, goal, series_err, terms_max);
    gap = abs(cur - prev);
    if (gap <= tol || panels >= 64) break;
    prev = cur;
    panels *= 2;
  }
  if (gap > tol)
    throw std::runtime_error("xi_moment: panel resolutions disagree at the requested precision, "
                             "raise precision_bits");
  MomentResult<F> out;
  out.value = cur;
  out.error = gap + tail_int + series_err + abs(cur) * ldexp(F(1), -static_cast<int>(precision_bits - 10));
  out.terms = terms_max;
  out.t_cutoff = T;
  out.panels = 2 * panels;
  return out;
}

inline long riemann_thread_count() {
  if (const char* s = std::getenv("QSEP_THREADS")) {
    long v = std::atol(s);
    if (v >= 1 && v <= 256) return v;
  }
  long hw = static_cast<long>(std::thread::hardware_concurrency());
  return std::min<long>(std::max<long>(hw, 1), 64);
}

template <class F>
XiCoeffs xi_moments_impl(long n_max, long precision_bits) {
  XiCoeffs out;
  out.precision_bits = precision_bits;
  std::vector<MomentResult<F>> res(static_cast<std::size_t>(n_max) + 1);
  long threads = std::min<long>(riemann_thread_count(), n_max + 1);
  std::vector<std::exception_ptr> errs(static_cast<std::size_t>(std::max<long>(threads, 1)));
  auto work = [&](long first, long step, std::exception_ptr& err) {
    try {
      for (long k = first; k <= n_max; k += step)
        res[static_cast<std::size_t>(k)] = xi_moment_impl<F>(k, precision_bits);
    } catch (...) {
      err = std::current_exception();
    }
  };
  if (threads <= 1) {
    work(0, 1, errs[0]);
  } else {
    std::vector<std::thread> pool;
    for (long t = 0; t < threads; ++t)
      pool.emplace_back(work, t, threads, std::ref(errs[static_cast<std::size_t>(t)]));
    for (auto& th : pool) th.join();
  }
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
  F t_cut = 0;
  for (long k = 0; k <= n_max; ++k) {
    const MomentResult<F>& m = res[static_cast<std::size_t>(k)];
    out.values.push_back(float_str(m.value, precision_bits));
    out.error_bounds.push_back(float_str(m.error, precision_bits));
    out.series_terms = std::max(out.series_terms, m.terms);
    t_cut = std::max(t_cut, m.t_cutoff);
  }
  out.t_cutoff = float_str(t_cut, precision_bits);
  return out;
}

template <class F>
RiemannReport report_impl(long n_max, const std::vector<Rat>& q_list, long precision_bits) {
  RiemannReport rep;
  rep.n_max = n_max;
  rep.precision_bits = precision_bits;
  rep.moments = xi_moments_impl<F>(n_max, precision_bits);

  // f_n = n! b_n / (2n)!; the rational factor is exact, so the enclosure
  // just scales (one extra ulp folded into the cushion below)
  std::vector<F> f(static_cast<std::size_t>(n_max) + 1), fe(static_cast<std::size_t>(n_max) + 1);
  F ulp = ldexp(F(1), -static_cast<int>(precision_bits - 6));
  Rat factor(1);
  for (long k = 0; k <= n_max; ++k) {
    if (k > 0) factor *= Rat(k) / (Rat(2 * k) * Rat(2 * k - 1));
    F fac = float_of_rat<F>(factor);
    F v = F(rep.moments.values[static_cast<std::size_t>(k)].c_str());
    F e = F(rep.moments.error_bounds[static_cast<std::size_t>(k)].c_str());
    f[static_cast<std::size_t>(k)] = v * fac;
    fe[static_cast<std::size_t>(k)] = (e + abs(v) * ulp) * fac;
    rep.scaled_values.push_back(float_str(f[static_cast<std::size_t>(k)], precision_bits));
    rep.scaled_errors.push_back(float_str(fe[static_cast<std::size_t>(k)], precision_bits));
  }

  rep.positivity = true;
  for (long k = 0; k <= n_max; ++k)
    if (f[static_cast<std::size_t>(k)] - fe[static_cast<std::size_t>(k)] <= 0) rep.positivity = false;

  // strict log-concavity with worst-case enclosure combinations
  bool any_fail = false, any_indet = false;
  for (long k = 1; k + 1 <= n_max; ++k) {
    auto lo = [&](long i) { return f[static_cast<std::size_t>(i)] - fe[static_cast<std::size_t>(i)]; };
    auto hi = [&](long i) { return f[static_cast<std::size_t>(i)] + fe[static_cast<std::size_t>(i)]; };
    TuranEntry e;
    e.index = k;
    F lhs_low = lo(k) * lo(k) * (1 - ulp);
    F rhs_high = hi(k - 1) * hi(k + 1) * (1 + ulp);
    F lhs_high = hi(k) * hi(k) * (1 + ulp);
    F rhs_low = lo(k - 1) * lo(k + 1) * (1 - ulp);
    e.lhs_low = float_str(lhs_low, precision_bits);
    e.rhs_high = float_str(rhs_high, precision_bits);
    if (lo(k) > 0 && lhs_low > rhs_high)
      e.status = CheckStatus::kPass;
    else if (lhs_high < rhs_low)
      e.status = CheckStatus::kFail;
    else
      e.status = CheckStatus::kInsufficient;
    any_fail = any_fail || e.status == CheckStatus::kFail;
    any_indet = any_indet || e.status == CheckStatus::kInsufficient;
    rep.turan.push_back(e);
  }
  rep.log_concavity = any_fail ? CheckStatus::kFail
                               : (any_indet ? CheckStatus::kInsufficient : CheckStatus::kPass);

  // exploratory: weighted truncation at each q, exact membership of the
  // midpoint polynomial, with a margin note comparing the smallest zero-ratio
  // separation against the enclosure widths
  for (const Rat& q : q_list) {
    QExploration ex;
    ex.q = q;
    std::vector<Rat> coeffs;
    Rat rel_width(0);
    for (long k = 0; k <= n_max; ++k) {
      Rat fk = rat_of_decimal(rep.scaled_values[static_cast<std::size_t>(k)]);
      Rat ek = rat_of_decimal(rep.scaled_errors[static_cast<std::size_t>(k)]);
      if (fk > 0) {
        Rat w = ek / fk;
        if (w > rel_width) rel_width = w;
      }
      coeffs.push_back(q_binomial(n_max, k, q) * fk);
    }
    RPoly p(coeffs);
    MembershipVerdict mv = class_membership(p, n_max, q, QClass::kN);
    ex.member_midpoint = mv.member;
    ex.membership_detail = mv.detail;
    Rat margin(-1);
    if (is_real_rooted(p)) {
      RootIsolation iso = isolate_real_roots(p);
      iso.refine_all(Rat(1, 1048576));
      std::vector<Rat> mags;
      for (auto& r : iso.roots)
        if (r.sign() < 0) mags.push_back(rat_abs(r.exact ? r.lo : r.midpoint()));
      std::sort(mags.begin(), mags.end());
      for (std::size_t i = 0; i + 1 < mags.size(); ++i) {
        if (mags[i + 1] == 0) continue;
        Rat ratio = mags[i] / mags[i + 1];
        Rat dist = rat_abs(ratio - q) / q;
        if (margin < 0 || dist < margin) margin = dist;
      }
    }
    if (margin < 0) {
      ex.margin_reliable = false;
      ex.margin_note = "no consecutive zero ratios to compare";
    } else {
      ex.margin_reliable = margin > rel_width * 1000;
      ex.margin_note = "smallest relative ratio margin about " +
                       std::to_string(rat_to_double(margin)) +
                       " vs relative enclosure width about " +
                       std::to_string(rat_to_double(rel_width));
    }
    rep.explorations.push_back(ex);
  }
  return rep;
}

template <class Fn>
auto dispatch_precision(long bits, Fn&& fn) {
  switch (bits) {
    case 64: return fn(BigFloat<64>());
    case 128: return fn(BigFloat<128>());
    case 160: return fn(BigFloat<160>());
    case 192: return fn(BigFloat<192>());
    case 256: return fn(BigFloat<256>());
    default:
      throw std::invalid_argument(
          "precision_bits must be one of 64, 128, 160, 192, 256");
  }
}

}  // namespace detail

inline PhiValue phi(const Rat& t, long terms, long precision_bits) {
  return detail::dispatch_precision(precision_bits, [&](auto probe) {
    using F = decltype(probe);
    detail::PhiResult<F> r =
        detail::phi_impl<F>(detail::float_of_rat<F>(t), std::max<long>(terms, 1), precision_bits - 4);
    PhiValue out;
    out.value = detail::float_str(r.value, precision_bits);
    out.tail_bound = detail::float_str(r.tail, precision_bits);
    out.terms_used = r.terms;
    return out;
  });
}

// b_n with its certified absolute error bound, as decimal strings
inline std::pair<std::string, std::string> xi_moment(long n, long precision_bits) {
  return detail::dispatch_precision(precision_bits, [&](auto probe) {
    using F = decltype(probe);
    detail::MomentResult<F> m = detail::xi_moment_impl<F>(n, precision_bits);
    return std::make_pair(detail::float_str(m.value, precision_bits),
                          detail::float_str(m.error, precision_bits));
  });
}

inline XiCoeffs xi_moments(long n_max, long precision_bits) {
  if (n_max < 0) throw std::domain_error("xi_moments: need n_max >= 0");
  return detail::dispatch_precision(precision_bits, [&](auto probe) {
    using F = decltype(probe);
    return detail::xi_moments_impl<F>(n_max, precision_bits);
  });
}

inline RiemannReport necessary_condition_report(long n_max, const std::vector<Rat>& q_list,
                                                long precision_bits) {
  if (n_max < 2) throw std::domain_error("necessary_condition_report: need n_max >= 2");
  for (const Rat& q : q_list)
    if (q <= 0 || q >= 1)
      throw std::domain_error("necessary_condition_report: exploratory q must lie in (0, 1)");
  return detail::dispatch_precision(precision_bits, [&](auto probe) {
    using F = decltype(probe);
    return detail::report_impl<F>(n_max, q_list, precision_bits);
  });
}

}  // namespace qsep
