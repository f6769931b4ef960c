// Acceptance gate: twelve end-to-end criteria, each printed as one line with
// its wall time and enforced budget. Any failure flips the exit code to 1.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "qsep/logconcave.hpp"
#include "qsep/riemann.hpp"
#include "qsep/theoremlab.hpp"

#ifndef QSEP_CLI_PATH
#error "QSEP_CLI_PATH must point at the built command-line binary"
#endif

using namespace qsep;

namespace {

struct Ctx {
  std::vector<std::string> problems;
  void fail(std::string why) { problems.push_back(std::move(why)); }
  void expect(bool ok, const std::string& why) {
    if (!ok) fail(why);
  }
};

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1fs", s);
  return buf;
}

void check_report(Ctx& c, const TheoremReport& r) {
  c.expect(r.pass, r.theorem_id + ": " + std::to_string(r.failures.size()) + " failure(s)" +
                       (r.failures.empty() ? "" : "; first: " + r.failures.front()));
}

long stat_of(const TheoremReport& r, const std::string& key) {
  for (const auto& [k, v] : r.stats)
    if (k == key) return v;
  return 0;
}

// ---- criterion 1: closed form vs direct product expansion ----------------

RPoly expand_product(long n, const Rat& q) {
  RPoly f = RPoly::one();
  Rat p(1);
  for (long j = 1; j <= n; ++j) {
    f = f * RPoly(std::vector<Rat>{Rat(1), p});
    p *= q;
  }
  return f;
}

void crit_binomial(Ctx& c) {
  const Rat qs[] = {Rat(1, 5), Rat(1, 3), Rat(1, 2), Rat(9, 10), Rat(1)};
  for (long n = 0; n <= 12; ++n)
    for (const Rat& q : qs) {
      RPoly prod = expand_product(n, q);
      for (long k = 0; k <= n; ++k)
        if (q_binomial(n, k, q) != prod.coeff(static_cast<std::size_t>(k)))
          return c.fail("closed form disagrees with expansion at n=" + std::to_string(n) +
                        " k=" + std::to_string(k) + " q=" + rat_str(q));
    }
}

// ---- criteria 2-5, 8, 10: randomized statement checkers ------------------

void crit_rolle(Ctx& c) { check_report(c, verify_q_rolle(TrialConfig{})); }

double g_laguerre_star_s = 0, g_laguerre_s = 0;

void crit_laguerre(Ctx& c) {
  auto t0 = std::chrono::steady_clock::now();
  TheoremReport star = verify_q_laguerre_star(TrialConfig{});
  auto t1 = std::chrono::steady_clock::now();
  TheoremReport rel = verify_q_laguerre(TrialConfig{});
  auto t2 = std::chrono::steady_clock::now();
  g_laguerre_star_s = std::chrono::duration<double>(t1 - t0).count();
  g_laguerre_s = std::chrono::duration<double>(t2 - t1).count();
  check_report(c, star);
  check_report(c, rel);
  c.expect(g_laguerre_star_s < 120.0, "image-membership half exceeded its 120s budget");
  c.expect(g_laguerre_s < 120.0, "operator-relation half exceeded its 120s budget");
}

void crit_newton(Ctx& c) { check_report(c, verify_q_newton(TrialConfig{})); }

void crit_convolution_multiplier(Ctx& c) {
  TrialConfig cfg;
  cfg.trials = 500;
  cfg.n_max = 10;
  check_report(c, verify_convolution_invariance(cfg));
  TheoremReport m = verify_multiplier(cfg);
  check_report(c, m);
  for (const char* fam : {"mixed-sign", "nonpositive"}) {
    long searches = stat_of(m, std::string(fam) + " searches");
    long falsified = stat_of(m, std::string(fam) + " falsified");
    c.expect(searches > 0, std::string(fam) + ": no falsification searches ran");
    c.expect(falsified * 100 >= searches * 95,
             std::string(fam) + ": only " + std::to_string(falsified) + "/" +
                 std::to_string(searches) + " candidates falsified within 200 attempts");
  }
}

void crit_partial_fractions(Ctx& c) {
  TrialConfig cfg;
  cfg.trials = 500;
  check_report(c, verify_partial_fraction_roundtrip(cfg));
}

void crit_transport(Ctx& c) {
  TrialConfig cfg;
  cfg.trials = 200;
  check_report(c, verify_t_transport(cfg));
}

// ---- criterion 6: exact operator and product identities -------------------

void crit_identities(Ctx& c) {
  Rng rng(608);
  const std::vector<Rat> qs{Rat(1, 5), Rat(1, 4), Rat(1, 3), Rat(1, 2),
                            Rat(2, 3), Rat(3, 4), Rat(9, 10)};
  for (int i = 0; i < 500; ++i) {
    long n = rng.range(1, 8);
    Rat q = rng.pick(qs);
    auto rand_poly = [&](long deg) {
      std::vector<Rat> cs;
      for (long k = 0; k <= deg; ++k) cs.push_back(Rat(rng.range(-9, 9), rng.range(1, 4)));
      return RPoly(cs);
    };
    RPoly H = rand_poly(n + 1), F = rand_poly(n), G = rand_poly(n);

    if (hadamard_q(q_diff_star(H, n + 1, q), F, n, q) != hadamard_q(H, F, n + 1, q))
      return c.fail("polar-difference product identity failed at trial " + std::to_string(i));
    if (hadamard_q(q_diff(H, n + 1, q), F, n, q).shift_up(1) !=
        hadamard_q(H, F.shift_up(1), n + 1, q))
      return c.fail("forward-difference product identity failed at trial " + std::to_string(i));

    QBasisVector a = to_q_basis(F, n, q), b = to_q_basis(G, n, q);
    QBasisVector p = to_q_basis(hadamard_q(F, G, n, q), n, q);
    for (long k = 0; k <= n; ++k) {
      auto ku = static_cast<std::size_t>(k);
      if (p.a[ku] != a.a[ku] * b.a[ku])
        return c.fail("basis-product identity failed at trial " + std::to_string(i));
    }

    // both difference operators recompute themselves along two internal
    // routes and throw on disagreement; the reversal identity ties them
    RPoly lhs = reverse_n(q_diff(H, n + 1, q), n);
    RPoly rhs = q_diff_star(reverse_n(H, n + 1), n + 1, q).scale_arg(q) * (-rat_pow(q, -n));
    if (lhs != rhs) return c.fail("reversal identity failed at trial " + std::to_string(i));
  }
}

// ---- criterion 7: membership verdicts agree along both routes -------------

void crit_membership_routes(Ctx& c) {
  Rng rng(707);
  const std::vector<Rat> qs{Rat(1, 4), Rat(1, 3), Rat(1, 2), Rat(3, 4), Rat(9, 10)};
  const QClass classes[] = {QClass::kClosureR, QClass::kR, QClass::kClosureN, QClass::kN};

  long member_mismatches = 0, route_splits = 0;
  for (int i = 0; i < 1000; ++i) {
    long n = rng.range(2, 10);
    Rat q = rng.pick(qs);
    QClass cls = classes[i % 4];
    RPoly f = gen_class_member(n, q, cls, rng);
    MembershipVerdict v = class_membership(f, n, q, cls);
    if (!v.member) ++member_mismatches;
    if (!v.route_agreement) ++route_splits;
  }
  c.expect(member_mismatches == 0,
           std::to_string(member_mismatches) + " generated members rejected");

  long wrong_accepts = 0;
  for (int i = 0; i < 1000; ++i) {
    long n = rng.range(2, 10);
    Rat q = rng.pick(qs);
    RPoly f;
    QClass cls = QClass::kClosureR;
    switch (i % 4) {
      case 0: {  // zero-ratio above q: separation fails in every class
        Rat r = q + (1 - q) * Rat(rng.range(8, 56), 64);
        f = RPoly(std::vector<Rat>{Rat(1), Rat(1)}) * RPoly(std::vector<Rat>{Rat(1), r});
        cls = QClass::kClosureR;
        break;
      }
      case 1: {  // a positive zero bars the nonpositive classes
        f = detail::gen_mixed_sign_member(n, q, rng);
        cls = QClass::kClosureN;
        break;
      }
      case 2: {  // a conjugate pair off the real line bars everything
        f = RPoly(std::vector<Rat>{Rat(1), Rat(0), Rat(1)}) *
            gen_class_member(n - 2, q, QClass::kR, rng);
        cls = QClass::kR;
        break;
      }
      default: {  // boundary member: in the closure but not the strict class
        f = r_poly(n, q) * Rat(rng.range(1, 5));
        cls = QClass::kN;
        break;
      }
    }
    MembershipVerdict v = class_membership(f, n, q, cls);
    if (v.member) ++wrong_accepts;
    if (!v.route_agreement) ++route_splits;
  }
  c.expect(wrong_accepts == 0, std::to_string(wrong_accepts) + " constructed non-members accepted");
  c.expect(route_splits == 0, std::to_string(route_splits) + " route disagreements");
}

// ---- criterion 9: log-concavity certificates round-trip -------------------

Sequence random_strict_lc(Rng& rng, long len) {
  std::vector<Rat> a{Rat(rng.range(1, 9))};
  Rat ratio(rng.range(32, 64), 4);
  for (long k = 1; k < len; ++k) {
    a.push_back(a.back() * ratio);
    ratio *= Rat(rng.range(16, 30), 32);  // quotient of ratios >= 16/15
  }
  if (rng.chance(1, 2))
    for (Rat& x : a) x = -x;
  return Sequence{a};
}

void crit_lc_roundtrip(Ctx& c) {
  Rng rng(909);
  long not_found = 0, bad_cert = 0;
  for (int i = 0; i < 500; ++i) {
    Sequence s = random_strict_lc(rng, rng.range(2, 11));
    // shallow bisection keeps the bulk run inside budget; every certificate
    // is still verified exactly at its final parameter
    CertificateSearch cs = find_q_certificate(s, Rat(1, 1048576), 3);
    if (cs.outcome != CertificateOutcome::kFound) {
      ++not_found;
      continue;
    }
    const QCertificate& cert = *cs.cert;
    RPoly expect;
    for (long k = 0; k < static_cast<long>(s.a.size()); ++k)
      expect = expect + RPoly::monomial(static_cast<std::size_t>(k),
                                        s.a[static_cast<std::size_t>(k)] *
                                            q_binomial(cert.n, k, cert.q));
    if (cert.poly != expect || !class_membership(cert.poly, cert.n, cert.q, cert.cls).member)
      ++bad_cert;
  }
  c.expect(not_found == 0, std::to_string(not_found) + " strictly log-concave inputs uncertified");
  c.expect(bad_cert == 0, std::to_string(bad_cert) + " certificates failed re-verification");

  long wrong_accept = 0;
  for (int i = 0; i < 500; ++i) {
    long len = rng.range(3, 11);
    std::vector<Rat> a{Rat(rng.range(1, 9))};
    std::vector<Rat> ratios;
    for (long k = 1; k < len; ++k) ratios.push_back(Rat(rng.range(32, 64), 4 + 2 * k));
    std::sort(ratios.rbegin(), ratios.rend());
    long j = rng.range(0, len - 3);  // plant: ratio j+1 >= ratio j
    ratios[static_cast<std::size_t>(j) + 1] =
        rng.chance(1, 2) ? ratios[static_cast<std::size_t>(j)]
                         : ratios[static_cast<std::size_t>(j)] * Rat(9, 8);
    for (const Rat& r : ratios) a.push_back(a.back() * r);
    Sequence s{a};
    if (is_strictly_log_concave(s).holds) {
      ++wrong_accept;  // the plant must have broken strictness
      continue;
    }
    if (find_q_certificate(s).outcome != CertificateOutcome::kNotLogConcave) ++wrong_accept;
  }
  c.expect(wrong_accept == 0,
           std::to_string(wrong_accept) + " non-log-concave inputs were not rejected");
}

// ---- criterion 11: moment sequence necessary condition --------------------

void crit_riemann(Ctx& c) {
  RiemannReport r = necessary_condition_report(10, {Rat(1, 4), Rat(1, 2)}, 128);
  c.expect(r.positivity, "a scaled moment enclosure failed strict positivity");
  c.expect(r.log_concavity == CheckStatus::kPass,
           "log-concavity roll-up is " + check_status_name(r.log_concavity));
  for (const auto& e : r.turan)
    c.expect(e.status == CheckStatus::kPass,
             "comparison at index " + std::to_string(e.index) + " is not a certified pass");

  using F192 = BigFloat<192>;
  for (long n = 0; n <= 10; ++n) {
    auto [a, ea] = xi_moment(n, 128);
    auto [b, eb] = xi_moment(n, 160);
    F192 va(a.c_str()), vb(b.c_str());
    F192 rel = abs(va - vb) / abs(vb);
    if (!(rel <= F192("1e-12")))
      c.fail("cross-precision moment " + std::to_string(n) + " relative gap " +
             rel.str(6, std::ios_base::scientific));
  }
}

// ---- criterion 12: byte-identical reruns of the command line --------------

struct CliRun {
  int exit_code = -1;
  std::string stdout_text;
};

CliRun run_cli(const std::string& args, const std::string& capture_path, const char* env = "") {
  std::string cmd = std::string(env) + (*env ? " " : "") + QSEP_CLI_PATH " --json " + args +
                    " > " + capture_path + " 2>/dev/null";
  int rc = std::system(cmd.c_str());
  CliRun out;
  out.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  std::ifstream in(capture_path);
  std::stringstream buf;
  buf << in.rdbuf();
  out.stdout_text = buf.str();
  return out;
}

void crit_cli_determinism(Ctx& c) {
  char tmpl[] = "/tmp/qsep-accept-XXXXXX";
  if (!mkdtemp(tmpl)) return c.fail("could not create a scratch directory");
  std::string dir = tmpl;

  std::ofstream(dir + "/lc.json") << "[1, 2, 1]\n";
  std::ofstream(dir + "/bad.json") << "[\"1/2\", \"1/3\", \"1/2\"]\n";
  std::ofstream(dir + "/row.csv") << "1, 3, 2\n";

  struct Cmd {
    std::string args;
    int expect_exit;
    std::string expect_substr;
    const char* env2 = "";  // second run may vary the environment
  };
  const Cmd cmds[] = {
      {"qbinom 3 1 1/2", 0, "7/4"},
      {"qbinom 4 2 1", 0, "\"6\""},
      {"qbinom 3 5 1/2", 2, ""},
      {"check-lc " + dir + "/lc.json", 0, "PASS"},
      {"check-lc " + dir + "/bad.json", 1, "FAIL"},
      {"check-lc " + dir + "/row.csv", 0, "PASS"},
      {"find-q " + dir + "/lc.json", 0, "PASS"},
      {"verify q-rolle --seed 7 --trials 50", 0, "PASS", "QSEP_THREADS=3"},
      {"verify t-transport --trials 25 --nmax 6", 0, "PASS"},
      {"riemann --N 6 --bits 64 --q 1/2", 0, ""},
  };
  int idx = 0;
  for (const Cmd& cmd : cmds) {
    std::string a = dir + "/out" + std::to_string(idx) + "a.json";
    std::string b = dir + "/out" + std::to_string(idx) + "b.json";
    ++idx;
    CliRun r1 = run_cli(cmd.args, a);
    CliRun r2 = run_cli(cmd.args, b, cmd.env2);
    c.expect(r1.exit_code == cmd.expect_exit,
             cmd.args + ": exit " + std::to_string(r1.exit_code) + ", expected " +
                 std::to_string(cmd.expect_exit));
    c.expect(r1.exit_code == r2.exit_code, cmd.args + ": exit codes differ between reruns");
    c.expect(r1.stdout_text == r2.stdout_text, cmd.args + ": rerun output is not byte-identical");
    if (!cmd.expect_substr.empty())
      c.expect(r1.stdout_text.find(cmd.expect_substr) != std::string::npos,
               cmd.args + ": output lacks \"" + cmd.expect_substr + "\"");
  }
  if (std::system(("rm -rf " + dir).c_str()) != 0)
    c.expect(false, "failed to remove scratch directory " + dir);
}

}  // namespace

int main() {
  struct Criterion {
    const char* label;
    double budget_s;
    std::function<void(Ctx&)> run;
  };
  const std::vector<Criterion> criteria = {
      {"weighted binomial closed form equals product expansion", 1, crit_binomial},
      {"difference operator keeps classes and relations (1000 trials)", 120, crit_rolle},
      {"polar difference preservation and operator relation (1000 trials each)", 240,
       crit_laguerre},
      {"strict members have strictly log-concave basis vectors (1000 trials)", 60, crit_newton},
      {"convolution invariance and multiplier characterization (500 trials each)", 300,
       crit_convolution_multiplier},
      {"product and difference operator identities (500 instances)", 30, crit_identities},
      {"membership routes agree on 1000 members and 1000 non-members", 120,
       crit_membership_routes},
      {"partial fraction reconstruction and sign law (500 instances)", 30, crit_partial_fractions},
      {"log-concavity certificates round-trip (500 found, 500 rejected)", 300, crit_lc_roundtrip},
      {"unit circle transport round-trips on 200 pairs", 30, crit_transport},
      {"moment sequence positivity and log-concavity certified at 128 bits", 120, crit_riemann},
      {"command line reruns are byte-identical", 300, crit_cli_determinism},
  };

  bool all_ok = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const Criterion& cr = criteria[i];
    Ctx ctx;
    auto t0 = std::chrono::steady_clock::now();
    try {
      cr.run(ctx);
    } catch (const std::exception& e) {
      ctx.fail(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > cr.budget_s)
      ctx.fail("wall time " + fmt_seconds(secs) + " exceeds the " +
               fmt_seconds(cr.budget_s) + " budget");
    bool ok = ctx.problems.empty();
    all_ok = all_ok && ok;
    std::printf("[%2zu/12] %s  %s (%s)\n", i + 1, ok ? "PASS" : "FAIL", cr.label,
                fmt_seconds(secs).c_str());
    for (const auto& p : ctx.problems) std::printf("        - %s\n", p.c_str());
    std::fflush(stdout);
  }
  std::printf("%s\n", all_ok ? "acceptance: all 12 criteria hold" : "acceptance: FAILURES present");
  return all_ok ? 0 : 1;
}
