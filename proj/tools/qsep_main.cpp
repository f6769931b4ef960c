// Command-line surface: q-binomial evaluation, log-concavity checks,
// certificate search, randomized theorem verification, and the
// moment-sequence report. Output is a human summary followed by a canonical
// JSON report (or the JSON alone under --json); identical invocations
// produce identical bytes.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qsep/report.hpp"

namespace {

using namespace qsep;

std::vector<Rat> parse_rat_list(const std::string& csv) {
  std::vector<Rat> out;
  std::string item;
  std::istringstream in(csv);
  while (std::getline(in, item, ',')) {
    while (!item.empty() && (item.front() == ' ' || item.front() == '\t')) item.erase(0, 1);
    while (!item.empty() && (item.back() == ' ' || item.back() == '\t' || item.back() == '\r' ||
                             item.back() == '\n'))
      item.pop_back();
    if (!item.empty()) out.push_back(parse_rat(item));
  }
  return out;
}

// JSON array of integers / "p/q" strings, or a single CSV row
std::vector<Rat> read_sequence_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw std::invalid_argument("empty sequence file " + path);
  if (text[first] == '[') {
    Json j = Json::parse(text);  // throws on malformed input
    if (!j.is_array()) throw std::invalid_argument("expected a JSON array in " + path);
    std::vector<Rat> out;
    for (const auto& e : j) {
      if (e.is_number_integer())
        out.push_back(Rat(static_cast<long long>(e.get<std::int64_t>())));
      else if (e.is_string())
        out.push_back(parse_rat(e.get<std::string>()));
      else
        throw std::invalid_argument("sequence entries must be integers or \"p/q\" strings");
    }
    return out;
  }
  return parse_rat_list(text);
}

void emit(const CliReport& rep, const std::string& human, bool json_only) {
  if (!json_only && !human.empty()) std::cout << human;
  std::cout << canonical_dump(cli_report_json(rep));
}

struct VerifyEntry {
  const char* id;
  TheoremReport (*fn)(const TrialConfig&);
};

const VerifyEntry kVerifiers[] = {
    {"q-rolle", verify_q_rolle},
    {"q-laguerre-star", verify_q_laguerre_star},
    {"q-laguerre", verify_q_laguerre},
    {"q-newton", verify_q_newton},
    {"convolution-invariance", verify_convolution_invariance},
    {"multiplier", verify_multiplier},
    {"partial-fraction-roundtrip", verify_partial_fraction_roundtrip},
    {"t-transport", verify_t_transport},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"q-separated polynomial classes: exact calculators, log-concavity certificates, "
               "randomized theorem checks, and the moment-sequence report"};
  app.require_subcommand(1);
  bool json_only = false;
  app.add_flag("--json", json_only, "print only the canonical JSON report");

  auto* qb = app.add_subcommand("qbinom", "weighted binomial coefficient, exact rational");
  long qb_n = 0, qb_k = 0;
  std::string qb_q;
  qb->add_option("n", qb_n)->required();
  qb->add_option("k", qb_k)->required();
  qb->add_option("q", qb_q)->required();

  auto* lc = app.add_subcommand("check-lc", "strict log-concavity of a sequence file");
  std::string lc_file;
  bool lc_plus = false;
  lc->add_option("file", lc_file)->required();
  lc->add_flag("--plus", lc_plus, "also require a uniform sign");

  auto* fq = app.add_subcommand("find-q", "largest verified separation parameter for a sequence");
  std::string fq_file, fq_floor = "1/1048576";
  long fq_depth = 30;
  fq->add_option("file", fq_file)->required();
  fq->add_option("--floor", fq_floor, "search floor as p/q (default 1/1048576)");
  fq->add_option("--depth", fq_depth, "bisection depth (default 30)");

  auto* vf = app.add_subcommand("verify", "randomized seeded check of one proved statement");
  std::string vf_id;
  std::uint64_t vf_seed = TrialConfig().seed;
  long vf_trials = 1000, vf_nmin = 2, vf_nmax = 12;
  std::string vf_qset = "1/4,1/3,1/2,3/4,1";
  vf->add_option("theorem_id", vf_id, "one of the registered ids, or 'all'")->required();
  vf->add_option("--seed", vf_seed);
  vf->add_option("--trials", vf_trials);
  vf->add_option("--nmin", vf_nmin);
  vf->add_option("--nmax", vf_nmax);
  vf->add_option("--qset", vf_qset, "comma-separated rationals in (0,1]");

  auto* rm = app.add_subcommand("riemann", "moment sequence necessary-condition report");
  long rm_n = 10, rm_bits = 128;
  std::string rm_q = "1/4,1/2";
  rm->add_option("--N", rm_n, "truncation index (default 10)");
  rm->add_option("--q", rm_q, "comma-separated exploratory parameters in (0,1)");
  rm->add_option("--bits", rm_bits, "working precision: 64, 128, 160, 192 or 256");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*qb) {
      Rat v = q_binomial(qb_n, qb_k, parse_rat(qb_q));
      CliReport rep;
      rep.command = "qbinom";
      rep.inputs = std::to_string(qb_n) + " " + std::to_string(qb_k) + " " + qb_q;
      rep.outcome = "PASS";
      rep.payload = Json{{"value", rat_str(v)}};
      emit(rep, rat_str(v) + "\n", json_only);
      return 0;
    }

    if (*lc) {
      Sequence s{read_sequence_file(lc_file)};
      LogConcavityVerdict v = lc_plus ? is_log_concave_plus(s) : is_strictly_log_concave(s);
      CliReport rep;
      rep.command = "check-lc";
      std::string seq_str;
      for (const auto& a : s.a) seq_str += rat_str(a) + ",";
      rep.inputs = seq_str + (lc_plus ? " plus" : "");
      rep.outcome = v.holds ? "PASS" : "FAIL";
      rep.payload = lc_verdict_json(v);
      rep.payload["plus"] = lc_plus;
      std::string human = v.holds ? "PASS\n"
                                  : "FAIL at index " + std::to_string(*v.failing_index) + "\n";
      emit(rep, human, json_only);
      return v.holds ? 0 : 1;
    }

    if (*fq) {
      Sequence s{read_sequence_file(fq_file)};
      CertificateSearch res = find_q_certificate(s, parse_rat(fq_floor), fq_depth);
      CliReport rep;
      rep.command = "find-q";
      std::string seq_str;
      for (const auto& a : s.a) seq_str += rat_str(a) + ",";
      rep.inputs = seq_str + " floor=" + fq_floor + " depth=" + std::to_string(fq_depth);
      rep.payload = certificate_search_json(res);
      std::string human;
      bool ok = res.outcome == CertificateOutcome::kFound;
      if (ok) {
        rep.outcome = "PASS";
        human = "certified q = " + rat_str(res.cert->q) + " (" + q_class_name(res.cert->cls) +
                " at ambient degree " + std::to_string(res.cert->n) + ")\n";
      } else {
        rep.outcome = "FAIL";
        human = res.detail + "\n";
      }
      emit(rep, human, json_only);
      return ok ? 0 : 1;
    }

    if (*vf) {
      TrialConfig cfg;
      cfg.seed = vf_seed;
      cfg.trials = vf_trials;
      cfg.n_min = vf_nmin;
      cfg.n_max = vf_nmax;
      cfg.q_set = parse_rat_list(vf_qset);
      std::vector<const VerifyEntry*> picked;
      for (const auto& e : kVerifiers)
        if (vf_id == "all" || vf_id == e.id) picked.push_back(&e);
      if (picked.empty()) {
        std::cerr << "unknown theorem_id '" << vf_id << "'; known ids:";
        for (const auto& e : kVerifiers) std::cerr << " " << e.id;
        std::cerr << " all" << std::endl;
        return 2;
      }
      Json payload = Json::array();
      std::string human;
      bool all_pass = true;
      for (const auto* e : picked) {
        TheoremReport r = e->fn(cfg);
        all_pass = all_pass && r.pass;
        payload.push_back(theorem_report_json(r));
        human += std::string(r.pass ? "PASS" : "FAIL") + " " + r.theorem_id + " (" +
                 std::to_string(r.trials_run) + " trials, " + std::to_string(r.failures.size()) +
                 " failures)\n";
      }
      CliReport rep;
      rep.command = "verify";
      rep.inputs = vf_id + " trials=" + std::to_string(vf_trials) +
                   " nmin=" + std::to_string(vf_nmin) + " nmax=" + std::to_string(vf_nmax) +
                   " qset=" + vf_qset + " seed=" + std::to_string(vf_seed);
      rep.outcome = all_pass ? "PASS" : "FAIL";
      rep.payload = picked.size() == 1 ? payload[0] : Json{{"reports", payload}};
      rep.seed = vf_seed;
      emit(rep, human, json_only);
      return all_pass ? 0 : 1;
    }

    if (*rm) {
      RiemannReport r = necessary_condition_report(rm_n, parse_rat_list(rm_q), rm_bits);
      CliReport rep;
      rep.command = "riemann";
      rep.inputs = "N=" + std::to_string(rm_n) + " q=" + rm_q +
                   " bits=" + std::to_string(rm_bits);
      rep.payload = riemann_report_json(r);
      std::string human = "log-concavity " + check_status_name(r.log_concavity) +
                          ", positivity " + (r.positivity ? "PASS" : "FAIL") + "\n";
      for (const auto& e : r.explorations)
        human += "exploratory q=" + rat_str(e.q) + ": midpoint polynomial " +
                 (e.member_midpoint ? "is" : "is not") + " a strict nonpositive-class member (" +
                 (e.margin_reliable ? "margins dominate enclosure widths" : e.margin_note) + ")\n";
      bool fail = r.log_concavity == CheckStatus::kFail ||
                  (r.log_concavity == CheckStatus::kPass && !r.positivity);
      rep.outcome = fail ? "FAIL"
                         : (r.log_concavity == CheckStatus::kPass ? "PASS" : "INDETERMINATE");
      emit(rep, human, json_only);
      return fail ? 1 : 0;
    }
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 2;
  } catch (const Json::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  }
  return 2;
}
