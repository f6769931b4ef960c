#pragma once

// Canonical JSON views of the library's report types. nlohmann::json keeps
// object keys sorted, every rational is rendered through rat_str, and every
// high-precision decimal is carried as an already-formatted string, so a
// serialized report is byte-stable across runs and platforms.

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "qsep/logconcave.hpp"
#include "qsep/qcalc.hpp"
#include "qsep/rational.hpp"
#include "qsep/riemann.hpp"
#include "qsep/theoremlab.hpp"

namespace qsep {

using Json = nlohmann::json;

inline std::string fnv_digest(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = hex[h & 0xf];
    h >>= 4;
  }
  return out;
}

inline Json poly_json(const RPoly& f) {
  Json arr = Json::array();
  for (const auto& c : f.coeffs()) arr.push_back(rat_str(c));
  return arr;
}

inline Json roots_json(const RootIsolation& iso) {
  Json arr = Json::array();
  for (const auto& r : iso.roots) {
    Json e;
    e["multiplicity"] = r.multiplicity;
    if (r.exact) {
      e["value"] = rat_str(r.lo);
    } else {
      e["lo"] = rat_str(r.lo);
      e["hi"] = rat_str(r.hi);
    }
    arr.push_back(e);
  }
  if (iso.origin_order > 0) {
    Json e;
    e["multiplicity"] = iso.origin_order;
    e["value"] = "0";
    arr.push_back(e);
  }
  return arr;
}

inline Json theorem_report_json(const TheoremReport& r) {
  Json j;
  j["theorem_id"] = r.theorem_id;
  j["trials_run"] = r.trials_run;
  j["pass"] = r.pass;
  j["failures"] = r.failures;
  j["notes"] = r.notes;
  Json stats = Json::object();
  for (const auto& [k, v] : r.stats) stats[k] = v;
  j["stats"] = stats;
  return j;
}

inline Json certificate_search_json(const CertificateSearch& s) {
  Json j;
  switch (s.outcome) {
    case CertificateOutcome::kFound: j["outcome"] = "found"; break;
    case CertificateOutcome::kNotLogConcave: j["outcome"] = "not-log-concave"; break;
    case CertificateOutcome::kFloorReached: j["outcome"] = "floor-reached"; break;
  }
  j["detail"] = s.detail;
  if (s.cert) {
    Json c;
    c["q"] = rat_str(s.cert->q);
    c["ambient_degree"] = s.cert->n;
    c["class"] = q_class_name(s.cert->cls);
    c["polynomial"] = poly_json(s.cert->poly);
    c["roots"] = roots_json(s.cert->iso);
    j["certificate"] = c;
  }
  return j;
}

inline Json lc_verdict_json(const LogConcavityVerdict& v) {
  Json j;
  j["holds"] = v.holds;
  if (v.failing_index) j["failing_index"] = *v.failing_index;
  return j;
}

inline Json riemann_report_json(const RiemannReport& r) {
  Json j;
  j["n_max"] = r.n_max;
  j["precision_bits"] = r.precision_bits;
  Json m;
  m["values"] = r.moments.values;
  m["error_bounds"] = r.moments.error_bounds;
  m["precision_bits"] = r.moments.precision_bits;
  m["series_terms"] = r.moments.series_terms;
  m["t_cutoff"] = r.moments.t_cutoff;
  j["moments"] = m;
  j["scaled_values"] = r.scaled_values;
  j["scaled_errors"] = r.scaled_errors;
  j["positivity"] = r.positivity;
  Json turan = Json::array();
  for (const auto& e : r.turan) {
    Json t;
    t["index"] = e.index;
    t["status"] = check_status_name(e.status);
    t["lhs_low"] = e.lhs_low;
    t["rhs_high"] = e.rhs_high;
    turan.push_back(t);
  }
  j["turan"] = turan;
  j["log_concavity"] = check_status_name(r.log_concavity);
  Json ex = Json::array();
  for (const auto& e : r.explorations) {
    Json x;
    x["q"] = rat_str(e.q);
    x["member_midpoint"] = e.member_midpoint;
    x["membership_detail"] = e.membership_detail;
    x["margin_reliable"] = e.margin_reliable;
    x["margin_note"] = e.margin_note;
    x["label"] = "exploratory";
    ex.push_back(x);
  }
  j["explorations"] = ex;
  return j;
}

// Top-level CLI report envelope.
struct CliReport {
  std::string command;
  std::string inputs;   // canonical argument rendering, digested below
  std::string outcome;  // PASS | FAIL | INDETERMINATE | EXPLORATORY
  Json payload;
  std::optional<std::uint64_t> seed;
};

inline Json cli_report_json(const CliReport& r) {
  Json j;
  j["command"] = r.command;
  j["inputs_digest"] = fnv_digest(r.command + "\n" + r.inputs);
  j["outcome"] = r.outcome;
  j["payload"] = r.payload;
  if (r.seed) j["seed"] = *r.seed;
  return j;
}

inline std::string canonical_dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace qsep
