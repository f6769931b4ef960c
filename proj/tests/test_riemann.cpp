#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "qsep/riemann.hpp"

using namespace qsep;
using F64 = BigFloat<64>;

TEST_CASE("integrand value and shape") {
  PhiValue v = phi(Rat(0), 3, 128);
  double x = std::stod(v.value);
  CHECK(x > 0.4457);
  CHECK(x < 0.4477);
  CHECK(std::abs(x - 0.44667) < 1e-3);

  // positive on [0, 4] (values fall far below double range: compare wide)
  for (int i = 0; i <= 16; ++i) {
    F64 p(phi(Rat(i, 4), 3, 64).value.c_str());
    CHECK(p > 0);
  }

  // monotone decay beyond the peak
  F64 prev("1e10");
  for (int i = 2; i <= 8; ++i) {
    F64 p(phi(Rat(i, 2), 3, 64).value.c_str());
    CHECK(p < prev);
    prev = p;
  }
}

TEST_CASE("moments agree across precisions") {
  auto [v0, e0] = xi_moment(0, 128);
  CHECK(std::stod(v0) > 0.0);
  CHECK(F64(e0.c_str()) < F64("1e-30"));

  for (long n = 0; n <= 10; n += 5) {
    auto [a, ea] = xi_moment(n, 128);
    auto [b, eb] = xi_moment(n, 160);
    double va = std::stod(a), vb = std::stod(b);
    double rel = std::abs(va - vb) / std::abs(vb);
    INFO("n=" << n << " 128b=" << a << " 160b=" << b);
    CHECK(rel < 1e-12);
  }
}

TEST_CASE("necessary-condition report at N=8") {
  RiemannReport r = necessary_condition_report(8, {Rat(1, 2)}, 128);
  CHECK(r.positivity);
  CHECK(r.log_concavity == CheckStatus::kPass);
  for (const auto& e : r.turan) {
    INFO("index " << e.index << ": " << e.lhs_low << " vs " << e.rhs_high);
    CHECK(e.status == CheckStatus::kPass);
  }
  REQUIRE(r.scaled_values.size() == 9);
  // the scaled sequence decays fast; spot-check the first ratio bracket
  double f0 = std::stod(r.scaled_values[0]);
  double f1 = std::stod(r.scaled_values[1]);
  CHECK(f0 > f1);
  CHECK(f1 > 0);

  // exploratory class check is advisory but must be internally consistent
  for (const auto& ex : r.explorations) {
    INFO("q=" << rat_str(ex.q) << " " << ex.membership_detail);
    CHECK(ex.member_midpoint);  // observed to hold at every probed scale
  }

  RiemannReport r2 = necessary_condition_report(8, {Rat(1, 2)}, 128);
  CHECK(r.scaled_values == r2.scaled_values);
  CHECK(r.moments.values == r2.moments.values);
  CHECK(r.moments.error_bounds == r2.moments.error_bounds);
}

TEST_CASE("low precision reports itself as insufficient rather than guessing") {
  // at 64 bits with many terms the enclosures eventually swallow the
  // differences; the status lattice must degrade to insufficient, not fail
  RiemannReport r = necessary_condition_report(14, {}, 64);
  CHECK(r.positivity);
  bool any_insufficient = false;
  for (const auto& e : r.turan)
    if (e.status == CheckStatus::kInsufficient) any_insufficient = true;
  if (any_insufficient) CHECK(r.log_concavity == CheckStatus::kInsufficient);
  // either every comparison still clears the enclosures, or the roll-up
  // reflects the first insufficient entry; both are acceptable here
  CHECK(r.log_concavity != CheckStatus::kFail);
}
