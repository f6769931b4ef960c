#include <catch2/catch_amalgamated.hpp>

#include "qsep/qcalc.hpp"
#include "qsep/theoremlab.hpp"

using namespace qsep;

namespace {
RPoly rp(std::vector<Rat> c) { return RPoly(std::move(c)); }

// independent product expansion, kept separate from r_poly on purpose
RPoly expand_product(long n, const Rat& q) {
  RPoly f = RPoly::one();
  Rat p(1);
  for (long j = 1; j <= n; ++j) {
    f = f * RPoly(std::vector<Rat>{Rat(1), p});
    p *= q;
  }
  return f;
}
}

TEST_CASE("weighted binomial oracles") {
  Rat h(1, 2);
  CHECK(q_binomial(3, 0, h) == 1);
  CHECK(q_binomial(3, 1, h) == Rat(7, 4));
  CHECK(q_binomial(3, 2, h) == Rat(7, 8));
  CHECK(q_binomial(3, 3, h) == Rat(1, 8));
  CHECK(q_binomial(5, 2, Rat(1)) == 10);
  CHECK(q_binomial(4, 1, Rat(0)) == 1);
  CHECK(q_binomial(4, 2, Rat(0)) == 0);
  CHECK_THROWS_AS(q_binomial(3, 4, h), std::domain_error);
  CHECK_THROWS_AS(q_binomial(3, -1, h), std::domain_error);
  CHECK_THROWS_AS(q_binomial(3, 1, Rat(2)), std::domain_error);
}

TEST_CASE("closed form matches the product expansion") {
  const Rat qs[] = {Rat(1, 5), Rat(1, 3), Rat(1, 2), Rat(9, 10), Rat(1)};
  for (long n = 0; n <= 12; ++n)
    for (const Rat& q : qs) {
      RPoly prod = expand_product(n, q);
      for (long k = 0; k <= n; ++k)
        CHECK(q_binomial(n, k, q) == prod.coeff(static_cast<std::size_t>(k)));
    }
}

TEST_CASE("canonical product polynomial") {
  Rat h(1, 2);
  CHECK(r_poly(3, h) == rp({Rat(1), Rat(7, 4), Rat(7, 8), Rat(1, 8)}));
  CHECK(r_poly(2, Rat(1)) == rp({Rat(1), Rat(2), Rat(1)}));
  CHECK(r_poly(0, h) == RPoly::one());
  CHECK(r_poly(4, Rat(0)) == rp({Rat(1), Rat(1)}));
}

TEST_CASE("basis round trip") {
  RPoly f = rp({Rat(3), Rat(-2), Rat(0), Rat(5)});
  CHECK(from_q_basis(to_q_basis(f, 5, Rat(1, 3))) == f);

  Rng rng(4);
  for (int i = 0; i < 100; ++i) {
    long n = rng.range(0, 9);
    std::vector<Rat> c;
    for (long k = 0; k <= n; ++k) c.push_back(Rat(rng.range(-9, 9), rng.range(1, 5)));
    RPoly g(c);
    Rat q(rng.range(1, 8), 8);
    CHECK(from_q_basis(to_q_basis(g, n, q)) == g);
  }
}

TEST_CASE("difference operator oracles") {
  Rat h(1, 2);
  RPoly f = rp({Rat(3), Rat(-2), Rat(0), Rat(5)});
  CHECK(q_diff(r_poly(3, h), 3, h) == r_poly(2, h));
  CHECK(q_diff_star(r_poly(3, h), 3, h) == r_poly(2, h));
  RPoly g = rp({Rat(1), Rat(5, 4), Rat(1, 4)});
  CHECK(q_diff(g, 2, h) == rp({Rat(5, 6), Rat(1, 2)}));
  CHECK(q_diff(f, 3, Rat(1)) == f.derivative() * Rat(1, 3));
  CHECK(q_diff_star(f, 3, Rat(1)) == f - (f.derivative() * Rat(1, 3)).shift_up(1));
}

TEST_CASE("reversal links the two difference operators") {
  long n = 4;
  Rat q(1, 3);
  RPoly F = rp({Rat(2), Rat(-1), Rat(3), Rat(1, 2), Rat(-5)});
  RPoly lhs = reverse_n(q_diff(F, n, q), n - 1);
  RPoly rhs = q_diff_star(reverse_n(F, n), n, q).scale_arg(q) * (-rat_pow(q, 1 - n));
  CHECK(lhs == rhs);
}

TEST_CASE("weighted coefficient product identities") {
  Rat h(1, 2);
  RPoly f = rp({Rat(3), Rat(-2), Rat(0), Rat(5)});
  CHECK(hadamard_q(f, r_poly(3, h), 3, h) == f);

  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    long n = rng.range(1, 8);
    Rat q(rng.range(1, 8), 8);
    std::vector<Rat> hc, fc;
    for (long k = 0; k <= n + 1; ++k) hc.push_back(Rat(rng.range(-9, 9), rng.range(1, 4)));
    for (long k = 0; k <= n; ++k) fc.push_back(Rat(rng.range(-9, 9), rng.range(1, 4)));
    RPoly H(hc), F(fc);
    CHECK(hadamard_q(q_diff_star(H, n + 1, q), F, n, q) == hadamard_q(H, F, n + 1, q));
    CHECK(hadamard_q(q_diff(H, n + 1, q), F, n, q).shift_up(1) ==
          hadamard_q(H, F.shift_up(1), n + 1, q));
    // basis view: the product multiplies basis coefficients entrywise
    QBasisVector a = to_q_basis(F, n, q);
    QBasisVector b = to_q_basis(hadamard_q(F, F, n, q), n, q);
    for (long k = 0; k <= n; ++k)
      CHECK(b.a[static_cast<std::size_t>(k)] ==
            a.a[static_cast<std::size_t>(k)] * a.a[static_cast<std::size_t>(k)]);
  }
}

TEST_CASE("separation oracles") {
  Rat h(1, 2);
  auto iso = isolate_real_roots(rp({Rat(3), Rat(4), Rat(1)}));
  CHECK(strict_q_separation(iso, h, true).holds);
  auto iso2 = isolate_real_roots(r_poly(3, h));
  CHECK(!strict_q_separation(iso2, h, true).holds);
  CHECK(strict_q_separation(iso2, h, true).detail == "zero ratio equal to q");
  CHECK(strict_q_separation(iso2, h, false).holds);
  auto iso3 = isolate_real_roots(rp({Rat(-2), Rat(-1), Rat(1)}));
  CHECK(strict_q_separation(iso3, Rat(9, 10), true).holds);
  auto iso4 = isolate_real_roots(rp({Rat(1), Rat(1)}));
  CHECK(strict_q_separation(iso4, Rat(0), true).holds);
  auto iso5 = isolate_real_roots(rp({Rat(1), Rat(3), Rat(2)}));
  CHECK(!strict_q_separation(iso5, Rat(0), false).holds);
}

TEST_CASE("class membership oracles") {
  Rat h(1, 2);
  auto m1 = class_membership(r_poly(3, h), 3, h, QClass::kClosureN);
  CHECK(m1.member);
  CHECK(m1.route_agreement);
  auto m2 = class_membership(r_poly(3, h), 3, h, QClass::kN);
  CHECK(!m2.member);
  CHECK(m2.witness_pair.has_value());
  CHECK(class_membership(rp({Rat(1), Rat(4), Rat(3)}), 2, h, QClass::kN).member);
  CHECK(class_membership(RPoly::zero(), 5, h, QClass::kR).member);
  CHECK(class_membership(rp({Rat(0), Rat(0), Rat(2)}), 3, Rat(0), QClass::kN).member);
  CHECK(!class_membership(rp({Rat(1), Rat(1)}), 3, Rat(0), QClass::kClosureR).member);
  CHECK(class_membership(rp({Rat(1), Rat(2), Rat(1)}), 2, Rat(1), QClass::kClosureR).member);
  CHECK(!class_membership(rp({Rat(1), Rat(2), Rat(1)}), 2, Rat(1), QClass::kR).member);
  CHECK(!class_membership(rp({Rat(1), Rat(0), Rat(1)}), 2, h, QClass::kClosureR).member);
  auto m10 = class_membership(rp({Rat(-2), Rat(-1), Rat(1)}), 2, h, QClass::kN);
  CHECK(!m10.member);
  REQUIRE(m10.witness_point.has_value());
  CHECK(*m10.witness_point == 2);
  CHECK(class_membership(rp({Rat(-2), Rat(-1), Rat(1)}), 2, h, QClass::kR).member);
}

TEST_CASE("parameter descent keeps non-extremal members strict") {
  Rng rng(17);
  for (int i = 0; i < 25; ++i) {
    long n = rng.range(2, 7);
    Rat q(rng.range(2, 8), 8);
    RPoly f = gen_class_member(n, q, QClass::kR, rng);
    if (is_extremal(f, n, q).extremal) continue;
    for (const Rat& r : {Rat(q / 2), Rat(q * Rat(3, 4))})
      CHECK(class_membership(hadamard_q(f, r_poly(n, r), n, q), n, r, QClass::kR).member);
  }
}

TEST_CASE("extremality oracles") {
  Rat h(1, 2);
  auto e1 = is_extremal(r_poly(4, Rat(1, 3)), 4, Rat(1, 3));
  CHECK(e1.extremal);
  CHECK(e1.scale == 1);
  auto e2 = is_extremal(r_poly(3, h).scale_arg(Rat(2)) * Rat(5), 3, h);
  CHECK(e2.extremal);
  CHECK(e2.scale == 2);
  CHECK(!is_extremal(rp({Rat(1), Rat(4), Rat(3)}), 2, h).extremal);
  auto e4 = is_extremal(r_poly(2, h).scale_arg(Rat(-1)), 2, h);
  CHECK(e4.extremal);
  CHECK(e4.scale == -1);
  CHECK(is_extremal(RPoly::constant(Rat(7)), 0, h).extremal);
}

TEST_CASE("complex class membership") {
  CPoly p1(std::vector<GaussRat>{GaussRat(Rat(1), Rat(1)), GaussRat(Rat(1), Rat(2))});
  CHECK(u_class_membership(p1, 1, Rat(1)).member);
  RPoly fr = rp({Rat(1), Rat(1)});
  CPoly p2 = to_cpoly(fr) + to_cpoly(fr) * GaussRat(Rat(0), Rat(1));
  CHECK(!u_class_membership(p2, 1, Rat(1)).member);
  CHECK(u_class_membership(to_cpoly(fr), 1, Rat(1)).member);
  CHECK(!u_class_membership(to_cpoly(rp({Rat(1), Rat(2), Rat(1)})), 2, Rat(1)).member);
}
