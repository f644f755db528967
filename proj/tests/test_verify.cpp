// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tsm/errors.hpp"
#include "tsm/hecke.hpp"
#include "tsm/verify.hpp"

using namespace tsm;
using namespace tsm::verify;

namespace {

const basis::TablePair& tables() {
  static const basis::TablePair t(basis::CoeffTable::build(432, 40), basis::CoeffTable::build(16, 800));
  return t;
}

std::size_t observed_with(const CheckReport& r, const std::string& needle, const std::string& value) {
  std::size_t n = 0;
  for (const auto& c : r.cases())
    if (c.observational && c.params.find(needle) != std::string::npos && c.observed == value) ++n;
  return n;
}

}  // namespace

TEST_CASE("fundamental pairs") {
  const auto pairs = fundamental_pairs(13, 8);
  std::vector<std::pair<std::int64_t, std::int64_t>> got;
  for (const auto& p : pairs) got.emplace_back(p.D, p.d);
  const std::vector<std::pair<std::int64_t, std::int64_t>> want = {
      {1, 3}, {1, 4}, {1, 7}, {1, 8}, {5, 3}, {5, 4}, {5, 7}, {5, 8}, {8, 3}, {8, 4}, {8, 7}, {8, 8},
      {12, 3}, {12, 4}, {12, 7}, {12, 8}, {13, 3}, {13, 4}, {13, 7}, {13, 8}};
  CHECK(got == want);
}

TEST_CASE("characters") {
  CHECK(chi_d(7, 2) == 1);
  CHECK(chi_D(5, 2) == -1);
  CHECK(chi_d(3, 3) == 0);
  CHECK(chi_D(13, 3) == 1);
}

TEST_CASE("A_m falls back to the dual formula") {
  const auto& t = tables();
  // D = 20 is not fundamental; -7 is.
  CHECK(A_m(2, 20, 7, t) == -hecke::hecke_B(2, 20, 7, t));
  CHECK(A_m(1, 5, 7, t) == t.A(5, 7));
  CHECK_THROWS_AS(A_m(3, 20, 400, t), Error);
}

TEST_CASE("prime-power identity with chi_D(p) = -1 carries the character") {
  const auto& t = tables();
  // p = 2, D = 5, d = 7, n = 0: chi_7(2) = 1, chi_5(2) = -1.
  const Integer a1 = t.A(5, 28), a0 = t.A(5, 7);
  const Integer b1 = 2 * t.A(20, 7), b0 = t.A(5, 7);
  CHECK(a1 + a0 == b1 - b0);
  CHECK(a1 - a0 != b1 + b0);
  // First identity instance: A(1, 28) = 2 A(4, 7).
  CHECK(t.A(1, 28) == 2 * t.A(4, 7));
}

TEST_CASE("prop1 on a small grid") {
  const PrimeGrid g{{2, 3}, 1, 0, 2, 13, 11};
  const auto r = check_prop1(tables(), g);
  CHECK(r.passed());
  CHECK(r.hard_count() > 20);
  CHECK(observed_with(r, "p=2 n=0 m=1 D=5 d=7 unsigned", "fails") == 1);
}

TEST_CASE("grid identities") {
  const PrimeGrid g{{2, 3}, 2, 2, 1, 13, 8};
  for (const auto& r : {check_xx(tables(), g), check_sysequ(tables(), g), check_sysequps(tables(), g)}) {
    CHECK_MESSAGE(r.passed(), r.to_text());
    CHECK(r.hard_count() > 0);
  }
}

TEST_CASE("congruences on a small grid") {
  CongruenceGrid g;
  g.prime_grid = {{2, 3}, 1, 0, 2, 13, 11};
  g.ao_primes = {2, 3};
  g.ao_mmax = 3;
  g.ao_dmax = 40;
  g.small_primes = {2, 3};
  g.small_dmax = 80;
  g.small_min_cases = 1;
  for (const auto kind : {Congruence::kThm1a, Congruence::kThm1b, Congruence::kJen, Congruence::kAO,
                          Congruence::kSmallPrime}) {
    const auto r = check_congruences(tables(), kind, g);
    CHECK_MESSAGE(r.passed(), r.to_text());
  }
}

TEST_CASE("valuation trend and F coefficients") {
  const auto r = check_thm2_trend(tables(), {{2, 3, 7}, {3, 1, 8}});
  CHECK_MESSAGE(r.passed(), r.to_text());
  CHECK(r.hard_count() == 4);
  // Only l = 1 survives at q^p.
  CHECK(padic_F_coefficient(tables(), 2, 1, 7, 2) == Rational(tables().A(4, 7)));
  CHECK(padic_F_coefficient(tables(), 3, 1, 8, 3) == Rational(tables().A(9, 8)));
  const auto f = padic_F_valuations(tables(), 2, 1, 7, 3);
  CHECK(f.passed());
  CHECK_THROWS_AS(padic_F_valuations(tables(), 2, 1, 8, 2), Error);
}

TEST_CASE("oracle suites") {
  CHECK(check_duality_oracle(tables(), 40).passed());
  const auto tw = check_twisted_oracle(tables(), 8, 11);
  CHECK_MESSAGE(tw.passed(), tw.to_text());
  CHECK(check_hecke_duality(tables(), 13, 11, 3).passed());
}

TEST_CASE("construction and structure") {
  CHECK(check_construction(60).passed());
  const auto s = check_structure(24, 40);
  CHECK_MESSAGE(s.passed(), s.to_text());
}

TEST_CASE("run_suite selection") {
  SuiteConfig cfg;
  CHECK_THROWS_AS(run_suite(cfg, tables()), Error);
  cfg.suites = {"no-such-suite"};
  try {
    run_suite(cfg, tables());
    FAIL("expected a usage error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kUsage);
  }
  cfg.suites = {"construction"};
  cfg.construction_prec = 40;
  const auto out = run_suite(cfg, tables());
  REQUIRE(out.size() == 1);
  CHECK(out[0].name() == "construction");
  const auto j = out[0].to_json();
  CHECK(j["pass"] == true);
  CHECK(j["summary"]["failed"] == 0);
}

TEST_CASE("coverage gaps are reported as skips") {
  const PrimeGrid g{{5}, 2, 0, 1, 13, 11};
  const auto r = check_prop1(tables(), g);
  CHECK(r.passed());
  CHECK(!r.skipped().empty());
}
