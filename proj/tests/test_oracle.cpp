// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "tsm/basis.hpp"
#include "tsm/oracle.hpp"

using namespace tsm;
using namespace tsm::oracle;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::kUsage;
}

}  // namespace

TEST_CASE("reduced forms, small discriminants") {
  CHECK(reduced_forms(3) == std::vector<QuadForm>{{1, 1, 1}});
  CHECK(reduced_forms(4) == std::vector<QuadForm>{{1, 0, 1}});
  const auto f23 = reduced_forms(23);
  const std::set<QuadForm> got(f23.begin(), f23.end());
  CHECK(got == std::set<QuadForm>{{1, 1, 6}, {2, 1, 3}, {2, -1, 3}});
  CHECK(f23.size() == 3);
  // Non-primitive classes are included: [2, 2, 2] has discriminant -12.
  const auto f12 = reduced_forms(12);
  CHECK(std::set<QuadForm>(f12.begin(), f12.end()) == std::set<QuadForm>{{1, 0, 3}, {2, 2, 2}});
  CHECK(code_of([] { (void)reduced_forms(5); }) == ErrorCode::kUsage);
  CHECK(code_of([] { (void)reduced_forms(0); }) == ErrorCode::kUsage);
}

TEST_CASE("class counts match reduction of a box of forms") {
  for (std::int64_t d = 3; d <= 500; ++d) {
    if (d % 4 != 0 && d % 4 != 3) continue;
    std::set<QuadForm> classes;
    for (std::int64_t a = 1; a <= 40; ++a)
      for (std::int64_t b = -40; b <= 40; ++b) {
        const std::int64_t num = b * b + d;
        if (num % (4 * a) != 0) continue;
        classes.insert(reduce({a, b, num / (4 * a)}));
      }
    const auto forms = reduced_forms(d);
    INFO("d = " << d);
    CHECK(std::set<QuadForm>(forms.begin(), forms.end()) == classes);
    for (const auto& q : forms) CHECK(q.is_reduced());
  }
}

TEST_CASE("stabilizer weights") {
  CHECK(weight({1, 1, 1}) == Rational(1, 3));
  CHECK(weight({2, 2, 2}) == Rational(1, 3));
  CHECK(weight({1, 0, 1}) == Rational(1, 2));
  CHECK(weight({2, 1, 3}) == 1);
}

TEST_CASE("j at elliptic points") {
  // Each value lies within its own reported error bound.
  const auto within = [](const JValue& v, double re) {
    return abs(v.value.re - Real(re)) <= Real(v.abs_error) && abs(v.value.im) <= Real(v.abs_error);
  };
  const auto ji = j_eval({1, 0, 1});
  CHECK(within(ji, 1728));
  CHECK(ji.abs_error < 1e-15);
  const auto jr = j_eval({1, 1, 1});
  CHECK(within(jr, 0));
  CHECK(jr.abs_error < 1e-15);
  // j(i sqrt 2) = 8000 and j((1 + i sqrt 7) / 2) = -3375.
  CHECK(within(j_eval({1, 0, 2}), 8000));
  CHECK(within(j_eval({1, 1, 2}), -3375));
  OracleOptions fine;
  fine.guard_bits = 200;
  const auto ji_fine = j_eval({1, 0, 1}, fine);
  CHECK(ji_fine.abs_error < 1e-55);
  CHECK(abs(ji_fine.value.re - 1728) < Real(1e-55));
  // Large d: q^-1 dominates.
  const auto big = j_eval({1, 1, 41});
  CHECK(within(big, -640320.0 * 640320.0 * 640320.0));
  CHECK(big.bits == 64 + 58);
  CHECK(code_of([] { (void)j_eval({3, 1, 1}); }) == ErrorCode::kUsage);
}

TEST_CASE("untwisted traces") {
  CHECK(trace_untwisted(3) == -248);
  CHECK(trace_untwisted(4) == 492);
  CHECK(trace_untwisted(7) == -4119);
  CHECK(trace_untwisted(8) == 7256);
}

TEST_CASE("precision doubling leaves traces unchanged") {
  OracleOptions wide;
  wide.guard_bits = 128;
  for (std::int64_t d : {3, 4, 23, 71, 103, 199, 300}) {
    if (d % 4 != 0 && d % 4 != 3) continue;
    CHECK(trace_untwisted(d) == trace_untwisted(d, wide));
  }
}

TEST_CASE("untwisted traces against g_1") {
  const auto g1 = basis::extend_basis(1, 101)[0].form.series;
  for (std::int64_t d = 3; d <= 100; ++d) {
    if (d % 4 != 0 && d % 4 != 3) continue;
    INFO("d = " << d);
    CHECK(trace_untwisted(d) == -g1[d]);
  }
}

TEST_CASE("genus character") {
  CHECK(genus_character({1, 1, 4}, 5) == 1);
  CHECK(genus_character({2, 1, 2}, 5) == -1);
  // gcd(a, b, c, D) > 1.
  CHECK(genus_character({5, 5, 5}, 5) == 0);
  // Constant on each class: compare against equivalent non-reduced forms.
  for (const auto& q : reduced_forms(15 * 8)) {
    for (std::int64_t t = -3; t <= 3; ++t) {
      // [a, b, c] under x -> x + t y, then swap.
      const QuadForm moved{q.a, q.b + 2 * q.a * t, q.a * t * t + q.b * t + q.c};
      const QuadForm swapped{moved.c, -moved.b, moved.a};
      CHECK(genus_character(moved, 5) == genus_character(q, 5));
      CHECK(genus_character(swapped, 5) == genus_character(q, 5));
      CHECK(reduce(swapped) == q);
    }
  }
  CHECK(code_of([] { (void)genus_character({1, 1, 4}, 7); }) == ErrorCode::kUsage);
}

TEST_CASE("twisted traces") {
  const auto t = trace_twisted(5, 3);
  CHECK(t.n == -85995);
  CHECK(t.residual < 1e-10);
  const auto t2 = trace_twisted(5, 4);
  CHECK(t2.n == 565760);
  CHECK(code_of([] { (void)trace_twisted(1, 3); }) == ErrorCode::kUsage);
  CHECK(code_of([] { (void)trace_twisted(5, 12); }) == ErrorCode::kUsage);
  CHECK(code_of([] { (void)trace_twisted(4, 3); }) == ErrorCode::kUsage);
}
