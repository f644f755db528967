// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "tsm/hecke.hpp"

using namespace tsm;
using namespace tsm::hecke;

namespace {

// Reference Kronecker symbol from prime factorization and Euler's criterion.
long powmod(long b, long e, long m) {
  long r = 1;
  b %= m;
  if (b < 0) b += m;
  for (; e > 0; e >>= 1) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
  }
  return r;
}

int legendre(long a, long p) {
  if (p == 2) {
    if (a % 2 == 0) return 0;
    const long r = ((a % 8) + 8) % 8;
    return (r == 1 || r == 7) ? 1 : -1;
  }
  const long v = powmod(a, (p - 1) / 2, p);
  return v == 0 ? 0 : (v == 1 ? 1 : -1);
}

int reference_kronecker(long a, long n) {
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  int result = 1;
  if (n < 0) {
    n = -n;
    if (a < 0) result = -result;
  }
  for (long p = 2; n > 1; ++p) {
    while (n % p == 0) {
      result *= legendre(a, p);
      n /= p;
    }
  }
  return result;
}

// Discriminant of a quadratic field (or 1): no square factor f^2 > 1 leaves
// another discriminant behind.
bool reference_fundamental(long v) {
  if (v == 1) return true;
  const auto disc = [](long x) { const long r = ((x % 4) + 4) % 4; return x != 0 && (r == 0 || r == 1); };
  if (!disc(v)) return false;
  for (long f = 2; f * f <= std::abs(v); ++f)
    if (v % (f * f) == 0 && disc(v / (f * f))) return false;
  return true;
}

const basis::TablePair& tables() {
  static const basis::TablePair t(basis::CoeffTable::build(432, 40), basis::CoeffTable::build(16, 800));
  return t;
}

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

TEST_CASE("kronecker symbol") {
  CHECK(kronecker(-7, 2) == 1);
  CHECK(kronecker(5, 2) == -1);
  for (long l = 1; l < 200; ++l) CHECK(kronecker(1, l) == 1);
  for (long a = -80; a <= 80; ++a)
    for (long n = -80; n <= 80; ++n) {
      INFO(a << " " << n);
      CHECK(kronecker(a, n) == reference_kronecker(a, n));
    }
}

TEST_CASE("kronecker multiplicativity and periodicity") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> dist(-500, 500);
  for (int i = 0; i < 2000; ++i) {
    const long a = dist(rng), b = dist(rng), n = dist(rng), m = dist(rng);
    CHECK(kronecker(a * b, n) == kronecker(a, n) * kronecker(b, n));
    CHECK(kronecker(a, n * m) == kronecker(a, n) * kronecker(a, m));
  }
  for (long a = -400; a <= 400; ++a) {
    if (!is_fundamental(a)) continue;
    for (long n = 1; n < 60; ++n) CHECK(kronecker(a, n) == kronecker(a, n + std::abs(a)));
  }
}

TEST_CASE("fundamental discriminants") {
  for (long v = -10000; v <= 10000; ++v) {
    INFO(v);
    CHECK(is_fundamental(v) == reference_fundamental(v));
  }
  CHECK(is_fundamental(1));
  CHECK(is_fundamental(-3));
  CHECK(is_fundamental(-4));
  CHECK(is_fundamental(-8));
  CHECK(is_fundamental(12));
  CHECK_FALSE(is_fundamental(-12));
  CHECK_FALSE(is_fundamental(4));
  CHECK_FALSE(is_fundamental(9));
  const auto info = classify(-15);
  CHECK(info.is_fundamental);
  CHECK(info.kind == DiscKind::kNegative);
  CHECK(code_of([] { (void)classify(6); }) == ErrorCode::kUsage);
  CHECK(code_of([] { (void)classify(0); }) == ErrorCode::kUsage);
}

TEST_CASE("helpers") {
  CHECK(divisors(12) == std::vector<std::int64_t>{1, 2, 3, 4, 6, 12});
  CHECK(divisors(1) == std::vector<std::int64_t>{1});
  CHECK(character_power(8, 2, 0) == 1);
  CHECK(character_power(8, 2, 1) == 0);
  CHECK(character_power(5, 2, 2) == 1);
  CHECK(character_power(5, 2, 3) == -1);
  CHECK(valuation(Integer(48), 2) == 4);
  CHECK(valuation(Integer(-81), 3) == 4);
  CHECK(valuation(Integer(0), 3, 99) == 99);
  CHECK(valuation(Rational(5, 8), 2) == -3);
}

TEST_CASE("Hecke sums, basic instances") {
  const auto& t = tables();
  for (long D : {1, 5, 8, 12, 13}) {
    for (long d : {3, 4, 7, 8, 11}) {
      CHECK(hecke_A(1, D, d, t) == t.A(D, d));
      CHECK(hecke_B(1, D, d, t) == t.B(D, d));
    }
  }
  CHECK(hecke_A(3, 1, 8, t) == 3 * t.A(9, 8) + t.A(1, 8));
  CHECK(hecke_B(2, 1, 3, t) == t.B(1, 12) + kronecker(-3, 2) * t.B(1, 3));
  CHECK(hecke_B(2, 1, 3, t) == -53256);
  for (long p : {2, 3, 5, 7}) {
    for (long d : {3, 4, 7, 8}) {
      CHECK(hecke_B(p, 1, d, t) == t.B(1, p * p * d) + kronecker(-d, p) * t.B(1, d));
    }
  }
}

TEST_CASE("prime power sums match the single-sum formula") {
  const auto& t = tables();
  for (long p : {2, 3}) {
    for (unsigned n = 1; n <= 2; ++n) {
      long pn = 1;
      for (unsigned i = 0; i < n; ++i) pn *= p;
      for (long D : {1, 5, 8}) {
        if (pn * pn * D > 432) continue;
        for (long d : {3, 4, 7}) {
          Integer expected;
          long pi = 1;
          for (unsigned i = 0; i <= n; ++i) {
            expected += character_power(D, p, n - i) * pi * t.A(pi * pi * D, d);
            pi *= p;
          }
          CHECK(hecke_A(pn, D, d, t) == expected);
        }
      }
    }
  }
}

TEST_CASE("composite index factors over prime parts") {
  const auto& t = tables();
  for (long D : {1, 5}) {
    for (long d : {3, 4}) {
      Integer expected;
      for (long l1 : {1, 2})
        for (long l2 : {1, 3}) {
          const long chi = kronecker(D, l1) * kronecker(D, l2);
          const long scale = (2 / l1) * (3 / l2);
          expected += chi * scale * t.A(scale * scale * D, d);
        }
      CHECK(hecke_A(6, D, d, t) == expected);
    }
  }
}

TEST_CASE("duality under Hecke on a small grid") {
  const auto& t = tables();
  std::size_t checked = 0;
  for (long D = 1; D <= 12; ++D) {
    if (!is_fundamental(D)) continue;
    for (long d = 3; d <= 12; ++d) {
      if (!is_fundamental(-d)) continue;
      for (long m = 1; m <= 4; ++m) {
        CHECK(hecke_A(m, D, d, t) == -hecke_B(m, D, d, t));
        CHECK(A_m(m, D, d, t) == hecke_A(m, D, d, t));
        ++checked;
      }
    }
  }
  CHECK(checked == 4 * 5 * 4);
  // Non-fundamental first index goes through the weight 3/2 side.
  CHECK(A_m(2, 4, 3, t) == -hecke_B(2, 4, 3, t));
}

TEST_CASE("Hecke errors") {
  const auto& t = tables();
  CHECK(code_of([&] { (void)hecke_A(1, 4, 3, t); }) == ErrorCode::kFormulaInapplicable);
  CHECK(code_of([&] { (void)hecke_B(1, 1, 12, t); }) == ErrorCode::kFormulaInapplicable);
  CHECK(code_of([&] { (void)hecke_B(1, 1, 16, t); }) == ErrorCode::kFormulaInapplicable);
  CHECK(code_of([&] { (void)A_m(1, 4, 12, t); }) == ErrorCode::kFormulaInapplicable);
  CHECK(code_of([&] { (void)hecke_A(0, 1, 3, t); }) == ErrorCode::kUsage);
  CHECK(code_of([&] { (void)hecke_A(7, 13, 3, t); }) == ErrorCode::kInsufficientTable);
}
