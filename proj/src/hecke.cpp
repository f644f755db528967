// SPDX-License-Identifier: Apache-2.0
#include "tsm/hecke.hpp"

#include <string>

namespace tsm::hecke {

int kronecker(std::int64_t a, std::int64_t n) {
  const Integer za(static_cast<long>(a));
  const Integer zn(static_cast<long>(n));
  return mpz_kronecker(za.get_mpz_t(), zn.get_mpz_t());
}

int character_power(std::int64_t disc, std::int64_t p, unsigned j) {
  if (j == 0) return 1;
  const int c = kronecker(disc, p);
  return (c == -1 && j % 2 == 0) ? 1 : c;
}

bool is_squarefree(std::int64_t n) {
  if (n < 0) n = -n;
  if (n == 0) return false;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return false;
  }
  return true;
}

bool is_fundamental(std::int64_t value) {
  if (value == 1) return true;
  const std::int64_t r = ((value % 4) + 4) % 4;
  if (r == 1) return is_squarefree(value);
  if (r != 0 || value == 0) return false;
  const std::int64_t m = value / 4;
  const std::int64_t rm = ((m % 4) + 4) % 4;
  return (rm == 2 || rm == 3) && is_squarefree(m);
}

DiscriminantInfo classify(std::int64_t value) {
  const std::int64_t r = ((value % 4) + 4) % 4;
  if (value == 0 || (r != 0 && r != 1))
    fail(ErrorCode::kUsage, std::to_string(value) + " is not a discriminant");
  return {value, is_fundamental(value), value > 0 ? DiscKind::kPositive : DiscKind::kNegative};
}

std::vector<std::int64_t> divisors(std::int64_t n) {
  if (n < 1) fail(ErrorCode::kUsage, "divisors: n must be >= 1");
  std::vector<std::int64_t> small;
  std::vector<std::int64_t> large;
  for (std::int64_t k = 1; k * k <= n; ++k) {
    if (n % k != 0) continue;
    small.push_back(k);
    if (k != n / k) large.push_back(n / k);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

long valuation(const Integer& x, long p, long cap) {
  if (sgn(x) == 0) return cap;
  const Integer zp(p);
  Integer rest;
  const auto v = mpz_remove(rest.get_mpz_t(), x.get_mpz_t(), zp.get_mpz_t());
  return static_cast<long>(v);
}

long valuation(const Rational& x, long p, long cap) {
  if (sgn(x) == 0) return cap;
  return valuation(x.get_num(), p, cap) - valuation(x.get_den(), p, cap);
}

namespace {

void require_m(std::int64_t m) {
  if (m < 1) fail(ErrorCode::kUsage, "Hecke index m must be >= 1");
}

}  // namespace

Integer hecke_A(std::int64_t m, std::int64_t D, std::int64_t d, const basis::TablePair& t) {
  require_m(m);
  if (D < 1 || !is_fundamental(D))
    fail(ErrorCode::kFormulaInapplicable,
         "A_m(D,d) sum needs D fundamental, got D=" + std::to_string(D));
  Integer total;
  for (const auto l : divisors(m)) {
    const int chi = kronecker(D, l);
    if (chi == 0) continue;
    const std::int64_t X = (m / l) * (m / l) * D;
    total += Integer(static_cast<long>(chi * (m / l))) * t.A(X, d);
  }
  return total;
}

Integer hecke_B(std::int64_t m, std::int64_t D, std::int64_t d, const basis::TablePair& t) {
  require_m(m);
  if (d < 1 || !is_fundamental(-d))
    fail(ErrorCode::kFormulaInapplicable,
         "B_m(D,d) sum needs -d fundamental, got d=" + std::to_string(d));
  Integer total;
  for (const auto l : divisors(m)) {
    const int chi = kronecker(-d, l);
    if (chi == 0) continue;
    const std::int64_t Y = (m / l) * (m / l) * d;
    if (chi > 0) {
      total += t.B(D, Y);
    } else {
      total -= t.B(D, Y);
    }
  }
  return total;
}

Integer A_m(std::int64_t m, std::int64_t D, std::int64_t d, const basis::TablePair& t) {
  if (D >= 1 && is_fundamental(D)) return hecke_A(m, D, d, t);
  if (d >= 1 && is_fundamental(-d)) return -hecke_B(m, D, d, t);
  fail(ErrorCode::kFormulaInapplicable,
       "A_m(" + std::to_string(D) + "," + std::to_string(d) +
           ") needs D or -d fundamental");
}

}  // namespace tsm::hecke
