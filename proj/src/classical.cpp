// SPDX-License-Identifier: Apache-2.0
#include "tsm/classical.hpp"

#include <string>

namespace tsm::classical {

namespace {

std::size_t slots(Exponent prec) {
  return prec > 0 ? static_cast<std::size_t>(prec) : 0;
}

ZSeries square_lattice(Exponent prec, bool alternating) {
  std::vector<Integer> v(slots(prec));
  if (v.empty()) return ZSeries::zero(prec);
  v[0] = 1;
  for (Exponent n = 1; n * n < prec; ++n) {
    v[static_cast<std::size_t>(n * n)] = (alternating && (n & 1)) ? -2 : 2;
  }
  return ZSeries(0, std::move(v), prec);
}

}  // namespace

ZSeries theta(Exponent prec) { return square_lattice(prec, false); }
ZSeries theta1(Exponent prec) { return square_lattice(prec, true); }

std::vector<Integer> divisor_sums(unsigned k, std::size_t count) {
  std::vector<Integer> sigma(count);
  Integer dk;
  for (std::size_t d = 1; d < count; ++d) {
    mpz_ui_pow_ui(dk.get_mpz_t(), d, k);
    for (std::size_t n = d; n < count; n += d) sigma[n] += dk;
  }
  return sigma;
}

ZSeries eisenstein(int weight, Exponent prec) {
  long factor = 0;
  unsigned k = 0;
  switch (weight) {
    case 2: factor = -24; k = 1; break;
    case 4: factor = 240; k = 3; break;
    case 6: factor = -504; k = 5; break;
    default: fail(ErrorCode::kUsage, "eisenstein: weight must be 2, 4 or 6");
  }
  auto v = divisor_sums(k, slots(prec));
  if (v.empty()) return ZSeries::zero(prec);
  for (auto& c : v) c *= factor;
  v[0] = 1;
  return ZSeries(0, std::move(v), prec);
}

ZSeries euler_product(Exponent prec) {
  std::vector<Integer> v(slots(prec));
  if (v.empty()) return ZSeries::zero(prec);
  v[0] = 1;
  // Exponents k(3k -+ 1)/2 with sign (-1)^k.
  for (Exponent k = 1;; ++k) {
    const Exponent e1 = k * (3 * k - 1) / 2;
    const Exponent e2 = k * (3 * k + 1) / 2;
    if (e1 >= prec) break;
    const int s = (k & 1) ? -1 : 1;
    v[static_cast<std::size_t>(e1)] += s;
    if (e2 < prec) v[static_cast<std::size_t>(e2)] += s;
  }
  return ZSeries(0, std::move(v), prec);
}

ZSeries delta(Exponent prec) {
  const auto e4 = E4(prec);
  const auto e6 = E6(prec);
  const auto diff = mul(mul(e4, e4), e4) - mul(e6, e6);
  auto d = divide_exact(diff, Integer(1728));
  if (!d.is_zero() && d.lead() < 1)
    fail(ErrorCode::kConstruction, "delta: nonzero constant term");
  return d;
}

ZSeries j_invariant(Exponent prec) {
  const auto e4 = E4(prec + 2);
  const auto e4_cubed = mul(mul(e4, e4), e4);
  const auto d = delta(prec + 2);
  auto j = mul(e4_cubed, recip(d)).truncated(prec);
  // j * delta must give back E4^3 exactly.
  const auto check = mul(j, d);
  const Exponent upto = std::min(check.prec(), e4_cubed.prec());
  for (Exponent e = 0; e < upto; ++e) {
    if (check[e] != e4_cubed[e])
      fail(ErrorCode::kConstruction, "j_invariant: j*delta != E4^3 at q^" + std::to_string(e));
  }
  return j;
}

ZSeries j4(Exponent prec) {
  const Exponent inner = (prec + 3) / 4 + 1;
  return subst_power(j_invariant(inner), 4).truncated(prec);
}

ShiftedSeries eta_pow(Exponent m, long r, Exponent prec) {
  if (m < 1) fail(ErrorCode::kUsage, "eta_pow: m must be >= 1");
  const Exponent inner = (prec + m - 1) / m;
  const auto body = pow(euler_product(inner), r);
  Rational shift(r * m, 24);
  shift.canonicalize();
  return {shift, subst_power(body, m).truncated(prec)};
}

ZSeries g1_eta(Exponent prec) {
  const auto theta_part = theta1(prec + 1);
  const auto e4_part = subst_power(E4((prec + 4) / 4 + 1), 4).truncated(prec + 1);
  const ShiftedSeries numerator{Rational(0), mul(theta_part, e4_part)};
  const auto result = numerator * recip(eta_pow(4, 6, prec + 1));
  return result.to_laurent().truncated(prec);
}

ShiftedSeries by_name(std::string_view name, Exponent prec) {
  auto plain = [](ZSeries s) { return ShiftedSeries{Rational(0), std::move(s)}; };
  if (name == "theta") return plain(theta(prec));
  if (name == "theta1") return plain(theta1(prec));
  if (name == "E2") return plain(E2(prec));
  if (name == "E4") return plain(E4(prec));
  if (name == "E6") return plain(E6(prec));
  if (name == "delta") return plain(delta(prec));
  if (name == "j") return plain(j_invariant(prec));
  if (name == "j4") return plain(j4(prec));
  if (name == "g1_eta") return plain(g1_eta(prec));
  fail(ErrorCode::kUsage, "unknown classical series '" + std::string(name) + "'");
}

}  // namespace tsm::classical
