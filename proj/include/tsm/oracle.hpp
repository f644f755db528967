// SPDX-License-Identifier: Apache-2.0
#pragma once

// Independent ground truth: traces of singular moduli from reduced binary
// quadratic forms and floating-point evaluation of j at CM points.

#include <boost/multiprecision/mpfr.hpp>

#include <cstdint>
#include <vector>

#include "tsm/series.hpp"

namespace tsm::oracle {

using Real = boost::multiprecision::mpfr_float;

struct QuadForm {
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::int64_t c = 0;

  std::int64_t disc() const noexcept { return b * b - 4 * a * c; }
  bool is_reduced() const noexcept;
  /// (x, y) -> a x^2 + b x y + c y^2.
  std::int64_t eval(std::int64_t x, std::int64_t y) const noexcept {
    return a * x * x + b * x * y + c * y * y;
  }
  bool operator==(const QuadForm&) const = default;
  auto operator<=>(const QuadForm&) const = default;
};

/// The reduced form equivalent to a positive definite form.
QuadForm reduce(QuadForm q);

/// Every reduced form of discriminant -d (primitive or not), one per class.
/// Throws kUsage unless d > 0 and d = 0, 3 mod 4.
std::vector<QuadForm> reduced_forms(std::int64_t d);

/// 1 / |stabilizer|: 1/3 for [a, a, a], 1/2 for [a, 0, a], else 1.
Rational weight(const QuadForm& q);

struct Complex {
  Real re;
  Real im;
};

struct JValue {
  Complex value;
  /// Bound on |computed - j(alpha)|, tail and rounding included.
  double abs_error = 0;
  unsigned bits = 0;
  std::size_t terms = 0;
};

struct OracleOptions {
  /// Bits carried beyond the size of the largest j value.
  unsigned guard_bits = 64;
  /// Integers must be recovered to within 2^-tolerance_log2.
  unsigned tolerance_log2 = 20;
};

/// j((-b + i sqrt(d)) / (2a)) for the CM point of q, d = -disc(q).
JValue j_eval(const QuadForm& q, const OracleOptions& opt = {});

/// Working precision for discriminant -d: pi sqrt(d) log2(e) + guard.
unsigned working_bits(std::int64_t d, const OracleOptions& opt);

/// t(d) = sum over reduced forms Q of weight(Q) (j(alpha_Q) - 744).
/// Throws kPrecision if the sum is not within 2^-tolerance of an integer.
Integer trace_untwisted(std::int64_t d, const OracleOptions& opt = {});

/// Genus character attached to D | disc(q): kronecker(D, r) for r
/// represented by q and prime to D; 0 when gcd(a, b, c, D) > 1.
int genus_character(const QuadForm& q, std::int64_t D);

struct TwistedTrace {
  /// S = sum chi(Q) weight(Q) (j(alpha_Q) - 744).
  Real S;
  /// The integer n minimizing |S - n sqrt(D)|.
  Integer n;
  double residual = 0;
};

/// Twisted trace over forms of discriminant -D d. Requires D > 1 and -d
/// fundamental (kUsage otherwise); throws kPrecision if S is not within
/// 2^-tolerance sqrt(D) of an integer multiple of sqrt(D).
TwistedTrace trace_twisted(std::int64_t D, std::int64_t d, const OracleOptions& opt = {});

}  // namespace tsm::oracle
