// SPDX-License-Identifier: Apache-2.0
#pragma once

// Discriminants, Kronecker symbols, and the Hecke coefficient sums
// A_m(D, d), B_m(D, d) in the normalization where every coefficient stays
// integral (the weight 1/2 operator is rescaled by m).

#include <cstdint>
#include <vector>

#include "tsm/basis.hpp"

namespace tsm::hecke {

/// Kronecker symbol (a / n), for any integers a, n.
int kronecker(std::int64_t a, std::int64_t n);

/// chi(p^j) = kronecker(disc, p)^j, with 0^0 = 1.
int character_power(std::int64_t disc, std::int64_t p, unsigned j);

enum class DiscKind { kPositive, kNegative };

struct DiscriminantInfo {
  std::int64_t value = 0;
  bool is_fundamental = false;
  DiscKind kind = DiscKind::kPositive;
};

/// Throws kUsage unless value = 0, 1 mod 4 and value != 0.
DiscriminantInfo classify(std::int64_t value);

/// 1, or the discriminant of a quadratic field.
bool is_fundamental(std::int64_t value);

bool is_squarefree(std::int64_t n);

/// Positive divisors of n >= 1 in increasing order.
std::vector<std::int64_t> divisors(std::int64_t n);

/// p-adic valuation of a nonzero integer; returns `cap` for zero.
long valuation(const Integer& x, long p, long cap = 1L << 20);
/// p-adic valuation of a nonzero rational; `cap` for zero.
long valuation(const Rational& x, long p, long cap = 1L << 20);

/// A_m(D, d) = sum_{l | m} (D / l) (m / l) A(m^2 D / l^2, d).
/// Requires D fundamental (throws kFormulaInapplicable otherwise).
Integer hecke_A(std::int64_t m, std::int64_t D, std::int64_t d, const basis::TablePair& t);

/// B_m(D, d) = sum_{l | m} (-d / l) B(D, m^2 d / l^2).
/// Requires -d fundamental (throws kFormulaInapplicable otherwise).
Integer hecke_B(std::int64_t m, std::int64_t D, std::int64_t d, const basis::TablePair& t);

/// A_m(D, d) for any admissible D: the direct sum when D is fundamental,
/// otherwise -B_m(D, d) when -d is fundamental.
Integer A_m(std::int64_t m, std::int64_t D, std::int64_t d, const basis::TablePair& t);

}  // namespace tsm::hecke
