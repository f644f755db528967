// SPDX-License-Identifier: Apache-2.0
#pragma once

// Classical q-expansions. Every function returns a series valid for
// exponents < prec.

#include <string_view>

#include "tsm/series.hpp"

namespace tsm::classical {

/// sum over n in Z of q^(n^2).
ZSeries theta(Exponent prec);
/// sum over n in Z of (-1)^n q^(n^2).
ZSeries theta1(Exponent prec);

/// sigma_k(n) for 0 <= n < count (entry 0 is 0).
std::vector<Integer> divisor_sums(unsigned k, std::size_t count);

/// Normalized Eisenstein series, weight in {2, 4, 6}.
ZSeries eisenstein(int weight, Exponent prec);
inline ZSeries E2(Exponent prec) { return eisenstein(2, prec); }
inline ZSeries E4(Exponent prec) { return eisenstein(4, prec); }
inline ZSeries E6(Exponent prec) { return eisenstein(6, prec); }

/// prod_{n>=1} (1 - q^n), from the pentagonal number theorem.
ZSeries euler_product(Exponent prec);

/// (E4^3 - E6^2) / 1728.
ZSeries delta(Exponent prec);

/// E4^3 / delta = q^-1 + 744 + 196884 q + ...
ZSeries j_invariant(Exponent prec);

/// j(4 tau).
ZSeries j4(Exponent prec);

/// eta(m tau)^r = q^(r m / 24) prod (1 - q^(m n))^r, with the body valid
/// below q^prec.
ShiftedSeries eta_pow(Exponent m, long r, Exponent prec);

/// theta1(tau) E4(4 tau) / eta(4 tau)^6, the weight 3/2 form q^-1 - 2 + ...
ZSeries g1_eta(Exponent prec);

/// Dispatch by name: theta, theta1, E2, E4, E6, delta, j, j4, g1_eta.
ShiftedSeries by_name(std::string_view name, Exponent prec);

}  // namespace tsm::classical
