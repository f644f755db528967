// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "tsm/series.hpp"

namespace tsm {

// A q-expansion of weight k + 1/2 (k = 0 or 1) in the Kohnen plus space:
// b(n) = 0 whenever (-1)^k n = 2, 3 mod 4.
struct PlusForm {
  int twice_weight = 3;
  ZSeries series;

  int k() const noexcept { return (twice_weight - 1) / 2; }

  static bool in_plus_support(int twice_weight, Exponent n) noexcept {
    const Exponent signed_n = (twice_weight == 3) ? -n : n;
    const Exponent r = ((signed_n % 4) + 4) % 4;
    return r == 0 || r == 1;
  }

  /// b(n); throws kNotPlusSupport for indices outside the plus support.
  const Integer& b(Exponent n) const {
    if (!in_plus_support(twice_weight, n))
      fail(ErrorCode::kNotPlusSupport,
           "index " + std::to_string(n) + " is not in the plus support for weight " +
               std::to_string(twice_weight) + "/2");
    return series.coeff(n);
  }

  /// Number of nonzero coefficients at indices outside the plus support.
  std::size_t plus_support_violations() const {
    std::size_t bad = 0;
    for (Exponent n = series.lead(); n < series.prec(); ++n)
      if (!in_plus_support(twice_weight, n) && sgn(series.coeff(n)) != 0) ++bad;
    return bad;
  }
};

}  // namespace tsm
