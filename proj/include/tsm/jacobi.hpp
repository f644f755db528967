// SPDX-License-Identifier: Apache-2.0
#pragma once

// Index-1 Jacobi forms handled one zeta-row at a time.
//
// A row is the coefficient of zeta^r, stored as a q-series whose q^n
// coefficient is c(n, r). For index 1, c(n, r) depends only on
// D = 4n - r^2 and on r mod 2, so rows r = 0 and r = 1 carry everything the
// weight 3/2 translation needs. Products are always (one-variable form) x
// row, never a full two-variable product.

#include <array>
#include <string_view>

#include "tsm/plus_form.hpp"
#include "tsm/report.hpp"
#include "tsm/series.hpp"

namespace tsm::jacobi {

struct JacobiRow {
  int r = 0;
  ZSeries series;
  int weight = 0;

  /// D = 4n - r^2 for the coefficient at q^n.
  Exponent discriminant(Exponent n) const noexcept {
    return 4 * n - static_cast<Exponent>(r) * r;
  }
};

/// Row r of -theta_1(tau, z)^2 with the common factor q^(1/4) removed:
/// sum over odd a, b with a + b = 2r of (-1)^(r-1) q^((a^2 + b^2 - 2)/8).
JacobiRow theta1_squared_row(int r, Exponent prec);

/// Row r of phi_{-2,1} = -theta_1^2 / eta^6.
JacobiRow phi_m21_row(int r, Exponent prec);

/// Row r of phi_{0,1} = -6 H(phi_{-2,1}) - 5 E2 phi_{-2,1}.
JacobiRow phi01_row(int r, Exponent prec);

/// Heat operator: c(n, r) -> (4n - r^2) c(n, r).
JacobiRow heat(const JacobiRow& row);

/// One-variable form f (of weight f_weight) times a row.
JacobiRow times(const ZSeries& f, int f_weight, const JacobiRow& row,
                Exponent max_prec = kNoCap);

// Weight 2, index 1 weak Jacobi forms whose translates span the seeds.
enum class Generator {
  kE4Phi,          // E4 phi_{-2,1}
  kE4Pow4Phi,      // E4^4 phi_{-2,1} / Delta
  kE4E6SqPhi,      // E4 E6^2 phi_{-2,1} / Delta
  kE4SqE6Phi0,     // E4^2 E6 phi_{0,1} / Delta
};
inline constexpr std::array<Generator, 4> kGenerators = {
    Generator::kE4Phi, Generator::kE4Pow4Phi, Generator::kE4E6SqPhi, Generator::kE4SqE6Phi0};

std::string_view generator_name(Generator g);

/// Row r of a generator, valid for q^n with n < prec.
JacobiRow generator_row(Generator g, int r, Exponent prec);

/// Weight 2 rows r = 0, 1 -> weight 3/2 plus form b(D) = c(n, r),
/// D = 4n - r^2 (r = 0 for D = 0 mod 4, r = 1 for D = 3 mod 4).
PlusForm translate_rows(const JacobiRow& row0, const JacobiRow& row1);

/// Translate of a generator, valid for exponents D < prec.
PlusForm generator_form(Generator g, Exponent prec);

/// Checks that c(n, r) depends only on (4n - r^2, r mod 2) for |r| <= rmax
/// and n < prec, for phi_{-2,1}, phi_{0,1}, H(phi_{-2,1}) and each generator.
CheckReport consistency_check(int rmax, Exponent prec);

// Rational coefficients over kGenerators.
struct SeedCombination {
  std::array<Rational, 4> coeffs;
};

/// Integer form sum coeffs[i] * generator_form(i), valid below q^prec.
/// Throws kConstruction if the result is not integral.
PlusForm evaluate_combination(const SeedCombination& combo, Exponent prec);

struct SeedForms {
  PlusForm g1_check;
  PlusForm g4;
  PlusForm g5_check;
  SeedCombination g1_combo;
  SeedCombination g4_combo;
  SeedCombination g5_combo;
  /// The one linear relation among the generators, scaled to integers.
  std::array<Rational, 4> relation;
};

/// Gaussian elimination against the pole slots q^-5, q^-4, q^-1. Requires
/// prec >= 10; throws kConstruction on an unexpected rank or non-integral
/// output.
SeedForms eliminate_seed_forms(Exponent prec);

}  // namespace tsm::jacobi
