// SPDX-License-Identifier: Apache-2.0
#include "tsm/jacobi.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <optional>
#include <string>

#include "tsm/classical.hpp"

namespace tsm::jacobi {

namespace {

Exponent mod4(Exponent v) { return ((v % 4) + 4) % 4; }

// 1 / prod (1 - q^n)^6, which is q^(1/4) / eta^6.
ZSeries inverse_eta6_body(Exponent prec) {
  return recip(pow(classical::euler_product(prec), 6));
}

bool uses_phi01(Generator g) { return g == Generator::kE4SqE6Phi0; }

int factor_weight(Generator g) { return g == Generator::kE4SqE6Phi0 ? 2 : 4; }

// The one-variable factor of a generator, valid below q^prec.
ZSeries generator_factor(Generator g, Exponent prec) {
  using namespace classical;
  if (g == Generator::kE4Phi) return E4(prec);
  const auto inv_delta = recip(delta(prec + 2));  // lead -1, valid below q^prec
  const auto e4 = E4(prec + 1);
  const auto e6 = E6(prec + 1);
  ZSeries numerator;
  switch (g) {
    case Generator::kE4Pow4Phi: numerator = pow(e4, 4); break;
    case Generator::kE4E6SqPhi: numerator = mul(e4, mul(e6, e6)); break;
    case Generator::kE4SqE6Phi0: numerator = mul(mul(e4, e4), e6); break;
    case Generator::kE4Phi: break;
  }
  return mul(inv_delta, numerator).truncated(prec);
}

// phi_{-2,1} and phi_{0,1} rows from a shared 1/eta^6 body.
JacobiRow phi_m21_row_with(int r, Exponent prec, const ZSeries& inv_eta6) {
  const auto lattice = theta1_squared_row(r, prec);
  return {r, mul(lattice.series, inv_eta6, prec), -2};
}

JacobiRow phi01_row_with(int r, Exponent prec, const ZSeries& inv_eta6, const ZSeries& e2) {
  const auto base = phi_m21_row_with(r, prec, inv_eta6);
  const auto h = heat(base);
  const auto e2_part = mul(e2, base.series, prec);
  const Term<Integer> terms[] = {{Integer(-6), &h.series}, {Integer(-5), &e2_part}};
  return {r, linear_combine<Integer>(terms), 0};
}

// Evaluates rows of several families at one precision, sharing the
// expensive one-variable pieces.
class RowFactory {
 public:
  explicit RowFactory(Exponent prec)
      : prec_(prec),
        inv_eta6_(inverse_eta6_body(prec + 2)),
        e2_(classical::E2(prec + 2)) {}

  JacobiRow phi_m21(int r) const { return cut(phi_m21_row_with(r, prec_ + 2, inv_eta6_)); }
  JacobiRow phi01(int r) const { return cut(phi01_row_with(r, prec_ + 2, inv_eta6_, e2_)); }

  JacobiRow generator(Generator g, int r) {
    const JacobiRow phi = uses_phi01(g) ? phi01_row_with(r, prec_ + 2, inv_eta6_, e2_)
                                        : phi_m21_row_with(r, prec_ + 2, inv_eta6_);
    return times(factor(g), factor_weight(g), phi, prec_);
  }

 private:
  JacobiRow cut(JacobiRow row) const {
    row.series.truncate(prec_);
    return row;
  }

  const ZSeries& factor(Generator g) {
    auto& slot = factors_[static_cast<std::size_t>(g)];
    if (!slot) slot = generator_factor(g, prec_ + 2);
    return *slot;
  }

  Exponent prec_;
  ZSeries inv_eta6_;
  ZSeries e2_;
  std::array<std::optional<ZSeries>, 4> factors_;
};

std::array<PlusForm, 4> all_generator_forms(Exponent prec) {
  const Exponent row_prec = (prec + 1) / 4 + 2;
  RowFactory factory(row_prec);
  std::array<PlusForm, 4> out;
  for (std::size_t i = 0; i < kGenerators.size(); ++i) {
    const auto g = kGenerators[i];
    out[i] = translate_rows(factory.generator(g, 0), factory.generator(g, 1));
    out[i].series.truncate(prec);
  }
  return out;
}

PlusForm combine(const SeedCombination& combo, const std::array<const PlusForm*, 4>& forms) {
  Integer common = 1;
  for (const auto& c : combo.coeffs) mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Integer> scales;
  std::vector<Term<Integer>> terms;
  scales.reserve(4);
  for (std::size_t i = 0; i < 4; ++i) {
    if (sgn(combo.coeffs[i]) == 0) continue;
    Integer s = combo.coeffs[i].get_num() * (common / combo.coeffs[i].get_den());
    scales.push_back(s);
  }
  std::size_t k = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    if (sgn(combo.coeffs[i]) == 0) continue;
    terms.push_back({scales[k++], &forms[i]->series});
  }
  if (terms.empty()) fail(ErrorCode::kUsage, "evaluate_combination: all coefficients are zero");
  const auto sum = linear_combine<Integer>(terms);
  return {3, divide_exact(sum, common)};
}

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(std::vector<std::vector<Rational>>& m) {
  std::vector<std::size_t> pivots;
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t sel = row;
    while (sel < rows && sgn(m[sel][col]) == 0) ++sel;
    if (sel == rows) continue;
    std::swap(m[sel], m[row]);
    const Rational inv = 1 / m[row][col];
    for (auto& v : m[row]) v *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == row || sgn(m[i][col]) == 0) continue;
      const Rational f = m[i][col];
      for (std::size_t j = 0; j < cols; ++j) m[i][j] -= f * m[row][j];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

constexpr std::array<Exponent, 3> kPoleSlots = {5, 4, 1};

void check_normalized(const PlusForm& form, Exponent pole, const char* label) {
  if (form.plus_support_violations() != 0)
    fail(ErrorCode::kConstruction, std::string(label) + ": plus-support violation");
  for (Exponent e = form.series.lead(); e < 0; ++e) {
    const Integer expect = (e == -pole) ? 1 : 0;
    if (form.series.coeff(e) != expect)
      fail(ErrorCode::kConstruction,
           std::string(label) + ": unexpected principal part at q^" + std::to_string(e));
  }
}

}  // namespace

JacobiRow theta1_squared_row(int r, Exponent prec) {
  std::vector<Integer> v(prec > 0 ? static_cast<std::size_t>(prec) : 0);
  const long sign = (std::abs(r - 1) % 2 == 0) ? 1 : -1;
  const Exponent rr = static_cast<Exponent>(r) * r;
  // a = r + t with a odd; exponent ((a^2 + b^2) - 2) / 8 = (t^2 + r^2 - 1) / 4.
  const Exponent t0 = (std::abs(r) % 2 == 0) ? 1 : 0;
  for (Exponent t = t0;; t += 2) {
    const Exponent e = (t * t + rr - 1) / 4;
    if (e >= prec) break;
    const int copies = (t == 0) ? 1 : 2;  // +t and -t
    v[static_cast<std::size_t>(e)] += sign * copies;
  }
  return {r, ZSeries(0, std::move(v), prec), 1};
}

JacobiRow phi_m21_row(int r, Exponent prec) {
  return phi_m21_row_with(r, prec, inverse_eta6_body(prec));
}

JacobiRow phi01_row(int r, Exponent prec) {
  return phi01_row_with(r, prec, inverse_eta6_body(prec), classical::E2(prec));
}

JacobiRow heat(const JacobiRow& row) {
  const Exponent rr = static_cast<Exponent>(row.r) * row.r;
  return {row.r,
          row.series.map_indexed([rr](Exponent n, const Integer& c) { return Integer(c * (4 * n - rr)); }),
          row.weight + 2};
}

JacobiRow times(const ZSeries& f, int f_weight, const JacobiRow& row, Exponent max_prec) {
  return {row.r, mul(f, row.series, max_prec), f_weight + row.weight};
}

std::string_view generator_name(Generator g) {
  switch (g) {
    case Generator::kE4Phi: return "E4*phi_-2,1";
    case Generator::kE4Pow4Phi: return "E4^4*phi_-2,1/Delta";
    case Generator::kE4E6SqPhi: return "E4*E6^2*phi_-2,1/Delta";
    case Generator::kE4SqE6Phi0: return "E4^2*E6*phi_0,1/Delta";
  }
  return "?";
}

JacobiRow generator_row(Generator g, int r, Exponent prec) {
  RowFactory factory(prec);
  return factory.generator(g, r);
}

PlusForm translate_rows(const JacobiRow& row0, const JacobiRow& row1) {
  if (row0.r != 0 || std::abs(row1.r) != 1)
    fail(ErrorCode::kUsage, "translate_rows expects rows r = 0 and r = 1");
  if (row0.weight != 2 || row1.weight != 2)
    fail(ErrorCode::kUsage, "translate_rows expects weight 2 rows");
  const auto& s0 = row0.series;
  const auto& s1 = row1.series;
  const Exponent lead = std::min(4 * s0.lead(), 4 * s1.lead() - 1);
  const Exponent prec = std::min(4 * s0.prec(), 4 * s1.prec() - 1);
  if (prec <= lead) return {3, ZSeries::zero(prec)};
  std::vector<Integer> v(static_cast<std::size_t>(prec - lead));
  for (Exponent d = lead; d < prec; ++d) {
    const Exponent m = mod4(d);
    auto& slot = v[static_cast<std::size_t>(d - lead)];
    if (m == 0) {
      slot = s0.coeff(d / 4);
    } else if (m == 3) {
      slot = s1.coeff((d + 1) / 4);
    }
  }
  return {3, ZSeries(lead, std::move(v), prec)};
}

PlusForm generator_form(Generator g, Exponent prec) {
  const Exponent row_prec = (prec + 1) / 4 + 2;
  RowFactory factory(row_prec);
  auto form = translate_rows(factory.generator(g, 0), factory.generator(g, 1));
  form.series.truncate(prec);
  return form;
}

CheckReport consistency_check(int rmax, Exponent prec) {
  if (rmax < 2) fail(ErrorCode::kUsage, "consistency_check: rmax must be >= 2");
  CheckReport report("jacobi-consistency");
  RowFactory factory(prec);

  struct Family {
    std::string name;
    std::function<JacobiRow(int)> row;
  };
  std::vector<Family> families = {
      {"phi_-2,1", [&](int r) { return factory.phi_m21(r); }},
      {"phi_0,1", [&](int r) { return factory.phi01(r); }},
      {"H(phi_-2,1)", [&](int r) { return heat(factory.phi_m21(r)); }},
  };
  for (auto g : kGenerators)
    families.push_back({std::string(generator_name(g)), [&factory, g](int r) { return factory.generator(g, r); }});

  for (const auto& fam : families) {
    std::vector<JacobiRow> rows;
    for (int r = -rmax; r <= rmax; ++r) rows.push_back(fam.row(r));
    const auto& ref0 = rows[static_cast<std::size_t>(rmax)];
    const auto& ref1 = rows[static_cast<std::size_t>(rmax + 1)];
    std::size_t compared = 0;
    std::size_t mismatches = 0;
    for (const auto& row : rows) {
      const auto& mirror = rows[static_cast<std::size_t>(rmax - row.r)];
      const auto& ref = (std::abs(row.r) % 2 == 0) ? ref0 : ref1;
      const Exponent ref_rr = (std::abs(row.r) % 2 == 0) ? 0 : 1;
      for (Exponent n = row.series.lead(); n < row.series.prec(); ++n) {
        const Exponent d = row.discriminant(n);
        const Exponent n_ref = (d + ref_rr) / 4;
        ++compared;
        if (row.series.coeff(n) != ref.series.coeff(n_ref)) ++mismatches;
        if (row.series.coeff(n) != mirror.series.coeff(n)) ++mismatches;
      }
    }
    report.add_hard("family=" + fam.name + " rmax=" + std::to_string(rmax) +
                        " prec=" + std::to_string(prec),
                    std::to_string(mismatches) + " mismatches over " + std::to_string(compared) +
                        " coefficients",
                    "0 mismatches", mismatches == 0 && compared > 0);
  }
  return report;
}

PlusForm evaluate_combination(const SeedCombination& combo, Exponent prec) {
  const Exponent row_prec = (prec + 1) / 4 + 2;
  RowFactory factory(row_prec);
  std::array<PlusForm, 4> forms;
  std::array<const PlusForm*, 4> ptrs{};
  for (std::size_t i = 0; i < 4; ++i) {
    if (sgn(combo.coeffs[i]) == 0) {
      forms[i] = {3, ZSeries::zero(prec)};
    } else {
      forms[i] = translate_rows(factory.generator(kGenerators[i], 0),
                                factory.generator(kGenerators[i], 1));
      forms[i].series.truncate(prec);
    }
    ptrs[i] = &forms[i];
  }
  return combine(combo, ptrs);
}

SeedForms eliminate_seed_forms(Exponent prec) {
  if (prec < 10) fail(ErrorCode::kUsage, "eliminate_seed_forms: prec must be >= 10");
  const auto forms = all_generator_forms(prec);

  // Slots x generators.
  std::vector<std::vector<Rational>> m(kPoleSlots.size(), std::vector<Rational>(4));
  for (std::size_t s = 0; s < kPoleSlots.size(); ++s)
    for (std::size_t i = 0; i < 4; ++i) m[s][i] = forms[i].series.coeff(-kPoleSlots[s]);

  auto reduced = m;
  const auto pivots = rref(reduced);
  if (pivots.size() != 3)
    fail(ErrorCode::kConstruction, "seed elimination: pole matrix has rank " + std::to_string(pivots.size()));
  std::size_t free_col = 0;
  while (std::find(pivots.begin(), pivots.end(), free_col) != pivots.end()) ++free_col;
  std::array<Rational, 4> null{};
  null[free_col] = 1;
  for (std::size_t k = 0; k < pivots.size(); ++k) null[pivots[k]] = -reduced[k][free_col];

  // Expected: E4^4/Delta - E4 E6^2/Delta = 1728 E4, i.e. (-1728, 1, -1, 0).
  const std::array<Rational, 4> expected = {Rational(-1728), Rational(1), Rational(-1), Rational(0)};
  if (sgn(null[1]) == 0) fail(ErrorCode::kConstruction, "seed elimination: unexpected null space");
  const Rational scale = 1 / null[1];
  for (std::size_t i = 0; i < 4; ++i) {
    if (null[i] * scale != expected[i])
      fail(ErrorCode::kConstruction, "seed elimination: unexpected relation among generators");
  }
  // The relation must hold for the whole series, not just the pole slots.
  {
    const Term<Integer> terms[] = {{Integer(-1728), &forms[0].series},
                                   {Integer(1), &forms[1].series},
                                   {Integer(-1), &forms[2].series}};
    if (!linear_combine<Integer>(terms).is_zero())
      fail(ErrorCode::kConstruction, "seed elimination: generator relation fails beyond the poles");
  }

  // Solve on generators {0, 1, 3} (generator 2 is redundant).
  const std::array<std::size_t, 3> basis_cols = {0, 1, 3};
  auto solve = [&](std::size_t target_slot) {
    std::vector<std::vector<Rational>> aug(3, std::vector<Rational>(4));
    for (std::size_t s = 0; s < 3; ++s) {
      for (std::size_t k = 0; k < 3; ++k) aug[s][k] = m[s][basis_cols[k]];
      aug[s][3] = (s == target_slot) ? 1 : 0;
    }
    const auto piv = rref(aug);
    if (piv.size() != 3 || piv[2] != 2)
      fail(ErrorCode::kConstruction, "seed elimination: singular 3x3 system");
    SeedCombination combo{};
    for (std::size_t k = 0; k < 3; ++k) combo.coeffs[basis_cols[k]] = aug[k][3];
    return combo;
  };

  SeedForms out;
  out.g5_combo = solve(0);
  out.g4_combo = solve(1);
  out.g1_combo = solve(2);
  out.relation = expected;
  const std::array<const PlusForm*, 4> ptrs = {&forms[0], &forms[1], &forms[2], &forms[3]};
  out.g1_check = combine(out.g1_combo, ptrs);
  out.g4 = combine(out.g4_combo, ptrs);
  out.g5_check = combine(out.g5_combo, ptrs);
  check_normalized(out.g1_check, 1, "g1");
  check_normalized(out.g4, 4, "g4");
  check_normalized(out.g5_check, 5, "g5");
  return out;
}

}  // namespace tsm::jacobi
