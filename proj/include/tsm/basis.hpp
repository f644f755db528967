// SPDX-License-Identifier: Apache-2.0
#pragma once

// The weight 3/2 basis g_D = q^-D + sum_{d >= 0} B(D, d) q^d and its
// coefficient tables. A(D, d) = -B(D, d) are the coefficients of the dual
// weight 1/2 basis f_d = q^-d + sum_{D > 0} A(D, d) q^D.

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tsm/plus_form.hpp"
#include "tsm/series.hpp"

namespace tsm::basis {

/// D >= 1 with D = 0, 1 mod 4.
bool admissible_D(Exponent D) noexcept;
/// d >= 0 with d = 0, 3 mod 4.
bool admissible_d(Exponent d) noexcept;

struct BasisColumn {
  Exponent D = 0;
  PlusForm form;

  Exponent prec() const noexcept { return form.series.prec(); }
};

using ProgressFn = std::function<void(const std::string&)>;

/// g_D for every admissible D <= Dmax, each valid below q^prec. Built from
/// g_1 and g_4 by g_D = g_(D-4) j(4 tau) minus earlier columns. Throws
/// kConstruction if a principal part cannot be cleared.
std::vector<BasisColumn> extend_basis(Exponent Dmax, Exponent prec,
                                      const ProgressFn& progress = {});

/// g_D rebuilt from g_(D-8) j(4 tau)^2 and the columns of `basis` below D.
/// Used to check that the result does not depend on the route taken.
PlusForm rebuild_via_square(const std::vector<BasisColumn>& basis, Exponent D);

/// B(D, d) for admissible 1 <= D <= Dmax, 0 <= d <= dmax.
class CoeffTable {
 public:
  CoeffTable() = default;
  CoeffTable(Exponent Dmax, Exponent dmax);

  static CoeffTable from_basis(const std::vector<BasisColumn>& basis, Exponent dmax);
  static CoeffTable build(Exponent Dmax, Exponent dmax, const ProgressFn& progress = {});

  Exponent Dmax() const noexcept { return Dmax_; }
  Exponent dmax() const noexcept { return dmax_; }

  bool covers(Exponent D, Exponent d) const noexcept {
    return D >= 1 && D <= Dmax_ && d >= 0 && d <= dmax_;
  }

  /// Throws kNotPlusSupport for inadmissible indices and kInsufficientTable
  /// outside the table.
  const Integer& B(Exponent D, Exponent d) const;
  Integer A(Exponent D, Exponent d) const { return -B(D, d); }

  void set(Exponent D, Exponent d, Integer value);

  /// Hex SHA-256 over the canonical "D,d,value\n" listing.
  std::string checksum() const;

  std::string to_json() const;
  std::string to_csv() const;
  /// Throws kChecksum on a checksum mismatch, kIo on malformed input.
  static CoeffTable from_json(const std::string& text);

  void save(const std::filesystem::path& file) const;
  static CoeffTable load(const std::filesystem::path& file);

  bool operator==(const CoeffTable&) const = default;

 private:
  std::size_t slot(Exponent D, Exponent d) const;

  Exponent Dmax_ = 0;
  Exponent dmax_ = -1;
  std::vector<Integer> values_;
};

struct TableSizes {
  Exponent Dmax_wide = 864;
  Exponent dmax_wide = 864;
  Exponent Dmax_deep = 64;
  Exponent dmax_deep = 7500;
};

// A wide table (many D, shallow d) and a deep table (few D, deep d). Queries
// go to whichever table covers the cell.
class TablePair {
 public:
  TablePair() = default;
  /// Throws kConstruction if the tables disagree on their overlap.
  TablePair(CoeffTable wide, CoeffTable deep);

  const CoeffTable& wide() const noexcept { return wide_; }
  const CoeffTable& deep() const noexcept { return deep_; }

  bool covers(Exponent D, Exponent d) const noexcept {
    return wide_.covers(D, d) || deep_.covers(D, d);
  }
  const Integer& B(Exponent D, Exponent d) const;
  Integer A(Exponent D, Exponent d) const { return -B(D, d); }

 private:
  CoeffTable wide_;
  CoeffTable deep_;
};

/// Number of cells on which the two tables overlap; throws kConstruction on
/// the first disagreement.
std::size_t check_overlap(const CoeffTable& a, const CoeffTable& b);

/// Builds both tables, or loads them from `cache_dir` when present. When
/// `write_cache` is set, freshly built tables are saved there.
TablePair build_tables(const TableSizes& sizes,
                       const std::optional<std::filesystem::path>& cache_dir = {},
                       bool write_cache = false, const ProgressFn& progress = {});

/// Cache file name for a table of the given size.
std::string table_file_name(Exponent Dmax, Exponent dmax);

/// f_d = q^-d + sum_{0 < D <= Dmax} A(D, d) q^D, valid below q^(Dmax + 1).
PlusForm assemble_f(const TablePair& tables, Exponent d, Exponent Dmax);

}  // namespace tsm::basis
