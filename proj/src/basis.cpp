// SPDX-License-Identifier: Apache-2.0
#include "tsm/basis.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "json.hpp"
#include "tsm/classical.hpp"
#include "tsm/jacobi.hpp"

namespace tsm::basis {

namespace {

Exponent mod4(Exponent x) { return ((x % 4) + 4) % 4; }

// g_4 as a rational combination of the weight 2 Jacobi generators.
jacobi::SeedCombination g4_combination() {
  static const jacobi::SeedCombination combo = jacobi::eliminate_seed_forms(24).g4_combo;
  return combo;
}

void report(const ProgressFn& progress, const std::string& msg) {
  if (progress) progress(msg);
}

// Clears every q^-D' with 0 < D' < top from `series` using the columns in
// `by_D`, scanning from the most negative exponent upwards. Each column has
// principal part q^-D' alone, so one pass suffices.
void eliminate_principal_part(ZSeries& series, Exponent top,
                              const std::map<Exponent, const PlusForm*>& by_D) {
  for (Exponent e = std::max(series.lead(), -top + 1); e < 0; ++e) {
    const Integer c = series.coeff(e);
    if (sgn(c) == 0) continue;
    const auto it = by_D.find(-e);
    if (it == by_D.end())
      fail(ErrorCode::kConstruction,
           "no basis column to clear q^" + std::to_string(e) + " while building g_" +
               std::to_string(top));
    series.add_scaled(Integer(-c), it->second->series);
  }
  if (series.lead() < -top || sgn(series.coeff(-top) - 1) != 0)
    fail(ErrorCode::kConstruction, "g_" + std::to_string(top) + " has the wrong leading term");
  for (Exponent e = -top + 1; e < 0; ++e)
    if (sgn(series.coeff(e)) != 0)
      fail(ErrorCode::kConstruction, "residual pole q^" + std::to_string(e) + " in g_" +
                                         std::to_string(top));
}

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    fail(ErrorCode::kIo, "SHA-256 failed");
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i)
    out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  return out.str();
}

}  // namespace

bool admissible_D(Exponent D) noexcept { return D >= 1 && (mod4(D) == 0 || mod4(D) == 1); }
bool admissible_d(Exponent d) noexcept { return d >= 0 && (mod4(d) == 0 || mod4(d) == 3); }

std::vector<BasisColumn> extend_basis(Exponent Dmax, Exponent prec, const ProgressFn& progress) {
  if (Dmax < 1) fail(ErrorCode::kUsage, "extend_basis: Dmax must be >= 1");
  if (prec < 1) fail(ErrorCode::kUsage, "extend_basis: prec must be >= 1");
  // g_D is carried to prec + (Dmax - D): each multiplication by j(4 tau)
  // costs four slots of precision.
  const auto working = [&](Exponent D) { return prec + (Dmax - D); };

  std::vector<BasisColumn> columns;
  std::map<Exponent, std::size_t> index;
  const auto add = [&](Exponent D, ZSeries s) {
    index[D] = columns.size();
    columns.push_back({D, PlusForm{3, std::move(s)}});
  };

  report(progress, "seeds at precision " + std::to_string(working(1)));
  add(1, classical::g1_eta(working(1)));
  if (Dmax >= 4) {
    auto g4 = jacobi::evaluate_combination(g4_combination(), working(4));
    add(4, std::move(g4.series));
  }
  const ZSeries j4 = Dmax >= 5 ? classical::j4(prec + Dmax) : ZSeries();

  for (Exponent D = 5; D <= Dmax; ++D) {
    if (!admissible_D(D)) continue;
    const Exponent w = working(D);
    const auto& prev = columns[index.at(D - 4)].form.series;
    ZSeries next = mul(prev, j4, w);
    if (next.prec() < w)
      fail(ErrorCode::kConstruction, "precision loss while building g_" + std::to_string(D));

    std::map<Exponent, const PlusForm*> by_D;
    for (const auto& col : columns) by_D[col.D] = &col.form;
    eliminate_principal_part(next, D, by_D);
    add(D, std::move(next));

    // Columns at or below D - 4 are no longer multiplied; keep only what
    // later eliminations can read.
    for (auto& col : columns)
      if (col.D <= D - 4) col.form.series.truncate(w);
    if (D % 64 == 0 || D == Dmax) report(progress, "built g_" + std::to_string(D));
  }
  for (auto& col : columns) col.form.series.truncate(prec);
  return columns;
}

PlusForm rebuild_via_square(const std::vector<BasisColumn>& basis, Exponent D) {
  if (!admissible_D(D) || D < 9) fail(ErrorCode::kUsage, "rebuild_via_square needs admissible D >= 9");
  std::map<Exponent, const PlusForm*> by_D;
  for (const auto& col : basis)
    if (col.D < D) by_D[col.D] = &col.form;
  const auto base = by_D.find(D - 8);
  if (base == by_D.end()) fail(ErrorCode::kUsage, "rebuild_via_square: g_(D-8) missing");
  const Exponent p = base->second->series.prec();
  const auto j4 = classical::j4(p + D);
  const auto j4sq = mul(j4, j4);
  ZSeries series = mul(base->second->series, j4sq);
  eliminate_principal_part(series, D, by_D);
  return {3, std::move(series)};
}

CoeffTable::CoeffTable(Exponent Dmax, Exponent dmax) : Dmax_(Dmax), dmax_(dmax) {
  if (Dmax < 1 || dmax < 0) fail(ErrorCode::kUsage, "table sizes must be positive");
  values_.resize(static_cast<std::size_t>(Dmax) * static_cast<std::size_t>(dmax + 1));
}

std::size_t CoeffTable::slot(Exponent D, Exponent d) const {
  if (!admissible_D(D) || !admissible_d(d))
    fail(ErrorCode::kNotPlusSupport,
         "B(" + std::to_string(D) + "," + std::to_string(d) + ") is outside the plus support");
  if (!covers(D, d))
    fail(ErrorCode::kInsufficientTable,
         "B(" + std::to_string(D) + "," + std::to_string(d) + ") is outside the table (Dmax=" +
             std::to_string(Dmax_) + ", dmax=" + std::to_string(dmax_) + ")");
  return static_cast<std::size_t>(D - 1) * static_cast<std::size_t>(dmax_ + 1) +
         static_cast<std::size_t>(d);
}

const Integer& CoeffTable::B(Exponent D, Exponent d) const { return values_[slot(D, d)]; }

void CoeffTable::set(Exponent D, Exponent d, Integer value) { values_[slot(D, d)] = std::move(value); }

CoeffTable CoeffTable::from_basis(const std::vector<BasisColumn>& basis, Exponent dmax) {
  Exponent Dmax = 0;
  for (const auto& col : basis) Dmax = std::max(Dmax, col.D);
  CoeffTable table(Dmax, dmax);
  for (const auto& col : basis) {
    if (col.prec() <= dmax)
      fail(ErrorCode::kInsufficientTable, "column g_" + std::to_string(col.D) + " is too short");
    for (Exponent d = 0; d <= dmax; ++d)
      if (admissible_d(d)) table.set(col.D, d, col.form.series.coeff(d));
  }
  for (Exponent D = 1; D <= Dmax; ++D)
    if (admissible_D(D) && std::none_of(basis.begin(), basis.end(),
                                        [D](const BasisColumn& c) { return c.D == D; }))
      fail(ErrorCode::kConstruction, "missing column g_" + std::to_string(D));
  return table;
}

CoeffTable CoeffTable::build(Exponent Dmax, Exponent dmax, const ProgressFn& progress) {
  return from_basis(extend_basis(Dmax, dmax + 1, progress), dmax);
}

std::string CoeffTable::checksum() const {
  std::string listing;
  for (Exponent D = 1; D <= Dmax_; ++D) {
    if (!admissible_D(D)) continue;
    for (Exponent d = 0; d <= dmax_; ++d) {
      if (!admissible_d(d)) continue;
      listing += std::to_string(D);
      listing += ',';
      listing += std::to_string(d);
      listing += ',';
      listing += B(D, d).get_str();
      listing += '\n';
    }
  }
  return sha256_hex(listing);
}

std::string CoeffTable::to_json() const {
  nlohmann::json entries = nlohmann::json::array();
  for (Exponent D = 1; D <= Dmax_; ++D) {
    if (!admissible_D(D)) continue;
    for (Exponent d = 0; d <= dmax_; ++d)
      if (admissible_d(d)) entries.push_back({D, d, B(D, d).get_str()});
  }
  nlohmann::json doc;
  doc["meta"] = {{"Dmax", Dmax_}, {"dmax", dmax_}, {"version", 1}, {"checksum", checksum()}};
  doc["B"] = std::move(entries);
  return doc.dump();
}

std::string CoeffTable::to_csv() const {
  std::string out = "D,d,B\n";
  for (Exponent D = 1; D <= Dmax_; ++D) {
    if (!admissible_D(D)) continue;
    for (Exponent d = 0; d <= dmax_; ++d) {
      if (!admissible_d(d)) continue;
      out += std::to_string(D) + "," + std::to_string(d) + "," + B(D, d).get_str() + "\n";
    }
  }
  return out;
}

CoeffTable CoeffTable::from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kIo, std::string("table file is not valid JSON: ") + e.what());
  }
  try {
    const auto& meta = doc.at("meta");
    if (meta.at("version").get<int>() != 1) fail(ErrorCode::kIo, "unsupported table version");
    CoeffTable table(meta.at("Dmax").get<Exponent>(), meta.at("dmax").get<Exponent>());
    std::size_t count = 0;
    for (const auto& entry : doc.at("B")) {
      Integer v;
      if (v.set_str(entry.at(2).get<std::string>(), 10) != 0)
        fail(ErrorCode::kIo, "bad decimal in table entry");
      table.set(entry.at(0).get<Exponent>(), entry.at(1).get<Exponent>(), std::move(v));
      ++count;
    }
    std::size_t expected = 0;
    for (Exponent D = 1; D <= table.Dmax_; ++D)
      for (Exponent d = 0; d <= table.dmax_; ++d)
        if (admissible_D(D) && admissible_d(d)) ++expected;
    if (count != expected) fail(ErrorCode::kIo, "table file has the wrong number of entries");
    if (table.checksum() != meta.at("checksum").get<std::string>())
      fail(ErrorCode::kChecksum, "table checksum mismatch");
    return table;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kIo, std::string("malformed table file: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kChecksum) throw;
    fail(ErrorCode::kIo, std::string("malformed table file: ") + e.what());
  }
}

void CoeffTable::save(const std::filesystem::path& file) const {
  std::error_code ec;
  if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path(), ec);
  const auto tmp = file.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) fail(ErrorCode::kIo, "cannot write " + tmp);
    out << to_json();
    if (!out) fail(ErrorCode::kIo, "write failed for " + tmp);
  }
  std::filesystem::rename(tmp, file, ec);
  if (ec) fail(ErrorCode::kIo, "cannot rename " + tmp + ": " + ec.message());
}

CoeffTable CoeffTable::load(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) fail(ErrorCode::kIo, "cannot read " + file.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str());
}

std::size_t check_overlap(const CoeffTable& a, const CoeffTable& b) {
  std::size_t cells = 0;
  const Exponent Dtop = std::min(a.Dmax(), b.Dmax());
  const Exponent dtop = std::min(a.dmax(), b.dmax());
  for (Exponent D = 1; D <= Dtop; ++D) {
    if (!admissible_D(D)) continue;
    for (Exponent d = 0; d <= dtop; ++d) {
      if (!admissible_d(d)) continue;
      if (a.B(D, d) != b.B(D, d))
        fail(ErrorCode::kConstruction,
             "tables disagree at B(" + std::to_string(D) + "," + std::to_string(d) + ")");
      ++cells;
    }
  }
  return cells;
}

TablePair::TablePair(CoeffTable wide, CoeffTable deep) : wide_(std::move(wide)), deep_(std::move(deep)) {
  check_overlap(wide_, deep_);
}

const Integer& TablePair::B(Exponent D, Exponent d) const {
  if (!admissible_D(D) || !admissible_d(d))
    fail(ErrorCode::kNotPlusSupport,
         "B(" + std::to_string(D) + "," + std::to_string(d) + ") is outside the plus support");
  if (wide_.covers(D, d)) return wide_.B(D, d);
  if (deep_.covers(D, d)) return deep_.B(D, d);
  fail(ErrorCode::kInsufficientTable,
       "B(" + std::to_string(D) + "," + std::to_string(d) + ") is outside both tables");
}

std::string table_file_name(Exponent Dmax, Exponent dmax) {
  return "B-" + std::to_string(Dmax) + "x" + std::to_string(dmax) + ".json";
}

namespace {

CoeffTable obtain(Exponent Dmax, Exponent dmax, const std::optional<std::filesystem::path>& cache_dir,
                  bool write_cache, const ProgressFn& progress) {
  if (cache_dir) {
    const auto file = *cache_dir / table_file_name(Dmax, dmax);
    if (std::filesystem::exists(file)) {
      report(progress, "loading " + file.string());
      auto table = CoeffTable::load(file);
      if (table.Dmax() != Dmax || table.dmax() != dmax)
        fail(ErrorCode::kIo, "cached table " + file.string() + " has the wrong size");
      return table;
    }
  }
  report(progress, "building table Dmax=" + std::to_string(Dmax) + " dmax=" + std::to_string(dmax));
  auto table = CoeffTable::build(Dmax, dmax, progress);
  if (cache_dir && write_cache) {
    const auto file = *cache_dir / table_file_name(Dmax, dmax);
    report(progress, "writing " + file.string());
    table.save(file);
  }
  return table;
}

}  // namespace

TablePair build_tables(const TableSizes& sizes, const std::optional<std::filesystem::path>& cache_dir,
                       bool write_cache, const ProgressFn& progress) {
  if (sizes.Dmax_deep > sizes.Dmax_wide || sizes.dmax_deep < sizes.dmax_wide)
    fail(ErrorCode::kUsage, "deep table must have Dmax <= wide Dmax and dmax >= wide dmax");
  auto deep = obtain(sizes.Dmax_deep, sizes.dmax_deep, cache_dir, write_cache, progress);
  auto wide = obtain(sizes.Dmax_wide, sizes.dmax_wide, cache_dir, write_cache, progress);
  return TablePair(std::move(wide), std::move(deep));
}

PlusForm assemble_f(const TablePair& tables, Exponent d, Exponent Dmax) {
  if (!admissible_d(d)) fail(ErrorCode::kNotPlusSupport, "f_d needs d = 0, 3 mod 4");
  if (Dmax < 1) fail(ErrorCode::kUsage, "assemble_f: Dmax must be >= 1");
  const Exponent lead = -d;
  std::vector<Integer> v(static_cast<std::size_t>(Dmax + 1 - lead));
  v[0] += 1;
  for (Exponent D = 1; D <= Dmax; ++D)
    if (admissible_D(D)) v[static_cast<std::size_t>(D - lead)] += tables.A(D, d);
  return {1, ZSeries(lead, std::move(v), Dmax + 1)};
}

}  // namespace tsm::basis
