// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>

#include "tsm/basis.hpp"
#include "tsm/classical.hpp"
#include "tsm/jacobi.hpp"

using namespace tsm;
using namespace tsm::basis;

namespace {

const std::vector<BasisColumn>& small_basis() {
  static const auto cols = extend_basis(64, 120);
  return cols;
}

const BasisColumn& column(Exponent D) {
  for (const auto& c : small_basis())
    if (c.D == D) return c;
  FAIL("missing column");
  throw;
}

bool is_square(Exponent n) {
  const auto r = static_cast<Exponent>(std::llround(std::sqrt(static_cast<double>(n))));
  return r * r == n;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::kUsage;
}

std::filesystem::path temp_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("tsm-test-" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("basis columns satisfy the defining normalization") {
  std::size_t count = 0;
  for (const auto& col : small_basis()) {
    ++count;
    const auto& s = col.form.series;
    CHECK(admissible_D(col.D));
    CHECK(s.lead() == -col.D);
    CHECK(s[-col.D] == 1);
    for (Exponent e = -col.D + 1; e < 0; ++e) CHECK(s[e] == 0);
    CHECK(s.prec() == 120);
    CHECK(col.form.plus_support_violations() == 0);
  }
  CHECK(count == 32);
  CHECK(column(8).form.series.lead() == -8);
}

TEST_CASE("recursion agrees with the seed constructions") {
  CHECK(column(1).form.series == classical::g1_eta(120));
  const auto seeds = jacobi::eliminate_seed_forms(120);
  CHECK(column(5).form.series == seeds.g5_check.series);
  CHECK(column(4).form.series == seeds.g4.series);
}

TEST_CASE("frozen coefficients") {
  const auto& g4 = column(4).form.series;
  CHECK(g4[3] == -26752);
  CHECK(g4[4] == -143376);
  CHECK(g4[7] == -8288256);
  const auto& g5 = column(5).form.series;
  CHECK(g5[3] == 85995);
  CHECK(g5[4] == -565760);
  CHECK(g5[7] == 52756480);
  const auto& g1 = column(1).form.series;
  const Integer expected[] = {248, -492, 4119, -7256, 33512, -53008, 192513, -287244};
  const Exponent at[] = {3, 4, 7, 8, 11, 12, 15, 16};
  for (int i = 0; i < 8; ++i) CHECK(g1[at[i]] == expected[i]);
}

TEST_CASE("constant terms follow theta") {
  for (const auto& col : small_basis()) {
    INFO("D = " << col.D);
    CHECK(col.form.series[0] == (is_square(col.D) ? -2 : 0));
  }
}

TEST_CASE("elimination order does not change g_D") {
  for (const auto& col : small_basis()) {
    if (col.D < 9) continue;
    INFO("D = " << col.D);
    const auto other = rebuild_via_square(small_basis(), col.D);
    CHECK(other.series.prec() >= 100);
    CHECK(other.series == col.form.series.truncated(other.series.prec()));
  }
  CHECK(code_of([] { (void)rebuild_via_square(small_basis(), 6); }) == ErrorCode::kUsage);
}

TEST_CASE("table queries") {
  const auto wide = CoeffTable::from_basis(small_basis(), 40);
  const auto deep = CoeffTable::build(8, 200);
  CHECK(check_overlap(wide, deep) > 0);
  const TablePair tables(wide, deep);
  CHECK(tables.B(1, 3) == 248);
  CHECK(tables.A(1, 3) == -248);
  CHECK(tables.A(4, 0) == 2);
  CHECK(tables.A(5, 0) == 0);
  CHECK(tables.B(4, 0) == -2);
  CHECK(tables.B(5, 23) == wide.B(5, 23));
  CHECK(tables.B(5, 23) == deep.B(5, 23));
  CHECK(tables.B(1, 199) == classical::g1_eta(200)[199]);
  CHECK(tables.B(60, 40) == column(60).form.series[40]);

  CHECK(code_of([&] { (void)tables.B(9, 100); }) == ErrorCode::kInsufficientTable);
  CHECK(code_of([&] { (void)tables.B(65, 0); }) == ErrorCode::kInsufficientTable);
  CHECK(code_of([&] { (void)tables.B(2, 3); }) == ErrorCode::kNotPlusSupport);
  CHECK(code_of([&] { (void)tables.B(1, 1); }) == ErrorCode::kNotPlusSupport);
  CHECK(code_of([&] { (void)wide.B(1, 44); }) == ErrorCode::kInsufficientTable);

  auto bad = deep;
  bad.set(5, 23, bad.B(5, 23) + 1);
  CHECK(code_of([&] { TablePair broken(wide, bad); }) == ErrorCode::kConstruction);
}

TEST_CASE("assembled f_d") {
  const TablePair tables(CoeffTable::from_basis(small_basis(), 40), CoeffTable::build(4, 100));
  const auto f0 = assemble_f(tables, 0, 64);
  CHECK(f0.twice_weight == 1);
  CHECK(f0.series == classical::theta(65));

  const auto f3 = assemble_f(tables, 3, 4);
  CHECK(f3.series.lead() == -3);
  CHECK(f3.series[-3] == 1);
  CHECK(f3.series[1] == -248);
  CHECK(f3.series[4] == 26752);
  CHECK(f3.series.prec() == 5);

  for (Exponent d : {3, 4, 7, 8, 11}) {
    const auto f = assemble_f(tables, d, 64);
    CHECK(f.plus_support_violations() == 0);
    CHECK(f.series[0] == 0);
  }
  CHECK(code_of([&] { (void)assemble_f(tables, 3, 65); }) == ErrorCode::kInsufficientTable);
  CHECK(code_of([&] { (void)assemble_f(tables, 5, 10); }) == ErrorCode::kNotPlusSupport);
}

TEST_CASE("table persistence") {
  const auto table = CoeffTable::build(12, 60);
  const auto dir = temp_dir("basis");
  const auto file = dir / table_file_name(12, 60);
  table.save(file);
  CHECK(CoeffTable::load(file) == table);
  CHECK(table.checksum().size() == 64);

  const auto csv = table.to_csv();
  CHECK(csv.rfind("D,d,B\n1,0,-2\n1,3,248\n", 0) == 0);

  // Flip one digit of one stored value.
  std::string text = table.to_json();
  const auto pos = text.find("\"85995\"");
  REQUIRE(pos != std::string::npos);
  text[pos + 1] = '7';
  CHECK(code_of([&] { (void)CoeffTable::from_json(text); }) == ErrorCode::kChecksum);
  CHECK(code_of([] { (void)CoeffTable::from_json("{not json"); }) == ErrorCode::kIo);
  CHECK(code_of([] { (void)CoeffTable::from_json(R"({"meta":{"Dmax":4,"dmax":3,"version":2,"checksum":""},"B":[]})"); }) ==
        ErrorCode::kIo);

  // Cache round trip through build_tables.
  const TableSizes sizes{16, 20, 8, 80};
  const auto built = build_tables(sizes, dir, true);
  CHECK(std::filesystem::exists(dir / table_file_name(16, 20)));
  CHECK(std::filesystem::exists(dir / table_file_name(8, 80)));
  const auto loaded = build_tables(sizes, dir, false);
  CHECK(loaded.wide() == built.wide());
  CHECK(loaded.deep() == built.deep());
  CHECK(code_of([&] { (void)build_tables({8, 20, 16, 80}); }) == ErrorCode::kUsage);
  std::filesystem::remove_all(dir);
}
