// SPDX-License-Identifier: Apache-2.0
#include "tsm/tsm.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <new>
#include <optional>
#include <sstream>
#include <string>

#include "json.hpp"

#include "tsm/basis.hpp"
#include "tsm/errors.hpp"
#include "tsm/hecke.hpp"
#include "tsm/oracle.hpp"
#include "tsm/verify.hpp"

using namespace tsm;

struct tsm_context {
  tsm_config config{};
  std::optional<std::filesystem::path> cache_dir;
  std::optional<basis::TablePair> tables;
  std::string last_error;
};

namespace {

tsm_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUsage: return TSM_ERR_USAGE;
    case ErrorCode::kPrecision: return TSM_ERR_PRECISION;
    case ErrorCode::kNonUnit: return TSM_ERR_NON_UNIT;
    case ErrorCode::kFractionalShift: return TSM_ERR_FRACTIONAL_SHIFT;
    case ErrorCode::kNotPlusSupport: return TSM_ERR_NOT_PLUS_SUPPORT;
    case ErrorCode::kFormulaInapplicable: return TSM_ERR_FORMULA_INAPPLICABLE;
    case ErrorCode::kInsufficientTable: return TSM_ERR_INSUFFICIENT_TABLE;
    case ErrorCode::kConstruction: return TSM_ERR_CONSTRUCTION;
    case ErrorCode::kChecksum: return TSM_ERR_CHECKSUM;
    case ErrorCode::kIo: return TSM_ERR_IO;
  }
  return TSM_ERR_INTERNAL;
}

template <class F>
tsm_status guard(tsm_context* ctx, F&& body) {
  if (!ctx) return TSM_ERR_USAGE;
  ctx->last_error.clear();
  try {
    body();
    return TSM_OK;
  } catch (const Error& e) {
    ctx->last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    ctx->last_error = "out of memory";
  } catch (const std::exception& e) {
    ctx->last_error = e.what();
  } catch (...) {
    ctx->last_error = "unknown failure";
  }
  return TSM_ERR_INTERNAL;
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require_out(const void* p, const char* name) {
  if (!p) fail(ErrorCode::kUsage, std::string("null output pointer ") + name);
}

basis::ProgressFn progress_of(const tsm_context* ctx) {
  if (!ctx->config.progress) return {};
  const auto fn = ctx->config.progress;
  void* user = ctx->config.progress_user;
  return [fn, user](const std::string& msg) { fn(msg.c_str(), user); };
}

basis::TableSizes sizes_of(const tsm_config& c) {
  return {c.Dmax_wide, c.dmax_wide, c.Dmax_deep, c.dmax_deep};
}

oracle::OracleOptions oracle_of(const tsm_config& c) {
  oracle::OracleOptions opt;
  opt.guard_bits = c.oracle_guard_bits;
  opt.tolerance_log2 = c.tolerance_log2;
  return opt;
}

const basis::TablePair& ensure_tables(tsm_context* ctx, bool write_cache) {
  if (!ctx->tables) ctx->tables = basis::build_tables(sizes_of(ctx->config), ctx->cache_dir, write_cache, progress_of(ctx));
  return *ctx->tables;
}

bool cached(const tsm_context* ctx) {
  if (ctx->tables) return true;
  if (!ctx->cache_dir) return false;
  const auto& c = ctx->config;
  return std::filesystem::exists(*ctx->cache_dir / basis::table_file_name(c.Dmax_wide, c.dmax_wide)) &&
         std::filesystem::exists(*ctx->cache_dir / basis::table_file_name(c.Dmax_deep, c.dmax_deep));
}

// The configured tables when available without a build, else a single table
// covering D <= Dmax, d <= dmax.
basis::TablePair tables_for(tsm_context* ctx, Exponent Dmax, Exponent dmax) {
  if (cached(ctx)) {
    const auto& t = ensure_tables(ctx, false);
    const auto holds = [&](const basis::CoeffTable& c) { return c.Dmax() >= Dmax && c.dmax() >= dmax; };
    if (holds(t.wide()) || holds(t.deep())) return t;
  }
  return basis::TablePair(basis::CoeffTable::build(Dmax, dmax, progress_of(ctx)), basis::CoeffTable());
}

Integer B_m(std::int64_t m, std::int64_t D, std::int64_t d, const basis::TablePair& t) {
  if (hecke::is_fundamental(-d)) return hecke::hecke_B(m, D, d, t);
  if (hecke::is_fundamental(D)) return -hecke::hecke_A(m, D, d, t);
  fail(ErrorCode::kFormulaInapplicable,
       "B_m(" + std::to_string(D) + "," + std::to_string(d) + ") needs D or -d fundamental");
}

std::string render_series(char kind, std::int64_t index, const PlusForm& f, tsm_format format) {
  const auto& s = f.series;
  if (format == TSM_FORMAT_TEXT) {
    const std::size_t all = static_cast<std::size_t>(s.prec() - s.lead());
    return std::string(1, kind) + "_" + std::to_string(index) + " = " + to_string(s, all) + "\n";
  }
  if (format == TSM_FORMAT_CSV) {
    std::ostringstream out;
    out << "n,coefficient\n";
    for (Exponent n = s.lead(); n < s.prec(); ++n)
      if (sgn(s.coeff(n)) != 0) out << n << "," << s.coeff(n).get_str() << "\n";
    return out.str();
  }
  nlohmann::json coeffs = nlohmann::json::array();
  for (Exponent n = s.lead(); n < s.prec(); ++n)
    if (sgn(s.coeff(n)) != 0) coeffs.push_back({n, s.coeff(n).get_str()});
  nlohmann::json j = {{"kind", std::string(1, kind)},
                      {"index", index},
                      {"twice_weight", f.twice_weight},
                      {"prec", s.prec()},
                      {"coefficients", std::move(coeffs)}};
  return j.dump() + "\n";
}

bool needs_tables(const std::vector<std::string>& suites) {
  return std::any_of(suites.begin(), suites.end(),
                     [](const std::string& s) { return s != "construction" && s != "structure"; });
}

void apply(verify::SuiteConfig& cfg, const tsm_verify_options& o) {
  if (o.prime_count > 0) {
    if (!o.primes) fail(ErrorCode::kUsage, "prime list is null");
    std::vector<std::int64_t> primes(o.primes, o.primes + o.prime_count);
    for (const auto p : primes)
      if (p < 2 || hecke::divisors(p).size() != 2) fail(ErrorCode::kUsage, std::to_string(p) + " is not prime");
    cfg.congruences.prime_grid.primes = primes;
    cfg.xx_grid.primes = primes;
    cfg.congruences.ao_primes = primes;
    cfg.congruences.small_primes = primes;
    std::vector<verify::Thm2Case> kept;
    for (const auto& c : cfg.thm2)
      if (std::find(primes.begin(), primes.end(), c.p) != primes.end()) kept.push_back(c);
    cfg.thm2 = kept;
  }
  if (o.nmax > 0) {
    cfg.congruences.prime_grid.nmax = o.nmax;
    cfg.xx_grid.nmax = o.nmax;
  }
  if (o.mmax > 0) {
    cfg.congruences.prime_grid.mmax = o.mmax;
    cfg.congruences.ao_mmax = o.mmax;
    cfg.hecke_mmax = o.mmax;
  }
}

std::string render_reports(const std::vector<CheckReport>& reports, tsm_format format, bool verbose) {
  const bool all_pass = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.passed(); });
  if (format == TSM_FORMAT_JSON) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : reports) arr.push_back(r.to_json());
    return nlohmann::json{{"reports", std::move(arr)}, {"pass", all_pass}}.dump() + "\n";
  }
  std::ostringstream out;
  if (format == TSM_FORMAT_CSV) {
    out << "suite,params,observed,required,pass,observational\n";
    for (const auto& r : reports)
      for (const auto& c : r.cases())
        out << r.name() << ",\"" << c.params << "\"," << c.observed << ",\"" << c.required << "\","
            << (c.pass ? 1 : 0) << "," << (c.observational ? 1 : 0) << "\n";
    return out.str();
  }
  for (const auto& r : reports) out << r.to_text(verbose);
  return out.str();
}

}  // namespace

extern "C" {

TSM_EXPORT void tsm_config_default(tsm_config* config) {
  if (!config) return;
  const basis::TableSizes sizes;
  const oracle::OracleOptions opt;
  *config = tsm_config{};
  config->Dmax_wide = sizes.Dmax_wide;
  config->dmax_wide = sizes.dmax_wide;
  config->Dmax_deep = sizes.Dmax_deep;
  config->dmax_deep = sizes.dmax_deep;
  config->oracle_guard_bits = opt.guard_bits;
  config->tolerance_log2 = opt.tolerance_log2;
}

TSM_EXPORT tsm_status tsm_context_create(const tsm_config* config, tsm_context** out) {
  if (!out) return TSM_ERR_USAGE;
  *out = nullptr;
  tsm_config c;
  tsm_config_default(&c);
  if (config) c = *config;
  if (c.Dmax_wide < 1 || c.dmax_wide < 0 || c.Dmax_deep < 1 || c.dmax_deep < 0 ||
      c.Dmax_deep > c.Dmax_wide || c.dmax_deep < c.dmax_wide || c.tolerance_log2 == 0)
    return TSM_ERR_USAGE;
  try {
    auto* ctx = new tsm_context;
    ctx->config = c;
    if (c.cache_dir && *c.cache_dir) ctx->cache_dir = std::filesystem::path(c.cache_dir);
    ctx->config.cache_dir = nullptr;
    *out = ctx;
  } catch (...) {
    return TSM_ERR_INTERNAL;
  }
  return TSM_OK;
}

TSM_EXPORT void tsm_context_destroy(tsm_context* ctx) { delete ctx; }

TSM_EXPORT const char* tsm_last_error(const tsm_context* ctx) { return ctx ? ctx->last_error.c_str() : ""; }

TSM_EXPORT const char* tsm_status_tag(tsm_status status) {
  switch (status) {
    case TSM_OK: return "ok";
    case TSM_ERR_USAGE: return error_tag(ErrorCode::kUsage).data();
    case TSM_ERR_PRECISION: return error_tag(ErrorCode::kPrecision).data();
    case TSM_ERR_NON_UNIT: return error_tag(ErrorCode::kNonUnit).data();
    case TSM_ERR_FRACTIONAL_SHIFT: return error_tag(ErrorCode::kFractionalShift).data();
    case TSM_ERR_NOT_PLUS_SUPPORT: return error_tag(ErrorCode::kNotPlusSupport).data();
    case TSM_ERR_FORMULA_INAPPLICABLE: return error_tag(ErrorCode::kFormulaInapplicable).data();
    case TSM_ERR_INSUFFICIENT_TABLE: return error_tag(ErrorCode::kInsufficientTable).data();
    case TSM_ERR_CONSTRUCTION: return error_tag(ErrorCode::kConstruction).data();
    case TSM_ERR_CHECKSUM: return error_tag(ErrorCode::kChecksum).data();
    case TSM_ERR_IO: return error_tag(ErrorCode::kIo).data();
    case TSM_ERR_INTERNAL: return "internal";
  }
  return "internal";
}

TSM_EXPORT void tsm_string_free(char* s) { std::free(s); }

TSM_EXPORT tsm_status tsm_build(tsm_context* ctx, int write_cache) {
  return guard(ctx, [&] {
    if (write_cache && !ctx->cache_dir) fail(ErrorCode::kUsage, "no cache directory configured");
    ensure_tables(ctx, write_cache != 0);
  });
}

TSM_EXPORT tsm_status tsm_table_build(tsm_context* ctx, int64_t Dmax, int64_t dmax, char** file, char** checksum) {
  return guard(ctx, [&] {
    require_out(file, "file");
    require_out(checksum, "checksum");
    if (!ctx->cache_dir) fail(ErrorCode::kUsage, "no cache directory configured");
    if (Dmax < 1 || dmax < 0) fail(ErrorCode::kUsage, "table sizes must be positive");
    const auto path = *ctx->cache_dir / basis::table_file_name(Dmax, dmax);
    basis::CoeffTable table;
    if (std::filesystem::exists(path)) {
      table = basis::CoeffTable::load(path);
    } else {
      table = basis::CoeffTable::build(Dmax, dmax, progress_of(ctx));
      std::filesystem::create_directories(*ctx->cache_dir);
      table.save(path);
    }
    *file = dup(path.string());
    *checksum = dup(table.checksum());
  });
}

TSM_EXPORT tsm_status tsm_table_export(tsm_context* ctx, int which, tsm_format format, char** out) {
  return guard(ctx, [&] {
    require_out(out, "out");
    if (which != 0 && which != 1) fail(ErrorCode::kUsage, "table selector must be 0 or 1");
    if (format == TSM_FORMAT_TEXT) fail(ErrorCode::kUsage, "tables export as json or csv");
    const auto& t = ensure_tables(ctx, false);
    const auto& table = which == 0 ? t.wide() : t.deep();
    *out = dup(format == TSM_FORMAT_JSON ? table.to_json() : table.to_csv());
  });
}

TSM_EXPORT tsm_status tsm_coeff(tsm_context* ctx, int64_t m, int64_t D, int64_t d, char** A, char** B) {
  return guard(ctx, [&] {
    require_out(A, "A");
    require_out(B, "B");
    if (m < 1) fail(ErrorCode::kUsage, "m must be positive");
    if (!basis::admissible_D(D) || !basis::admissible_d(d))
      fail(ErrorCode::kNotPlusSupport, "(" + std::to_string(D) + "," + std::to_string(d) + ") is not an admissible index pair");
    const auto t = tables_for(ctx, m * m * D, m * m * d);
    Integer a, b;
    if (m == 1) {
      b = t.B(D, d);
      a = -b;
    } else {
      a = hecke::A_m(m, D, d, t);
      b = B_m(m, D, d, t);
    }
    *A = dup(a.get_str());
    *B = dup(b.get_str());
  });
}

TSM_EXPORT tsm_status tsm_basis(tsm_context* ctx, char kind, int64_t index, int64_t prec, tsm_format format,
                                char** out) {
  return guard(ctx, [&] {
    require_out(out, "out");
    if (prec < 1) fail(ErrorCode::kUsage, "prec must be positive");
    if (kind == 'g') {
      if (!basis::admissible_D(index)) fail(ErrorCode::kUsage, "g_D needs D >= 1 with D = 0, 1 mod 4");
      const auto cols = basis::extend_basis(index, prec, progress_of(ctx));
      const auto it = std::find_if(cols.begin(), cols.end(), [&](const auto& c) { return c.D == index; });
      *out = dup(render_series('g', index, it->form, format));
    } else if (kind == 'f') {
      if (!basis::admissible_d(index)) fail(ErrorCode::kUsage, "f_d needs d >= 0 with d = 0, 3 mod 4");
      const Exponent Dmax = std::max<Exponent>(prec - 1, 1);
      const auto t = tables_for(ctx, Dmax, index);
      *out = dup(render_series('f', index, basis::assemble_f(t, index, Dmax), format));
    } else {
      fail(ErrorCode::kUsage, "basis kind must be 'g' or 'f'");
    }
  });
}

TSM_EXPORT tsm_status tsm_trace(tsm_context* ctx, int64_t d, int64_t twist, char** out) {
  return guard(ctx, [&] {
    require_out(out, "out");
    const auto opt = oracle_of(ctx->config);
    if (twist <= 1) {
      *out = dup(oracle::trace_untwisted(d, opt).get_str());
    } else {
      *out = dup(oracle::trace_twisted(twist, d, opt).n.get_str());
    }
  });
}

TSM_EXPORT tsm_status tsm_verify(tsm_context* ctx, const char* suite, const tsm_verify_options* options,
                                 tsm_format format, int verbose, char** out, int* passed) {
  return guard(ctx, [&] {
    require_out(out, "out");
    require_out(passed, "passed");
    verify::SuiteConfig cfg;
    cfg.oracle = oracle_of(ctx->config);
    if (!suite || !*suite) fail(ErrorCode::kUsage, "no suite selected");
    if (std::string(suite) == "all") {
      cfg.suites = verify::all_suites();
    } else {
      cfg.suites = {suite};
    }
    const auto& known = verify::all_suites();
    for (const auto& name : cfg.suites)
      if (std::find(known.begin(), known.end(), name) == known.end()) fail(ErrorCode::kUsage, "unknown suite " + name);
    if (options) apply(cfg, *options);
    static const basis::TablePair empty;
    const auto& t = needs_tables(cfg.suites) ? ensure_tables(ctx, false) : empty;
    const auto reports = verify::run_suite(cfg, t);
    *passed = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.passed(); }) ? 1 : 0;
    *out = dup(render_reports(reports, format, verbose != 0));
  });
}

}  // extern "C"
