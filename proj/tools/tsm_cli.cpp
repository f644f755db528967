// SPDX-License-Identifier: Apache-2.0
// Command-line front end over the C interface.

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tsm/tsm.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitError = 2;

struct Failure {
  std::string tag;
  std::string message;
};

void report(const Failure& f) { std::cerr << "tsm:error:" << f.tag << ": " << f.message << "\n"; }

struct Owned {
  char* p = nullptr;
  ~Owned() { tsm_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

struct ContextDeleter {
  void operator()(tsm_context* c) const { tsm_context_destroy(c); }
};
using Context = std::unique_ptr<tsm_context, ContextDeleter>;

void check(tsm_context* ctx, tsm_status s) {
  if (s != TSM_OK) throw Failure{tsm_status_tag(s), tsm_last_error(ctx)};
}

void progress(const char* msg, void*) { std::cerr << "tsm:progress: " << msg << "\n"; }

tsm_format parse_format(const std::string& s) {
  if (s == "json") return TSM_FORMAT_JSON;
  if (s == "csv") return TSM_FORMAT_CSV;
  return TSM_FORMAT_TEXT;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Traces of singular moduli: tables, coefficients, traces and verification suites"};
  app.require_subcommand(1);

  tsm_config config;
  tsm_config_default(&config);
  std::string cache_dir;
  std::string format = "text";
  bool quiet = false;
  app.add_option("--Dmax-wide", config.Dmax_wide, "Largest D of the wide table")->check(CLI::PositiveNumber);
  app.add_option("--dmax-wide", config.dmax_wide, "Largest d of the wide table")->check(CLI::NonNegativeNumber);
  app.add_option("--Dmax-deep", config.Dmax_deep, "Largest D of the deep table")->check(CLI::PositiveNumber);
  app.add_option("--dmax-deep", config.dmax_deep, "Largest d of the deep table")->check(CLI::NonNegativeNumber);
  app.add_option("--oracle-bits", config.oracle_guard_bits, "Guard bits for oracle evaluation");
  app.add_option("--tolerance-log2", config.tolerance_log2, "Rounding tolerance exponent")
      ->check(CLI::PositiveNumber);
  app.add_option("--cache-dir", cache_dir, "Table cache directory (default: $TSM_CACHE_DIR)");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_flag("--quiet", quiet, "Suppress progress messages");

  auto* build = app.add_subcommand("build", "Build tables and write them to the cache");
  std::optional<std::int64_t> build_Dmax, build_dmax;
  bool build_deep = false;
  build->add_option("--Dmax", build_Dmax, "Largest D")->check(CLI::PositiveNumber);
  build->add_option("--dmax", build_dmax, "Largest d")->check(CLI::NonNegativeNumber);
  build->add_flag("--deep", build_deep, "Take unspecified sizes from the deep table");

  auto* coeff = app.add_subcommand("coeff", "Print A(D, d) and B(D, d), or A_m and B_m");
  std::int64_t cD = 0, cd = 0, cm = 1;
  coeff->add_option("--D", cD, "Index D")->required();
  coeff->add_option("--d", cd, "Index d")->required();
  coeff->add_option("--m", cm, "Hecke index m")->check(CLI::PositiveNumber);

  auto* basis = app.add_subcommand("basis", "Print the q-expansion of g_D or f_d");
  std::optional<std::int64_t> g_index, f_index;
  std::int64_t prec = 20;
  auto* g_opt = basis->add_option("--g", g_index, "Index D of g_D");
  auto* f_opt = basis->add_option("--f", f_index, "Index d of f_d");
  g_opt->excludes(f_opt);
  basis->add_option("--prec", prec, "Expansion is exact below q^prec")->check(CLI::PositiveNumber);

  auto* trace = app.add_subcommand("trace", "Print the trace of j - 744 over discriminant -d");
  std::int64_t td = 0, twist = 1;
  trace->add_option("--d", td, "Discriminant magnitude d")->required();
  trace->add_option("--twist", twist, "Fundamental D > 1 for the twisted trace divided by sqrt(D)");

  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  std::string suite = "all";
  std::vector<std::int64_t> primes;
  std::uint32_t nmax = 0;
  std::int64_t mmax = 0;
  bool verbose = false;
  verify->add_option("suite", suite, "Suite name, or all");
  verify->add_option("--p", primes, "Primes for the prime-indexed grids");
  verify->add_option("--nmax", nmax, "Largest n in the prime-power grids");
  verify->add_option("--mmax", mmax, "Largest Hecke index m");
  verify->add_flag("--verbose", verbose, "List passing rows too");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report({"usage", e.what()});
    return kExitError;
  }

  if (cache_dir.empty()) {
    if (const char* env = std::getenv("TSM_CACHE_DIR")) cache_dir = env;
  }
  config.cache_dir = cache_dir.empty() ? nullptr : cache_dir.c_str();
  if (!quiet) config.progress = progress;
  const tsm_format fmt = parse_format(format);

  tsm_context* raw = nullptr;
  if (const tsm_status s = tsm_context_create(&config, &raw); s != TSM_OK) {
    report({tsm_status_tag(s), "invalid configuration (sizes must be positive, deep Dmax <= wide Dmax, "
                               "deep dmax >= wide dmax)"});
    return kExitError;
  }
  Context ctx(raw);

  try {
    if (*build) {
      if (cache_dir.empty()) throw Failure{"usage", "build needs --cache-dir or TSM_CACHE_DIR"};
      if (!build_Dmax && !build_dmax && !build_deep) {
        const std::pair<std::int64_t, std::int64_t> sizes[] = {{config.Dmax_wide, config.dmax_wide},
                                                               {config.Dmax_deep, config.dmax_deep}};
        nlohmann::json files = nlohmann::json::array();
        for (const auto& [D, d] : sizes) {
          Owned file, sum;
          check(ctx.get(), tsm_table_build(ctx.get(), D, d, &file.p, &sum.p));
          files.push_back({{"file", file.str()}, {"Dmax", D}, {"dmax", d}, {"checksum", sum.str()}});
        }
        check(ctx.get(), tsm_build(ctx.get(), 0));
        if (fmt == TSM_FORMAT_JSON) {
          std::cout << files.dump() << "\n";
        } else {
          if (fmt == TSM_FORMAT_CSV) std::cout << "file,Dmax,dmax,checksum\n";
          for (const auto& f : files)
            std::cout << f["file"].get<std::string>() << (fmt == TSM_FORMAT_CSV ? "," : " ") << f["Dmax"]
                      << (fmt == TSM_FORMAT_CSV ? "," : "x") << f["dmax"] << (fmt == TSM_FORMAT_CSV ? "," : " ")
                      << f["checksum"].get<std::string>() << "\n";
        }
      } else {
        const std::int64_t D = build_Dmax.value_or(build_deep ? config.Dmax_deep : config.Dmax_wide);
        const std::int64_t d = build_dmax.value_or(build_deep ? config.dmax_deep : config.dmax_wide);
        Owned file, sum;
        check(ctx.get(), tsm_table_build(ctx.get(), D, d, &file.p, &sum.p));
        if (fmt == TSM_FORMAT_JSON) {
          std::cout << nlohmann::json{{"file", file.str()}, {"Dmax", D}, {"dmax", d}, {"checksum", sum.str()}}.dump()
                    << "\n";
        } else if (fmt == TSM_FORMAT_CSV) {
          std::cout << "file,Dmax,dmax,checksum\n" << file.str() << "," << D << "," << d << "," << sum.str() << "\n";
        } else {
          std::cout << file.str() << " " << D << "x" << d << " " << sum.str() << "\n";
        }
      }
    } else if (*coeff) {
      Owned A, B;
      check(ctx.get(), tsm_coeff(ctx.get(), cm, cD, cd, &A.p, &B.p));
      const std::string suffix = cm == 1 ? "" : "_" + std::to_string(cm);
      if (fmt == TSM_FORMAT_JSON) {
        std::cout << nlohmann::json{{"m", cm}, {"D", cD}, {"d", cd}, {"A", A.str()}, {"B", B.str()}}.dump() << "\n";
      } else if (fmt == TSM_FORMAT_CSV) {
        std::cout << "m,D,d,A,B\n" << cm << "," << cD << "," << cd << "," << A.str() << "," << B.str() << "\n";
      } else {
        std::cout << "A" << suffix << "=" << A.str() << "\nB" << suffix << "=" << B.str() << "\n";
      }
    } else if (*basis) {
      if (!g_index && !f_index) throw Failure{"usage", "basis needs --g D or --f d"};
      Owned out;
      check(ctx.get(), tsm_basis(ctx.get(), g_index ? 'g' : 'f', g_index ? *g_index : *f_index, prec, fmt, &out.p));
      std::cout << out.str();
    } else if (*trace) {
      Owned out;
      check(ctx.get(), tsm_trace(ctx.get(), td, twist, &out.p));
      if (fmt == TSM_FORMAT_JSON) {
        std::cout << nlohmann::json{{"d", td}, {"twist", twist}, {"trace", out.str()}}.dump() << "\n";
      } else if (fmt == TSM_FORMAT_CSV) {
        std::cout << "d,twist,trace\n" << td << "," << twist << "," << out.str() << "\n";
      } else {
        std::cout << out.str() << "\n";
      }
    } else if (*verify) {
      tsm_verify_options opt{primes.data(), static_cast<std::uint32_t>(primes.size()), nmax, mmax};
      Owned out;
      int passed = 0;
      check(ctx.get(), tsm_verify(ctx.get(), suite.c_str(), &opt, fmt, verbose ? 1 : 0, &out.p, &passed));
      std::cout << out.str();
      return passed ? kExitOk : kExitVerifyFailed;
    }
  } catch (const Failure& f) {
    report(f);
    return kExitError;
  }
  return kExitOk;
}
