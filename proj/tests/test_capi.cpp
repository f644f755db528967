// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>

#include "tsm/tsm.h"

namespace {

struct Ctx {
  tsm_context* p = nullptr;
  explicit Ctx(const tsm_config* c = nullptr) { REQUIRE(tsm_context_create(c, &p) == TSM_OK); }
  ~Ctx() { tsm_context_destroy(p); }
};

std::string take(char* s) {
  std::string out = s ? s : "";
  tsm_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("configuration") {
  tsm_config c;
  tsm_config_default(&c);
  CHECK(c.Dmax_wide == 864);
  CHECK(c.dmax_deep == 7500);
  tsm_context* p = nullptr;
  c.Dmax_deep = c.Dmax_wide + 1;
  CHECK(tsm_context_create(&c, &p) == TSM_ERR_USAGE);
  CHECK(p == nullptr);
  CHECK(tsm_context_create(nullptr, nullptr) == TSM_ERR_USAGE);
}

TEST_CASE("coefficients") {
  Ctx ctx;
  char *a = nullptr, *b = nullptr;
  REQUIRE(tsm_coeff(ctx.p, 1, 1, 3, &a, &b) == TSM_OK);
  CHECK(take(a) == "-248");
  CHECK(take(b) == "248");
  REQUIRE(tsm_coeff(ctx.p, 1, 5, 3, &a, &b) == TSM_OK);
  CHECK(take(a) == "-85995");
  CHECK(take(b) == "85995");
  REQUIRE(tsm_coeff(ctx.p, 2, 1, 3, &a, &b) == TSM_OK);
  CHECK(take(b) == "-53256");
  take(a);
}

TEST_CASE("errors carry a status and a message") {
  Ctx ctx;
  char *a = nullptr, *b = nullptr;
  CHECK(tsm_coeff(ctx.p, 1, 2, 3, &a, &b) == TSM_ERR_NOT_PLUS_SUPPORT);
  CHECK(std::string(tsm_last_error(ctx.p)).find("(2,3)") != std::string::npos);
  CHECK(std::string(tsm_status_tag(TSM_ERR_NOT_PLUS_SUPPORT)) == "not-in-plus-support");
  CHECK(tsm_coeff(ctx.p, 1, 1, 3, nullptr, &b) == TSM_ERR_USAGE);
  CHECK(tsm_coeff(nullptr, 1, 1, 3, &a, &b) == TSM_ERR_USAGE);
  CHECK(tsm_coeff(ctx.p, 2, 16, 16, &a, &b) == TSM_ERR_FORMULA_INAPPLICABLE);
  char* out = nullptr;
  CHECK(tsm_basis(ctx.p, 'x', 1, 10, TSM_FORMAT_TEXT, &out) == TSM_ERR_USAGE);
  int passed = 0;
  CHECK(tsm_verify(ctx.p, "", nullptr, TSM_FORMAT_TEXT, 0, &out, &passed) == TSM_ERR_USAGE);
  CHECK(tsm_table_build(ctx.p, 8, 8, &out, &out) == TSM_ERR_USAGE);
  // A successful call clears the previous message.
  REQUIRE(tsm_coeff(ctx.p, 1, 1, 3, &a, &b) == TSM_OK);
  CHECK(std::string(tsm_last_error(ctx.p)).empty());
  take(a);
  take(b);
}

TEST_CASE("expansions and traces") {
  Ctx ctx;
  char* out = nullptr;
  REQUIRE(tsm_basis(ctx.p, 'g', 1, 9, TSM_FORMAT_TEXT, &out) == TSM_OK);
  CHECK(take(out) == "g_1 = q^-1 - 2 + 248*q^3 - 492*q^4 + 4119*q^7 - 7256*q^8 + O(q^9)\n");
  REQUIRE(tsm_basis(ctx.p, 'f', 0, 6, TSM_FORMAT_CSV, &out) == TSM_OK);
  CHECK(take(out) == "n,coefficient\n0,1\n1,2\n4,2\n");
  REQUIRE(tsm_trace(ctx.p, 3, 1, &out) == TSM_OK);
  CHECK(take(out) == "-248");
  REQUIRE(tsm_trace(ctx.p, 3, 5, &out) == TSM_OK);
  CHECK(take(out) == "-85995");
}

TEST_CASE("verification without tables") {
  Ctx ctx;
  char* out = nullptr;
  int passed = 0;
  REQUIRE(tsm_verify(ctx.p, "construction", nullptr, TSM_FORMAT_JSON, 0, &out, &passed) == TSM_OK);
  CHECK(passed == 1);
  CHECK(take(out).find("\"pass\":true") != std::string::npos);
  CHECK(tsm_verify(ctx.p, "bogus", nullptr, TSM_FORMAT_TEXT, 0, &out, &passed) == TSM_ERR_USAGE);
}
