// SPDX-License-Identifier: Apache-2.0
#ifndef TSM_TSM_H
#define TSM_TSM_H

/* C interface to the traces-of-singular-moduli toolkit. Every call returns a
 * tsm_status; on failure the context keeps a message readable through
 * tsm_last_error. Strings returned through char** outputs are owned by the
 * caller and released with tsm_string_free. */

#include <stdint.h>

#ifndef TSM_EXPORT
#define TSM_EXPORT __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tsm_status {
  TSM_OK = 0,
  TSM_ERR_USAGE = 1,
  TSM_ERR_PRECISION = 2,
  TSM_ERR_NON_UNIT = 3,
  TSM_ERR_FRACTIONAL_SHIFT = 4,
  TSM_ERR_NOT_PLUS_SUPPORT = 5,
  TSM_ERR_FORMULA_INAPPLICABLE = 6,
  TSM_ERR_INSUFFICIENT_TABLE = 7,
  TSM_ERR_CONSTRUCTION = 8,
  TSM_ERR_CHECKSUM = 9,
  TSM_ERR_IO = 10,
  TSM_ERR_INTERNAL = 11
} tsm_status;

typedef enum tsm_format { TSM_FORMAT_TEXT = 0, TSM_FORMAT_JSON = 1, TSM_FORMAT_CSV = 2 } tsm_format;

typedef void (*tsm_progress_fn)(const char* message, void* user);

typedef struct tsm_config {
  int64_t Dmax_wide;
  int64_t dmax_wide;
  int64_t Dmax_deep;
  int64_t dmax_deep;
  /* Guard bits added to the oracle's working precision. */
  uint32_t oracle_guard_bits;
  /* Rounding tolerance is 2^-tolerance_log2. */
  uint32_t tolerance_log2;
  /* Directory of cached tables, or NULL. */
  const char* cache_dir;
  tsm_progress_fn progress;
  void* progress_user;
} tsm_config;

/* Grid overrides for tsm_verify. Zero or empty fields keep the defaults. */
typedef struct tsm_verify_options {
  const int64_t* primes;
  uint32_t prime_count;
  uint32_t nmax;
  int64_t mmax;
} tsm_verify_options;

typedef struct tsm_context tsm_context;

TSM_EXPORT void tsm_config_default(tsm_config* config);

TSM_EXPORT tsm_status tsm_context_create(const tsm_config* config, tsm_context** out);
TSM_EXPORT void tsm_context_destroy(tsm_context* ctx);

/* Message of the last failed call on ctx; empty if none. */
TSM_EXPORT const char* tsm_last_error(const tsm_context* ctx);
/* Short machine-readable tag, e.g. "insufficient-table". */
TSM_EXPORT const char* tsm_status_tag(tsm_status status);

TSM_EXPORT void tsm_string_free(char* s);

/* Builds both tables (or loads them from the cache) and writes them to the
 * cache directory when one is configured. */
TSM_EXPORT tsm_status tsm_build(tsm_context* ctx, int write_cache);

/* Builds the single table B(D, d), D <= Dmax, d <= dmax, and saves it to the
 * cache directory; an existing cache file is loaded and validated instead.
 * Returns the file path and the content checksum. */
TSM_EXPORT tsm_status tsm_table_build(tsm_context* ctx, int64_t Dmax, int64_t dmax, char** file, char** checksum);

/* Serializes one table: which = 0 for the wide table, 1 for the deep one.
 * JSON and CSV only. */
TSM_EXPORT tsm_status tsm_table_export(tsm_context* ctx, int which, tsm_format format, char** out);

/* A_m(D, d) and B_m(D, d) as decimal strings; m = 1 gives A and B. Uses the
 * configured tables when cached or already built, otherwise builds a table
 * just large enough. */
TSM_EXPORT tsm_status tsm_coeff(tsm_context* ctx, int64_t m, int64_t D, int64_t d, char** A, char** B);

/* q-expansion of g_D (kind 'g') or f_d (kind 'f') below q^prec. */
TSM_EXPORT tsm_status tsm_basis(tsm_context* ctx, char kind, int64_t index, int64_t prec,
                                tsm_format format, char** out);

/* Untwisted trace of j - 744 over discriminant -d when twist <= 1, otherwise
 * the twisted trace divided by sqrt(twist), rounded. */
TSM_EXPORT tsm_status tsm_trace(tsm_context* ctx, int64_t d, int64_t twist, char** out);

/* Runs the named suite ("all" for every suite). *passed is 1 if every hard
 * assertion held. */
TSM_EXPORT tsm_status tsm_verify(tsm_context* ctx, const char* suite, const tsm_verify_options* options,
                                 tsm_format format, int verbose, char** out, int* passed);

#ifdef __cplusplus
}
#endif

#endif /* TSM_TSM_H */
