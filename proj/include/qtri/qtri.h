/* C interface to the q-series identity verification engine.
 *
 * Every fallible call returns a qtri_status; on failure qtri_last_error()
 * describes the problem for the calling thread. Handles are opaque and owned
 * by the caller, who releases them with the matching *_free function. Strings
 * returned by accessors stay valid as long as the handle they came from. */
#ifndef QTRI_QTRI_H
#define QTRI_QTRI_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define QTRI_API __declspec(dllexport)
#else
#define QTRI_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qtri_status {
  QTRI_OK = 0,
  QTRI_ERR_INVALID_ARGUMENT = 1,
  QTRI_ERR_UNKNOWN_ID = 2,
  QTRI_ERR_SCHEMA = 3,
  QTRI_ERR_NOT_DIVISIBLE = 4,
  QTRI_ERR_TRUNCATION = 5,
  QTRI_ERR_INTERNAL = 6,
  QTRI_ERR_NULL_ARGUMENT = 7
} qtri_status;

typedef enum qtri_kind { QTRI_KIND_POLYNOMIAL = 0, QTRI_KIND_SERIES = 1, QTRI_KIND_CHECK = 2 } qtri_kind;
typedef enum qtri_side { QTRI_LHS = 0, QTRI_RHS = 1 } qtri_side;
typedef enum qtri_variant { QTRI_FIRST = 0, QTRI_SECOND = 1 } qtri_variant;
typedef enum qtri_limit {
  QTRI_LIMIT_FIRST_PAIR = 0,
  QTRI_LIMIT_SECOND_PAIR = 1,
  QTRI_LIMIT_THIRD_PAIR = 2,
  QTRI_LIMIT_BINOM = 3,
  QTRI_LIMIT_BINOM2 = 4
} qtri_limit;

typedef struct qtri_instance qtri_instance;
typedef struct qtri_report qtri_report;
typedef struct qtri_series qtri_series;
typedef struct qtri_alpha qtri_alpha;

QTRI_API const char* qtri_version(void);
/* Message for the last failing call on this thread; "" if none. */
QTRI_API const char* qtri_last_error(void);
QTRI_API const char* qtri_status_name(qtri_status status);

/* ---- identity catalog ---- */
QTRI_API size_t qtri_catalog_size(void);
QTRI_API const char* qtri_catalog_id(size_t index);
QTRI_API const char* qtri_catalog_summary(size_t index);
QTRI_API qtri_kind qtri_catalog_kind(size_t index);
QTRI_API size_t qtri_catalog_param_count(size_t index);
/* has_default is set to 1 when the parameter may be omitted. */
QTRI_API qtri_status qtri_catalog_param(size_t index, size_t k, const char** name, int64_t* min, int64_t* max,
                                        int* has_default, int64_t* default_value);

/* ---- instances ---- */
QTRI_API qtri_status qtri_instance_new(const char* id, qtri_instance** out);
QTRI_API void qtri_instance_free(qtri_instance* instance);
QTRI_API qtri_status qtri_instance_set_param(qtri_instance* instance, const char* name, int64_t value);
/* Cutoff in units of q^(1/2). */
QTRI_API qtri_status qtri_instance_set_cutoff(qtri_instance* instance, int64_t halves);
/* Fills defaults and checks the schema and cutoff rule in place. */
QTRI_API qtri_status qtri_instance_validate(qtri_instance* instance);

/* ---- verification ---- */
QTRI_API qtri_status qtri_verify(const qtri_instance* instance, qtri_report** out);

/* Called in input order; the report is only valid during the call. */
typedef void (*qtri_report_fn)(size_t index, const qtri_report* report, void* user);
/* Validates every instance first; runs on `jobs` threads (0 = default).
 * Computation errors become failing reports rather than a failing status. */
QTRI_API qtri_status qtri_verify_batch(const qtri_instance* const* instances, size_t count, unsigned jobs,
                                       qtri_report_fn fn, void* user);
/* QTRI_JOBS if set, else the hardware thread count. */
QTRI_API unsigned qtri_default_jobs(void);

QTRI_API void qtri_report_free(qtri_report* report);
QTRI_API int qtri_report_match(const qtri_report* report);
QTRI_API const char* qtri_report_id(const qtri_report* report);
QTRI_API size_t qtri_report_param_count(const qtri_report* report);
QTRI_API qtri_status qtri_report_param(const qtri_report* report, size_t k, const char** name, int64_t* value);
/* 1 and the cutoff in halves when the instance was truncated, else 0. */
QTRI_API int qtri_report_cutoff(const qtri_report* report, int64_t* halves);
/* 1 with the lowest differing exponent and both coefficients as decimal
 * strings, else 0. */
QTRI_API int qtri_report_mismatch(const qtri_report* report, int64_t* exponent_halves, const char** lhs,
                                  const char** rhs);
/* Error text when the instance failed with an error, else NULL. */
QTRI_API const char* qtri_report_error(const qtri_report* report);
QTRI_API int64_t qtri_report_elapsed_ms(const qtri_report* report);

/* ---- series ---- */
QTRI_API qtri_status qtri_compute_side(const qtri_instance* instance, qtri_side side, qtri_series** out);
/* coeff * q^(halves/2); coeff is a decimal string. */
QTRI_API qtri_status qtri_series_monomial(int64_t halves, const char* coeff, qtri_series** out);
QTRI_API void qtri_series_free(qtri_series* series);
QTRI_API size_t qtri_series_term_count(const qtri_series* series);
QTRI_API qtri_status qtri_series_term(const qtri_series* series, size_t k, int64_t* exponent_halves,
                                      const char** coeff);
QTRI_API int qtri_series_cutoff(const qtri_series* series, int64_t* halves);
QTRI_API const char* qtri_series_to_string(const qtri_series* series);

/* ---- partitions ---- */
QTRI_API qtri_status qtri_partition_counts(qtri_variant variant, int64_t n, uint64_t* congruence,
                                           uint64_t* difference);
/* Coefficients of q^0..q^n_max as a truncated series. */
QTRI_API qtri_status qtri_product_coefficients(qtri_variant variant, int64_t n_max, qtri_series** out);
/* which is "kr1", "cap2" or "outlook2". */
QTRI_API qtri_status qtri_doublesum_coefficients(const char* which, int64_t n_max, qtri_series** out);

/* ---- composite checks ---- */
QTRI_API qtri_status qtri_verify_lemma31(int n, int t_cutoff, int64_t q_cutoff_halves, qtri_report** out);
/* stable_from receives the first stable index or -1. */
QTRI_API qtri_status qtri_verify_limit(qtri_limit target, int64_t window_halves, int64_t index, int64_t nu,
                                       qtri_report** out, int64_t* stable_from);

QTRI_API qtri_status qtri_alpha_new(qtri_alpha** out);
/* alpha(j) = q^((3j^2 + linear j)/2) for lo <= j <= hi. */
QTRI_API qtri_status qtri_alpha_quadratic(int64_t linear, int64_t lo, int64_t hi, qtri_alpha** out);
QTRI_API qtri_status qtri_alpha_set(qtri_alpha* alpha, int64_t a, const qtri_series* value);
QTRI_API void qtri_alpha_free(qtri_alpha* alpha);
/* kind is -1, 0 or 1; step in halves (2 for base q, 6 for base q^3). */
QTRI_API qtri_status qtri_apply_bailey(int kind, const qtri_alpha* alpha, int64_t L, int64_t step_halves,
                                       qtri_report** out);

/* ---- acceptance battery ---- */
QTRI_API size_t qtri_suite_family_count(void);
QTRI_API const char* qtri_suite_family_name(size_t index);
/* summary is one line; failures lists failing checks, one per line, or "". */
typedef void (*qtri_suite_fn)(const char* family, int ok, size_t passed, size_t total, int64_t elapsed_ms,
                              const char* summary, const char* failures, void* user);
/* Runs one family, or all when family is NULL. all_ok may be NULL. */
QTRI_API qtri_status qtri_suite_run(const char* family, unsigned jobs, qtri_suite_fn fn, void* user, int* all_ok);

#ifdef __cplusplus
}
#endif

#endif /* QTRI_QTRI_H */
