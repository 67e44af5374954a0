/*
 * apfree - certification of progression-free balanced digit sets over Z_m.
 *
 * C interface to the apfree core.  All objects are opaque handles; every
 * fallible call returns an apf_status and reports details through
 * apf_last_error().  Strings returned as char* are owned by the caller and
 * must be released with apf_string_free().
 */

#ifndef APFREE_H
#define APFREE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define APFREE_API __declspec(dllexport)
#else
#define APFREE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum apf_status {
    APF_OK = 0,
    APF_ERR_INVALID_ARGUMENT = 1,
    APF_ERR_PRECONDITION = 2,
    APF_ERR_CAP_EXCEEDED = 3,
    APF_ERR_IO = 4,
    APF_ERR_INTERNAL = 5
} apf_status;

typedef struct apf_digit_set apf_digit_set;
typedef struct apf_check_result apf_check_result;
typedef struct apf_search_report apf_search_report;

APFREE_API const char* apf_version(void);

/* Thread-local message describing the most recent failure in this thread. */
APFREE_API const char* apf_last_error(void);

APFREE_API void apf_string_free(char* s);

/* ---- digit sets ------------------------------------------------------- */

APFREE_API apf_status apf_digit_set_new(uint32_t modulus, const uint32_t* digits,
                                        size_t count, apf_digit_set** out);

/* Spec grammar: comma-separated residues or a:b ranges, e.g. "0:5,8". */
APFREE_API apf_status apf_digit_set_parse(uint32_t modulus, const char* spec,
                                          apf_digit_set** out);

/* The named construction families: "kodd" (needs k), "keven" (needs k),
 * "conjecture" (k ignored). */
APFREE_API apf_status apf_digit_set_construct(const char* family, uint32_t m,
                                              uint32_t k, apf_digit_set** out);

APFREE_API void apf_digit_set_free(apf_digit_set* ds);

APFREE_API uint32_t apf_digit_set_modulus(const apf_digit_set* ds);
APFREE_API size_t apf_digit_set_size(const apf_digit_set* ds);
/* Copies the digits into `out` (capacity `cap`); returns the set size. */
APFREE_API size_t apf_digit_set_digits(const apf_digit_set* ds, uint32_t* out, size_t cap);
APFREE_API char* apf_digit_set_spec(const apf_digit_set* ds);

/* ---- admissibility ----------------------------------------------------- */

enum {
    APF_METHOD_AUTO = 0,   /* reduce with A, then rref(A), then exact LP */
    APF_METHOD_REDUCE = 1, /* reduction only; stuck => undetermined */
    APF_METHOD_LP = 2
};

enum {
    APF_INITIAL_DEFAULT = 0, /* A then rref(A) */
    APF_INITIAL_A = 1,
    APF_INITIAL_RREF = 2,
    APF_INITIAL_CUSTOM = 3 /* custom_t holds the matrix text for T */
};

enum { APF_SCHEME_FIRST_TO_ALL = 0, APF_SCHEME_ALL_PAIRS = 1 };

typedef struct apf_check_options {
    int method;           /* APF_METHOD_* */
    int initial;          /* APF_INITIAL_* */
    const char* custom_t; /* matrix text (rows of space-separated rationals) */
    int minimize_witness; /* 0/1 */
    int pair_scheme;      /* APF_SCHEME_* */
} apf_check_options;

APFREE_API void apf_check_options_init(apf_check_options* opts);

APFREE_API apf_status apf_check_run(const apf_digit_set* ds, uint32_t k,
                                    const apf_check_options* opts,
                                    apf_check_result** out);

enum {
    APF_VERDICT_ADMISSIBLE = 0,
    APF_VERDICT_NOT_ADMISSIBLE = 1,
    APF_VERDICT_UNDETERMINED = 2
};

APFREE_API int apf_check_verdict(const apf_check_result* r);
APFREE_API char* apf_check_report_json(const apf_check_result* r);
/* Reduction trace in its line-oriented text form; NULL for LP certificates. */
APFREE_API char* apf_check_trace_text(const apf_check_result* r);
/* Witness JSON ({"digits":...,"m":...,"k":...,"x":{...},"n":...,"vectors":...});
 * NULL unless the verdict is not-admissible. */
APFREE_API char* apf_check_witness_json(const apf_check_result* r, int include_vectors);
APFREE_API void apf_check_result_free(apf_check_result* r);

/* Constraint-matrix dump: one row per line, exact entries, single spaces. */
APFREE_API char* apf_matrix_dump(const apf_digit_set* ds, uint32_t k, int pair_scheme,
                                 apf_status* status);

/* ---- search ------------------------------------------------------------ */

typedef struct apf_search_options {
    uint32_t jobs;
    double budget_seconds; /* 0 = unlimited */
    const char* cache_path;
    int allow_composite;
} apf_search_options;

APFREE_API void apf_search_options_init(apf_search_options* opts);

APFREE_API apf_status apf_search_run(uint32_t p, uint32_t k,
                                     const apf_search_options* opts,
                                     apf_search_report** out);

APFREE_API uint32_t apf_search_max_size(const apf_search_report* r);
APFREE_API int apf_search_complete(const apf_search_report* r);
APFREE_API char* apf_search_report_json(const apf_search_report* r);
APFREE_API void apf_search_report_free(apf_search_report* r);

/* Runs the search and diffs the outcome against one row of the expected
 * table; returns {"pass":...,"diffs":[...],"report":{...}}. */
APFREE_API char* apf_table_verify_json(uint32_t p, uint32_t k,
                                       const char* expected_csv_path,
                                       const apf_search_options* opts,
                                       apf_status* status);

/* Expected-table rows available for a (p, k) grid, as JSON:
 * [{"p":...,"k":...,"size":...,"lower_bound_only":...,...}, ...]. */
APFREE_API char* apf_table_expectations_json(const char* expected_csv_path,
                                             apf_status* status);

/* Compiled-in default location of the bundled expected table. */
APFREE_API const char* apf_default_expected_table_path(void);

/* ---- bounds ------------------------------------------------------------ */

APFREE_API char* apf_bound_report_json(uint32_t m, uint32_t k, uint64_t n,
                                       apf_status* status);
APFREE_API char* apf_bound_report_text(uint32_t m, uint32_t k, uint64_t n,
                                       apf_status* status);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* APFREE_H */
