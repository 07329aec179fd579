#ifndef TORSIONKIT_H
#define TORSIONKIT_H

/* C interface to torsionkit. All handles are opaque and owned by the caller
 * once returned; release them with the matching *_free function. Strings
 * returned through char** are released with tk_string_free.
 *
 * Every function returning tk_status records a message retrievable with
 * tk_last_error() on the calling thread when the status is not TK_OK. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(TORSIONKIT_BUILDING)
#    define TK_API __declspec(dllexport)
#  else
#    define TK_API __declspec(dllimport)
#  endif
#else
#  define TK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tk_status {
  TK_OK = 0,
  TK_ERR_NULL_ARGUMENT = 1,
  TK_ERR_DIMENSION_MISMATCH = 2,
  TK_ERR_DEGREE = 3,
  TK_ERR_INVARIANT_VIOLATION = 4,
  TK_ERR_DEGENERATE_DIMENSION = 5,
  TK_ERR_PARSE = 6,
  TK_ERR_SCHEMA = 7,
  TK_ERR_NOT_LIE_STRUCTURE = 8,
  TK_ERR_INVALID_ALGEBRA = 9,
  TK_ERR_UNSUPPORTED_SIGNATURE = 10,
  TK_ERR_PRECONDITION = 11,
  TK_ERR_INTERNAL_CONSISTENCY = 12,
  TK_ERR_UNKNOWN_GENERATOR = 13,
  TK_ERR_OUT_OF_RANGE = 14,
  TK_ERR_INTERNAL = 15
} tk_status;

typedef enum tk_verdict { TK_PASS = 0, TK_FAIL = 1, TK_DIAGNOSTIC = 2 } tk_verdict;

typedef struct tk_form tk_form;
typedef struct tk_torsion tk_torsion;
typedef struct tk_algebra tk_algebra;
typedef struct tk_report tk_report;

typedef struct tk_options {
  double tol;        /* negative selects the command default */
  uint64_t seed;
  double scale;      /* tau scale for verify-warped */
  int t_samples;     /* at least 2 */
} tk_options;

TK_API const char* tk_version(void);
TK_API const char* tk_status_string(tk_status status);
/* Message of the last failing call on this thread; empty if none. */
TK_API const char* tk_last_error(void);
TK_API tk_options tk_options_default(void);

/* Parsers take JSON text. name labels the input in reports; NULL means "-". */
TK_API tk_status tk_form_parse(const char* text, size_t len, const char* name, tk_form** out);
/* Like tk_form_parse, also accepting {"tau": FormFile}; requires degree 3. */
TK_API tk_status tk_tau_parse(const char* text, size_t len, const char* name, tk_form** out);
TK_API int tk_form_dim(const tk_form* form);
TK_API int tk_form_degree(const tk_form* form);
TK_API tk_status tk_form_to_json(const tk_form* form, char** out);
TK_API void tk_form_free(tk_form* form);

TK_API tk_status tk_torsion_parse(const char* text, size_t len, const char* name, tk_torsion** out);
TK_API int tk_torsion_dim(const tk_torsion* torsion);
TK_API void tk_torsion_free(tk_torsion* torsion);

TK_API tk_status tk_algebra_parse(const char* text, size_t len, const char* name, tk_algebra** out);
/* su2, su3, so4 or soN:k. */
TK_API tk_status tk_algebra_builtin(const char* generator, tk_algebra** out);
TK_API int tk_algebra_dim(const tk_algebra* algebra);
TK_API tk_status tk_algebra_to_json(const tk_algebra* algebra, char** out);
TK_API void tk_algebra_free(tk_algebra* algebra);

/* Analyses. A mathematical precondition failure inside an analysis still
 * yields TK_OK and a report with verdict TK_DIAGNOSTIC carrying the error.
 * options may be NULL for defaults. */
TK_API tk_status tk_decompose(const tk_torsion* torsion, const tk_options* options, tk_report** out);
TK_API tk_status tk_check_jacobi(const tk_form* tau, const tk_options* options, tk_report** out);
TK_API tk_status tk_classify(const tk_form* tau, const tk_options* options, tk_report** out);
TK_API tk_status tk_verify_warped(const tk_algebra* base, const tk_options* options, tk_report** out);

TK_API tk_verdict tk_report_verdict(const tk_report* report);
/* format is "json" or "text". */
TK_API tk_status tk_report_render(const tk_report* report, const char* format, char** out);
TK_API void tk_report_free(tk_report* report);

/* kind: type2, type4, canonical, volume or algebra. */
TK_API tk_status tk_example_json(const char* kind, const char* generator, char** out);

TK_API void tk_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif
