#ifndef SJD_H
#define SJD_H

/* C interface to libsjd. Strings returned through char** are owned by the
   caller and released with sjd_string_free. */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
    SJD_OK = 0,
    SJD_INVALID_ARGUMENT = 1,
    SJD_DOMAIN = 2,
    SJD_SINGULAR = 3,
    SJD_SCHEMA = 4,
    SJD_CHECK_FAILED = 5,
    SJD_IO = 6,
    SJD_INTERNAL = 7
} sjd_status;

typedef struct sjd_context sjd_context;
typedef struct sjd_report sjd_report;

sjd_status sjd_context_create(sjd_context** out);
void sjd_context_destroy(sjd_context* ctx);

sjd_status sjd_set_params(sjd_context* ctx, int n, double m, double k);
sjd_status sjd_set_seed(sjd_context* ctx, uint64_t seed);
/* 0 restores the per-suite default */
sjd_status sjd_set_samples(sjd_context* ctx, size_t samples);
/* <= 0 restores the built-in tolerances */
sjd_status sjd_set_tol(sjd_context* ctx, double tol);
sjd_status sjd_set_truncation(sjd_context* ctx, int degree);
/* include a UTC "timestamp" field in report JSON (default on) */
sjd_status sjd_set_timestamp(sjd_context* ctx, int enabled);

/* Runs a suite ("all" for every suite). Returns SJD_OK when the suite ran,
   whatever its outcome; query sjd_report_passed for the verdict. */
sjd_status sjd_verify(sjd_context* ctx, const char* suite, sjd_report** out);
int sjd_report_passed(const sjd_report* r);
sjd_status sjd_report_json(const sjd_report* r, char** out);
void sjd_report_destroy(sjd_report* r);

/* Evaluates a named object on a JSON argument object; result is JSON. */
sjd_status sjd_eval(sjd_context* ctx, const char* object, const char* args_json, char** out);
/* format: "csv" or "json" */
sjd_status sjd_table(sjd_context* ctx, const char* kind, const char* format, char** out);

void sjd_string_free(char* s);
/* message of the last failure on this thread; never NULL */
const char* sjd_last_error(void);
const char* sjd_version(void);
const char* sjd_status_string(sjd_status s);

#ifdef __cplusplus
}
#endif

#endif
