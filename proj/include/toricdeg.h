/* toricdeg — C API for the toric degeneration workbench.
 *
 * All functions are thread-compatible: distinct workbenches may be used from
 * distinct threads; a single workbench must not be shared without external
 * locking (it stores the last error message).
 *
 * Strings returned through out-parameters are heap-allocated and owned by the
 * caller; release them with td_free_string.  UTF-8 throughout.
 */
#ifndef TORICDEG_H
#define TORICDEG_H

#if defined(_WIN32)
#  define TD_API __declspec(dllexport)
#elif defined(__GNUC__)
#  define TD_API __attribute__((visibility("default")))
#else
#  define TD_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes.  Mirrors the command-line tool's exit codes. */
typedef enum td_status {
    TD_OK = 0,        /* command ran, verdict "pass" */
    TD_VERDICT = 1,   /* command ran, verdict "fail" (violations found) */
    TD_EINPUT = 2,    /* malformed input: syntax, schema, or domain error */
    TD_EINTERNAL = 3  /* unexpected internal failure */
} td_status;

typedef struct td_workbench td_workbench;

/* Create / destroy a workbench.  td_workbench_new returns NULL only on
 * allocation failure.  td_workbench_free(NULL) is a no-op. */
TD_API td_workbench* td_workbench_new(void);
TD_API void td_workbench_free(td_workbench* w);

/* Human-readable message for the most recent TD_EINPUT or TD_EINTERNAL on
 * this workbench; empty string if none.  The pointer stays valid until the
 * next td_run_* call on the same workbench or until the workbench is freed.
 * Do not free it. */
TD_API const char* td_last_error(const td_workbench* w);

/* Run one command.
 *
 *   command      one of: monoid.classify, monoid.hilbert, cone.dual,
 *                kn.describe, complex.validate, complex.monodromy,
 *                complex.positive, complex.simple-check, complex.mpl-check,
 *                gluing.check, gluing.trivialize, k3.run
 *   input_json   UTF-8 JSON document (NUL-terminated); may be "" for k3.run,
 *                which takes no input
 *   canonical    nonzero to omit timing so equal inputs give equal bytes
 *   report_out   receives the report envelope JSON on TD_OK / TD_VERDICT;
 *                set to NULL on error.  May itself be NULL to discard.
 *
 * Returns TD_OK or TD_VERDICT when the command ran (a report is produced in
 * both cases), TD_EINPUT / TD_EINTERNAL otherwise (see td_last_error). */
TD_API td_status td_run_json(td_workbench* w, const char* command, const char* input_json,
                      int canonical, char** report_out);

/* Run the quartic pipeline and return its discriminant table as CSV
 * (header edge,root,momentum,charge,fiber_class; CRLF line ends). */
TD_API td_status td_run_csv(td_workbench* w, char** csv_out);

/* Library version, e.g. "0.1.0".  Static storage; do not free. */
TD_API const char* td_version(void);

/* Release a string obtained from td_run_json or td_run_csv. */
TD_API void td_free_string(char* s);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* TORICDEG_H */
