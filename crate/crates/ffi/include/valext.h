#ifndef VALEXT_H
#define VALEXT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ValextStatus {
  VALEXT_STATUS_OK = 0,
  /**
   * A mathematical precondition does not hold.
   */
  VALEXT_STATUS_DOMAIN = 1,
  /**
   * Malformed JSON or an unknown field, task or schema version.
   */
  VALEXT_STATUS_PARSE = 2,
  VALEXT_STATUS_NULL_POINTER = 3,
  VALEXT_STATUS_INVALID_UTF8 = 4,
  /**
   * The certificate was read but did not re-validate.
   */
  VALEXT_STATUS_RECHECK_FAILED = 5,
  VALEXT_STATUS_PANIC = 6,
} ValextStatus;

/**
 * Opaque certificate handle.
 */
typedef struct ValextCertificate ValextCertificate;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. The pointer
 * stays valid until the next valext call on the same thread.
 */
const char *valext_last_error_message(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library, not yet freed.
 */
void valext_string_free(char *s);

/**
 * Runs a job file given as JSON text and returns the JSON report (an
 * array for batches). The status is the worst over the jobs; the report
 * is written even when some job failed.
 *
 * # Safety
 * `job_json` must be a NUL-terminated string; `out` must be writable.
 */
enum ValextStatus valext_run_job_json(const char *job_json, char **out);

/**
 * Parses a certificate. Schema mismatches give `Parse`.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum ValextStatus valext_certificate_from_json(const char *json, struct ValextCertificate **out);

/**
 * Re-validates every witness. `Ok` with `*passed = true` on success;
 * `RecheckFailed` with `*passed = false` and the first broken invariant
 * as the error message otherwise.
 *
 * # Safety
 * `cert` must be a live handle; `passed` must be writable or NULL.
 */
enum ValextStatus valext_certificate_recheck(const struct ValextCertificate *cert, bool *passed);

/**
 * Canonical JSON text of a certificate.
 *
 * # Safety
 * `cert` must be a live handle; `out` must be writable.
 */
enum ValextStatus valext_certificate_to_json(const struct ValextCertificate *cert, char **out);

/**
 * # Safety
 * `cert` must be NULL or a handle from this library, not yet freed.
 */
void valext_certificate_free(struct ValextCertificate *cert);

/**
 * Builds the defect-tower certificate for the schedule `e[0..len]`.
 *
 * # Safety
 * `e` must point to `len` readable values; `out` must be writable.
 */
enum ValextStatus valext_piltant_build(uint64_t p,
                                       const uint64_t *e,
                                       size_t len,
                                       size_t depth,
                                       struct ValextCertificate **out);

/**
 * `v_{a,γ}(f)` for a descriptor and a rational function given as JSON;
 * the value comes back as JSON text (a "num/den" string in rank one).
 *
 * # Safety
 * `vag_json` and `f_json` must be NUL-terminated strings; `out` writable.
 */
enum ValextStatus valext_eval_vag_json(const char *vag_json, const char *f_json, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* VALEXT_H */
