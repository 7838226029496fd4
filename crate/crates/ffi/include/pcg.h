/* C interface for the power-cograph toolkit. */

#ifndef PCG_H
#define PCG_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status of an FFI call. Values 2, 3 and 4 match the CLI exit-code contract.
typedef enum PcgStatus {
  PCG_STATUS_OK = 0,
  // Bad spec text, parameter or option.
  PCG_STATUS_USAGE = 2,
  // The group order exceeds the element cap.
  PCG_STATUS_CAP_EXCEEDED = 3,
  // Cross-check failure: routes disagree or an internal invariant broke.
  PCG_STATUS_INTERNAL = 4,
  // A required pointer argument was null.
  PCG_STATUS_NULL_ARGUMENT = 5,
  // A string argument was not valid UTF-8.
  PCG_STATUS_INVALID_UTF8 = 6,
} PcgStatus;

// Verdict of a check.
typedef enum PcgVerdict {
  PCG_VERDICT_IS_COGRAPH = 0,
  PCG_VERDICT_NOT_COGRAPH = 1,
  PCG_VERDICT_UNKNOWN = 2,
} PcgVerdict;

// Opaque handle to a fully enumerated finite group.
typedef struct PcgGroup PcgGroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static string; do not free.
const char *pcg_version(void);

// Message for the most recent failure on this thread, or NULL if none.
// The caller owns the returned string (free with `pcg_string_free`).
char *pcg_last_error_message(void);

// Releases a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must be NULL or a pointer previously returned by a `pcg_*` function
// that transfers string ownership, not yet freed.
void pcg_string_free(char *s);

// Builds the group described by `spec` (the same mini-language as the CLI),
// enumerating at most `cap` elements. On success stores a handle in `*out`.
//
// # Safety
// `spec` must be a readable NUL-terminated string and `out` a writable
// pointer.
enum PcgStatus pcg_group_new(const char *spec, uint64_t cap, struct PcgGroup **out);

// Releases a group handle. NULL is ignored.
//
// # Safety
// `g` must be NULL or a pointer from `pcg_group_new`, not yet freed.
void pcg_group_free(struct PcgGroup *g);

// Number of elements of the group.
//
// # Safety
// `g` must be a valid handle from `pcg_group_new`.
uint64_t pcg_group_order(const struct PcgGroup *g);

// Order of the element with the given index, or 0 if out of range.
//
// # Safety
// `g` must be a valid handle from `pcg_group_new`.
uint64_t pcg_group_element_order(const struct PcgGroup *g, uint64_t index);

// Human-readable label of the group (caller frees).
//
// # Safety
// `g` must be a valid handle from `pcg_group_new`.
char *pcg_group_label(const struct PcgGroup *g);

// Runs the brute and/or criterion route on a spec. `method` is "brute",
// "criterion" or "both". On success writes the verdict to `*verdict_out`
// and, if `report_out` is non-null, a records-format report to
// `*report_out` (caller frees). A disagreement between routes returns
// `Internal` with the report still written.
//
// # Safety
// `spec` and `method` must be readable NUL-terminated strings;
// `verdict_out` must be writable; `report_out` may be NULL.
enum PcgStatus pcg_check(const char *spec,
                         const char *method,
                         uint64_t cap,
                         uint64_t budget,
                         enum PcgVerdict *verdict_out,
                         char **report_out);

// Classifies a decimal natural number as prime power, product of two
// distinct primes, neither, or unknown under the budget. Writes the class
// rendering to `*out` (caller frees).
//
// # Safety
// `n_decimal` must be a readable NUL-terminated string; `out` writable.
enum PcgStatus pcg_nice(const char *n_decimal, uint64_t budget, char **out);

// Exports a graph of the group in DOT or hex-row format. `kind` is one of
// power, directed, reduced, enhanced, gk, p2; `format` is dot or hex.
// Writes the rendering to `*out` (caller frees).
//
// # Safety
// `spec`, `kind` and `format` must be readable NUL-terminated strings;
// `out` must be writable.
enum PcgStatus pcg_graph(const char *spec,
                         const char *kind,
                         const char *format,
                         uint64_t cap,
                         char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PCG_H */
