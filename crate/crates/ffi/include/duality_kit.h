#ifndef DUALITY_KIT_H
#define DUALITY_KIT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of a call. Values match the command-line exit codes where they
// overlap.
typedef enum DkStatus {
  DK_STATUS_OK = 0,
  // A law check failed; the report is still written.
  DK_STATUS_LAW_FAILURE = 1,
  DK_STATUS_INVALID_INPUT = 2,
  DK_STATUS_INTERNAL = 3,
  DK_STATUS_NULL_ARGUMENT = 4,
  DK_STATUS_PANIC = 5,
} DkStatus;

// A Markov kernel between finite measurable spaces.
typedef struct DkKernel DkKernel;

// A finite measurable space.
typedef struct DkSpace DkSpace;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null. Valid until
// the next call into the library.
const char *dk_last_error(void);

// Library version, statically allocated.
const char *dk_version(void);

// # Safety
// `s` must be null or a string returned by this library, not yet freed.
void dk_string_free(char *s);

// Parses a space record (`{"points": [...], "blocks": [[...]]}`).
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum DkStatus dk_space_from_json(const char *json, struct DkSpace **out);

// # Safety
// `x` must be null or a live handle from this library.
void dk_space_free(struct DkSpace *x);

// # Safety
// `x` must be a live handle.
size_t dk_space_n_points(const struct DkSpace *x);

// # Safety
// `x` must be a live handle.
size_t dk_space_n_blocks(const struct DkSpace *x);

// # Safety
// `x` must be a live handle.
bool dk_space_is_sober(const struct DkSpace *x);

// # Safety
// `x` must be a live handle; `out` must be writable.
enum DkStatus dk_space_to_json(const struct DkSpace *x, char **out);

// The sober quotient of `x`. When `unit` is non-null it receives the
// point map of the unit `x -> sob(x)`, one entry per point of `x`.
//
// # Safety
// `x` must be a live handle; `out` writable; `unit` null or room for
// `dk_space_n_points(x)` entries.
enum DkStatus dk_sobrify(const struct DkSpace *x, struct DkSpace **out, size_t *unit);

// Parses a kernel record (`{"rows": [["1/2", "1/2"], ...]}` with optional
// `source` and `target` spaces).
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum DkStatus dk_kernel_from_json(const char *json, struct DkKernel **out);

// # Safety
// `k` must be null or a live handle from this library.
void dk_kernel_free(struct DkKernel *k);

// First `a`, then `b`.
//
// # Safety
// `a`, `b` must be live handles; `out` must be writable.
enum DkStatus dk_kernel_compose(const struct DkKernel *a,
                                const struct DkKernel *b,
                                struct DkKernel **out);

// Probability of target block `block` from source point `point`, rounded
// to a double.
//
// # Safety
// `k` must be a live handle; `out` must be writable.
enum DkStatus dk_kernel_prob(const struct DkKernel *k, size_t point, size_t block, double *out);

// Exact JSON form of `k`; probabilities are `"p/q"` strings.
//
// # Safety
// `k` must be a live handle; `out` must be writable.
enum DkStatus dk_kernel_to_json(const struct DkKernel *k, char **out);

// `f(a)` for a normal matrix given as JSON and a function spec such as
// `"indicator:0.5,1.5"`. The result is a JSON matrix of `[re, im]` pairs.
// A non-positive `tol` selects the default spectral tolerance. Non-normal
// input is `DK_STATUS_INVALID_INPUT`.
//
// # Safety
// String arguments must be NUL-terminated; `out` must be writable.
enum DkStatus dk_funcalc(const char *matrix_json, const char *fn_spec, double tol, char **out);

// Runs a suite group (`bool`, `meas`, `stoch`, `cstar`, `dualities`,
// `all`) and writes the certificate report. Returns `DK_STATUS_LAW_FAILURE`
// when a law fails, with the report still written. `budget` 0 selects the
// default.
//
// # Safety
// `group` must be NUL-terminated; `out` must be writable.
enum DkStatus dk_verify(const char *group,
                        uint64_t seed,
                        size_t cases,
                        uint64_t budget,
                        char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DUALITY_KIT_H */
