#ifndef TAMAGAWA_H
#define TAMAGAWA_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every fallible call.
typedef enum TmgStatus {
  TMG_STATUS_OK = 0,
  // A required pointer argument was NULL.
  TMG_STATUS_NULL_POINTER = 1,
  // A string argument was not valid UTF-8.
  TMG_STATUS_INVALID_UTF8 = 2,
  // A label or curve description could not be parsed.
  TMG_STATUS_PARSE_ERROR = 3,
  // Well-formed input outside the mathematical domain (not a prime
  // power, inadmissible label, bad Weil numerator, ...).
  TMG_STATUS_INVALID_ARGUMENT = 4,
  // Valid input beyond what the library computes (size budgets, ...).
  TMG_STATUS_UNSUPPORTED = 5,
  // The computation ran and the identity did not hold.
  TMG_STATUS_VERIFICATION_FAILED = 6,
  // The buffer supplied by the caller is too small.
  TMG_STATUS_BUFFER_TOO_SMALL = 7,
  // Internal error; the library caught a panic.
  TMG_STATUS_PANIC = 8,
} TmgStatus;

// Zeta function of a smooth projective curve over a finite field.
typedef struct TmgCurve TmgCurve;

// Root-system invariants of a split simply connected group.
typedef struct TmgGroup TmgGroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failure on this thread ("" after a success).
// The pointer stays valid until the next call into this library on the
// same thread.
const char *tmg_last_error(void);

// Library version as a static NUL-terminated string.
const char *tmg_version(void);

// Releases a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must come from this library and not have been freed already.
void tmg_string_free(char *s);

// Builds the invariants for a Cartan label such as `"A1"` or `"E8"`.
//
// # Safety
// `label` must be NULL or a NUL-terminated string; `out` must be NULL or
// writable.
enum TmgStatus tmg_group_new(const char *label, struct TmgGroup **out);

// # Safety
// `group` must be NULL or a live handle from [`tmg_group_new`].
void tmg_group_free(struct TmgGroup *group);

// # Safety
// `group` must be a live handle; `out` must be writable.
enum TmgStatus tmg_group_rank(const struct TmgGroup *group, uint32_t *out);

// `dim G = rank + 2 N`.
//
// # Safety
// `group` must be a live handle; `out` must be writable.
enum TmgStatus tmg_group_dimension(const struct TmgGroup *group, uint64_t *out);

// # Safety
// `group` must be a live handle; `out` must be writable.
enum TmgStatus tmg_group_num_positive_roots(const struct TmgGroup *group, uint64_t *out);

// Copies the fundamental degrees (ascending) into `buf`. `*len` receives
// the number of degrees, which equals the rank; if `cap` is smaller the
// call returns `BUFFER_TOO_SMALL` and writes only `*len`.
//
// # Safety
// `group` must be a live handle, `len` writable, and `buf` valid for `cap`
// writes (it may be NULL when `cap` is 0).
enum TmgStatus tmg_group_degrees(const struct TmgGroup *group,
                                 uint32_t *buf,
                                 size_t cap,
                                 size_t *len);

// Order of the Weyl group as a decimal string.
//
// # Safety
// `group` must be a live handle; `out` must be writable.
enum TmgStatus tmg_group_weyl_order(const struct TmgGroup *group, char **out);

// `|G(F_q)|` as a decimal string; `q` must be a prime power.
//
// # Safety
// `group` must be a live handle; `out` must be writable.
enum TmgStatus tmg_group_chevalley_order(const struct TmgGroup *group, uint64_t q, char **out);

// Parses a curve description (`"p1"`, `"weil:q=2,g=1,num=1,0,2"`,
// `"elliptic:p=5,a=[0,0,0,1,0]"`). `q` is the field size; pass 0 to take it
// from the description (required for `p1`).
//
// # Safety
// `spec` must be NULL or a NUL-terminated string; `out` must be NULL or
// writable.
enum TmgStatus tmg_curve_parse(const char *spec, uint64_t q, struct TmgCurve **out);

// # Safety
// `curve` must be NULL or a live handle from [`tmg_curve_parse`].
void tmg_curve_free(struct TmgCurve *curve);

// # Safety
// `curve` must be a live handle; `out` must be writable.
enum TmgStatus tmg_curve_field_size(const struct TmgCurve *curve, uint64_t *out);

// # Safety
// `curve` must be a live handle; `out` must be writable.
enum TmgStatus tmg_curve_genus(const struct TmgCurve *curve, uint32_t *out);

// `N_r = |X(F_{q^r})|` as a decimal string, `r >= 1`.
//
// # Safety
// `curve` must be a live handle; `out` must be writable.
enum TmgStatus tmg_curve_point_count(const struct TmgCurve *curve, uint32_t r, char **out);

// Total Frobenius trace on the cohomology of `Bun_G`, as `"n/d"`.
//
// # Safety
// `group` and `curve` must be live handles; `out` must be writable.
enum TmgStatus tmg_trace_total(const struct TmgGroup *group,
                               const struct TmgCurve *curve,
                               char **out);

// `q^{(g-1) dim G} * prod_i zeta_X(d_i)`, as `"n/d"`.
//
// # Safety
// `group` and `curve` must be live handles; `out` must be writable.
enum TmgStatus tmg_tamagawa_rhs(const struct TmgGroup *group,
                                const struct TmgCurve *curve,
                                char **out);

// Compares the global and local generating series through `t^order`.
// Writes 1 to `identical` when every coefficient agrees, 0 otherwise; the
// status is `OK` in both cases.
//
// # Safety
// `group` and `curve` must be live handles; `identical` must be writable.
enum TmgStatus tmg_series_identity(const struct TmgGroup *group,
                                   const struct TmgCurve *curve,
                                   size_t order,
                                   uint8_t *identical);

// Full verification with default settings, rendered as the same JSON
// document `tamagawa verify-tamagawa --format json` prints. `q` may be 0
// when the curve description fixes the field. Returns `OK` when every check
// passed and `VERIFICATION_FAILED` when one did not; the JSON is written in
// both cases.
//
// # Safety
// `group` and `curve` must be NULL or NUL-terminated strings; `out` must be
// writable.
enum TmgStatus tmg_verify_tamagawa_json(const char *group,
                                        const char *curve,
                                        uint64_t q,
                                        char **out);

// Canonical text of a curve handle's description (`"p1"`, ...).
//
// # Safety
// `curve` must be a live handle; `out` must be writable.
enum TmgStatus tmg_curve_description(const struct TmgCurve *curve, char **out);

// Canonical Cartan label of a group handle (`"A1"`, ...).
//
// # Safety
// `group` must be a live handle; `out` must be writable.
enum TmgStatus tmg_group_label(const struct TmgGroup *group, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TAMAGAWA_H */
