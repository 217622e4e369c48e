#ifndef CLASSNUM_H
#define CLASSNUM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ClassnumStatus {
  CLASSNUM_STATUS_OK = 0,
  /**
   * The computation ran and a checked identity failed.
   */
  CLASSNUM_STATUS_CHECK_FAILED = 1,
  /**
   * Null pointer, invalid UTF-8 or an unknown name.
   */
  CLASSNUM_STATUS_INVALID_ARGUMENT = 2,
  CLASSNUM_STATUS_DOMAIN = 3,
  CLASSNUM_STATUS_INSUFFICIENT_PRECISION = 4,
  CLASSNUM_STATUS_NOT_IN_SPACE = 5,
  CLASSNUM_STATUS_PARSE = 6,
  /**
   * Pole proximity, step size or configuration problems in numeric checks.
   */
  CLASSNUM_STATUS_NUMERIC = 7,
  CLASSNUM_STATUS_PANIC = 8,
} ClassnumStatus;

/**
 * Opaque handle to a truncated q-series.
 */
typedef struct ClassnumSeries ClassnumSeries;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Owned by the library.
 */
const char *classnum_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed already.
 */
void classnum_string_free(char *s);

/**
 * `H(n)` as `"p/q"` or an integer string.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum ClassnumStatus classnum_hurwitz(uint64_t n, char **out);

/**
 * # Safety
 * `out` must be a valid pointer.
 */
enum ClassnumStatus classnum_class_number(int64_t d, uint64_t *out);

/**
 * Builds a named series (`theta`, `hurwitz`, `f2`, `delta4`, `lambda-odd`)
 * through `q^prec`. `ell` is used by `lambda-odd` only.
 *
 * # Safety
 * `kind` must be a nul-terminated string and `out` a valid pointer.
 */
enum ClassnumStatus classnum_series_new(const char *kind,
                                        uintptr_t prec,
                                        uint32_t ell,
                                        struct ClassnumSeries **out);

/**
 * Parses the text interchange format.
 *
 * # Safety
 * `text` must be a nul-terminated string and `out` a valid pointer.
 */
enum ClassnumStatus classnum_series_from_text(const char *text, struct ClassnumSeries **out);

/**
 * # Safety
 * `series` must be null or a live handle from this library.
 */
void classnum_series_free(struct ClassnumSeries *series);

/**
 * Precision `N` of the series (coefficients `0..=N`), or 0 for null.
 *
 * # Safety
 * `series` must be null or a live handle.
 */
uintptr_t classnum_series_prec(const struct ClassnumSeries *series);

/**
 * Coefficient of `q^n` as a rational string.
 *
 * # Safety
 * `series` must be a live handle and `out` a valid pointer.
 */
enum ClassnumStatus classnum_series_coeff(const struct ClassnumSeries *series,
                                          uintptr_t n,
                                          char **out);

/**
 * # Safety
 * `series` must be a live handle and `out` a valid pointer.
 */
enum ClassnumStatus classnum_series_to_text(const struct ClassnumSeries *series, char **out);

/**
 * Decomposition of the series in the monomial basis of weight `weight`
 * (the cusp basis when `cusp`), as a JSON object. A series outside the span
 * gives `NOT_IN_SPACE`.
 *
 * # Safety
 * `series` must be a live handle and `out_json` a valid pointer.
 */
enum ClassnumStatus classnum_identify(const struct ClassnumSeries *series,
                                      int64_t weight,
                                      bool cusp,
                                      char **out_json);

/**
 * Checks relation `name` (`eq1`, `eq3`, `cc1`..`cc4`) for `from ≤ n ≤ to`
 * and writes a JSON report envelope. Returns `CHECK_FAILED` when the
 * relation fails somewhere in the range.
 *
 * # Safety
 * `name` must be a nul-terminated string and `out_json` a valid pointer.
 */
enum ClassnumStatus classnum_check_relation(const char *name,
                                            uint64_t from,
                                            uint64_t to,
                                            char **out_json);

/**
 * # Safety
 * `out_json` must be a valid pointer.
 */
enum ClassnumStatus classnum_verify_theorem(uint32_t k_max, uintptr_t prec, char **out_json);

/**
 * Runs a numeric check (`rid`, `heat`, `eqfin1`, `appell`, `difftheta`,
 * `binom`) at `τ = tau_re + i·tau_im`. A negative `m` selects the default.
 *
 * # Safety
 * `kind` must be a nul-terminated string and `out_json` a valid pointer.
 */
enum ClassnumStatus classnum_nonhol_check(const char *kind,
                                          double tau_re,
                                          double tau_im,
                                          uintptr_t trunc,
                                          int32_t m,
                                          char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CLASSNUM_H */
