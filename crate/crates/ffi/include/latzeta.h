#ifndef LATZETA_H
#define LATZETA_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Outcome of a call.
typedef enum LzStatus {
  LZ_STATUS_OK = 0,
  // Input outside the supported domain (not fundamental, wrong discriminant, ...).
  LZ_STATUS_DOMAIN = 1,
  // Checked integer arithmetic overflowed.
  LZ_STATUS_OVERFLOW = 2,
  // An internal consistency check failed.
  LZ_STATUS_INCONSISTENT = 3,
  LZ_STATUS_NULL_POINTER = 4,
  // Index past the end of a table or group.
  LZ_STATUS_OUT_OF_RANGE = 5,
  // A Rust panic was caught at the boundary.
  LZ_STATUS_PANIC = 6,
} LzStatus;

// Which coefficient column to read.
typedef enum LzMode {
  // Proper isometry classes, `a_m^+`.
  LZ_MODE_SL = 0,
  // All isometry classes, `a_m`.
  LZ_MODE_GL = 1,
} LzMode;

// Opaque class group of a fundamental discriminant.
typedef struct LzClassGroup LzClassGroup;

// Opaque table of `(a_m^+, a_m)` for `1 ≤ m ≤ N`.
typedef struct LzSeries LzSeries;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last non-`Ok` status on this thread. The pointer stays
// valid until the next failing call on the same thread.
const char *lz_last_error_message(void);

// Builds the class group of `disc` into `*out`.
//
// # Safety
// `out` must be valid for writes.
enum LzStatus lz_class_group_new(int64_t disc, struct LzClassGroup **out);

// Class number, or 0 for a null handle.
//
// # Safety
// `group` must be null or a live handle.
size_t lz_class_group_order(const struct LzClassGroup *group);

// Reduced form of class `index` as `(a, b, c)`; classes are sorted.
//
// # Safety
// `group` must be a live handle and `out` valid for three writes.
enum LzStatus lz_class_group_form(const struct LzClassGroup *group, size_t index, int64_t *out);

// Index of the product of classes `a` and `b`.
//
// # Safety
// `group` must be a live handle and `out` valid for writes.
enum LzStatus lz_class_group_compose(const struct LzClassGroup *group,
                                     size_t a,
                                     size_t b,
                                     size_t *out);

// # Safety
// `group` must be null or a handle not yet freed.
void lz_class_group_free(struct LzClassGroup *group);

// Coefficients up to `n` from the closed formulas for the form `(a, b, c)`.
//
// # Safety
// `out` must be valid for writes.
enum LzStatus lz_formula_series_new(int64_t a,
                                    int64_t b,
                                    int64_t c,
                                    size_t n,
                                    struct LzSeries **out);

// Coefficients up to `n` by sublattice enumeration for the form `(a, b, c)`.
//
// # Safety
// `out` must be valid for writes.
enum LzStatus lz_brute_series_new(int64_t a, int64_t b, int64_t c, size_t n, struct LzSeries **out);

// Truncation bound `N`, or 0 for a null handle.
//
// # Safety
// `series` must be null or a live handle.
size_t lz_series_len(const struct LzSeries *series);

// Coefficient of `m^{-s}` for `1 ≤ m ≤ N`.
//
// # Safety
// `series` must be a live handle and `out` valid for writes.
enum LzStatus lz_series_coeff(const struct LzSeries *series,
                              enum LzMode mode,
                              size_t m,
                              uint64_t *out);

// # Safety
// `series` must be null or a handle not yet freed.
void lz_series_free(struct LzSeries *series);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LATZETA_H */
