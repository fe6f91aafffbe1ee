#ifndef TIMELIKE_HILBERT_H
#define TIMELIKE_HILBERT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TlhStatus {
  TLH_STATUS_OK = 0,
  TLH_STATUS_NULL_POINTER,
  TLH_STATUS_INVALID_ARGUMENT,
  TLH_STATUS_ZERO_VECTOR,
  TLH_STATUS_DEGENERATE_PAIR,
  TLH_STATUS_OFF_CIRCLE,
  TLH_STATUS_ALL_DEGENERATE,
  TLH_STATUS_OUTSIDE_HEMISPHERE,
  TLH_STATUS_ON_COORDINATE_CIRCLE,
  TLH_STATUS_NO_INTERSECTION,
  TLH_STATUS_NOT_IN_OMEGA,
  TLH_STATUS_NOT_RELATED,
  TLH_STATUS_INTERNAL_MISMATCH,
  TLH_STATUS_NON_POSITIVE_INPUT,
  TLH_STATUS_OUT_OF_REGION,
  TLH_STATUS_BASE_OUTSIDE_QUADRANT,
  TLH_STATUS_NOT_IN_GOOD_POSITION,
  TLH_STATUS_PANIC,
} TlhStatus;

typedef enum TlhRelation {
  TLH_RELATION_EQUAL = 0,
  TLH_RELATION_BEFORE,
  TLH_RELATION_AFTER,
  TLH_RELATION_UNRELATED,
} TlhRelation;

/**
 * Opaque handle to an antipodal simplex pair.
 */
typedef struct TlhPair TlhPair;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The standard pair: the positive and negative octant triangles.
 */
struct TlhPair *tlh_pair_new_standard(void);

/**
 * The image of the standard pair under `diag(d)`, normalized to determinant one.
 *
 * # Safety
 * `d` must point to three doubles and `out` to writable storage for a handle.
 */
enum TlhStatus tlh_pair_new_deformed(const double *d, struct TlhPair **out);

/**
 * # Safety
 * `pair` must come from a `tlh_pair_new_*` call and not be used afterwards. Null is ignored.
 */
void tlh_pair_free(struct TlhPair *pair);

/**
 * # Safety
 * `pair` must be a live handle; `p`, `q` point to three doubles; `out` is writable.
 */
enum TlhStatus tlh_relate(const struct TlhPair *pair,
                          const double *p,
                          const double *q,
                          enum TlhRelation *out);

/**
 * Timelike Hilbert distance from `p` to `q`; `p` must precede `q`.
 *
 * # Safety
 * As for [`tlh_relate`], with `out` a writable double.
 */
enum TlhStatus tlh_hilbert(const struct TlhPair *pair,
                           const double *p,
                           const double *q,
                           double *out);

/**
 * # Safety
 * As for [`tlh_hilbert`].
 */
enum TlhStatus tlh_funk(const struct TlhPair *pair, const double *p, const double *q, double *out);

/**
 * # Safety
 * As for [`tlh_hilbert`].
 */
enum TlhStatus tlh_reverse_funk(const struct TlhPair *pair,
                                const double *p,
                                const double *q,
                                double *out);

/**
 * Past and future endpoints of the chord through `p` before `q`.
 *
 * # Safety
 * As for [`tlh_relate`]; `a1` and `a2` each receive three doubles.
 */
enum TlhStatus tlh_chord(const struct TlhPair *pair,
                         const double *p,
                         const double *q,
                         double *a1,
                         double *a2);

/**
 * Coordinates of `p` in the chart `{x_axis = sign}`, `axis` in 1..=3, `sign` ±1.
 *
 * # Safety
 * `p` points to three doubles, `out` to two.
 */
enum TlhStatus tlh_project(uint32_t axis, int32_t sign, const double *p, double *out);

/**
 * # Safety
 * `uv` points to two doubles, `out` to three.
 */
enum TlhStatus tlh_lift(uint32_t axis, int32_t sign, const double *uv, double *out);

/**
 * Hilbert distance between points of ℝ³ for the pair of closed orthant cones.
 *
 * # Safety
 * `x`, `y` point to three doubles; `out` is writable.
 */
enum TlhStatus tlh_euclidean_hilbert(const double *x, const double *y, double *out);

/**
 * Minkowski functional of `v` at `base` in quadrant 1 or 2.
 *
 * # Safety
 * `base`, `v` point to two doubles; `out` is writable.
 */
enum TlhStatus tlh_minkowski_functional(uint32_t quadrant_index,
                                        const double *base,
                                        const double *v,
                                        double *out);

/**
 * Norm of a log-coordinate vector for region type 1 or 2.
 *
 * # Safety
 * `w` points to two doubles; `out` is writable.
 */
enum TlhStatus tlh_normed_functional(uint32_t kind, const double *w, double *out);

/**
 * Applies `diag(scale₁, scale₂, 1)`, then the cycle `cycle` times, then the antipodal map if `flip`.
 *
 * # Safety
 * `scale` points to two doubles, `p` to three, `out` to three.
 */
enum TlhStatus tlh_group_apply(const double *scale,
                               uint8_t cycle,
                               bool flip,
                               const double *p,
                               double *out);

/**
 * Static, NUL-terminated description of a status.
 */
const char *tlh_status_message(enum TlhStatus status);

const char *tlh_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TIMELIKE_HILBERT_H */
