#ifndef TRIMODULI_H
#define TRIMODULI_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stddef.h>
#include <stdint.h>

typedef enum TmStatus {
  TM_STATUS_OK = 0,
  TM_STATUS_NULL_POINTER = 1,
  TM_STATUS_INVALID_INPUT = 2,
  TM_STATUS_GUARD = 3,
  TM_STATUS_PRECISION = 4,
  TM_STATUS_OUT_OF_RANGE = 5,
  TM_STATUS_EMPTY = 6,
  TM_STATUS_INTERNAL = 7,
} TmStatus;

typedef enum TmAngleClass {
  TM_ANGLE_CLASS_ACUTE = 0,
  TM_ANGLE_CLASS_RIGHT = 1,
  TM_ANGLE_CLASS_OBTUSE = 2,
} TmAngleClass;

typedef enum TmRegion {
  TM_REGION_OBTUSE_ALL = 0,
  TM_REGION_ACUTE = 1,
  TM_REGION_FULL = 2,
} TmRegion;

/**
 * Opaque weighted set of similarity classes.
 */
typedef struct TmWeightedSet TmWeightedSet;

typedef struct TmPoint {
  int32_t x;
  int32_t y;
} TmPoint;

typedef struct TmTriangle {
  struct TmPoint a;
  struct TmPoint b;
  struct TmPoint c;
} TmTriangle;

/**
 * Reduced sorted squared side lengths `p <= q <= r`.
 */
typedef struct TmKey {
  uint64_t p;
  uint64_t q;
  uint64_t r;
} TmKey;

/**
 * Side lengths divided by the semi-perimeter, sorted ascending.
 */
typedef struct TmShape {
  double a;
  double b;
  double c;
} TmShape;

/**
 * `|m x - nx| = err_x` and `|m y - ny| = err_y`.
 */
typedef struct TmApproximant {
  uint64_t m;
  int64_t nx;
  int64_t ny;
  double err_x;
  double err_y;
} TmApproximant;

typedef struct TmEstimate {
  double mean;
  double std_error;
  uint64_t samples;
  uint64_t seed;
} TmEstimate;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Similarity key of a nondegenerate lattice triangle.
 *
 * # Safety
 * `triangle` and `key_out` must be valid pointers or null.
 */
enum TmStatus tm_similarity_key(const struct TmTriangle *triangle, struct TmKey *key_out);

/**
 * # Safety
 * `class_out` must be a valid pointer or null.
 */
enum TmStatus tm_classify_angle(struct TmKey key, enum TmAngleClass *class_out);

/**
 * # Safety
 * `shape_out` must be a valid pointer or null.
 */
enum TmStatus tm_shape_of(struct TmKey key, struct TmShape *shape_out);

/**
 * Weighted census of all triangles in `[-n, n]^2`. The handle must be
 * released with [`tm_weighted_set_free`].
 *
 * # Safety
 * `set_out` must be a valid pointer or null.
 */
enum TmStatus tm_enumerate_weighted(uint32_t n, struct TmWeightedSet **set_out);

/**
 * Brute-force census over an arbitrary inclusive rectangle.
 *
 * # Safety
 * `set_out` must be a valid pointer or null.
 */
enum TmStatus tm_enumerate_naive(int32_t x_min,
                                 int32_t x_max,
                                 int32_t y_min,
                                 int32_t y_max,
                                 struct TmWeightedSet **set_out);

/**
 * Number of distinct similarity classes.
 *
 * # Safety
 * `set` must be a handle from this library or null; `len_out` valid or null.
 */
enum TmStatus tm_weighted_set_len(const struct TmWeightedSet *set, size_t *len_out);

/**
 * # Safety
 * As [`tm_weighted_set_len`].
 */
enum TmStatus tm_weighted_set_total_weight(const struct TmWeightedSet *set, uint64_t *weight_out);

/**
 * Entry `index` in ascending key order.
 *
 * # Safety
 * As [`tm_weighted_set_len`].
 */
enum TmStatus tm_weighted_set_entry(const struct TmWeightedSet *set,
                                    size_t index,
                                    struct TmKey *key_out,
                                    uint64_t *weight_out);

/**
 * Weighted fraction of the set lying in `region`.
 *
 * # Safety
 * As [`tm_weighted_set_len`].
 */
enum TmStatus tm_weighted_set_dirac_ratio(const struct TmWeightedSet *set,
                                          enum TmRegion region,
                                          double *ratio_out);

/**
 * # Safety
 * As [`tm_weighted_set_len`].
 */
enum TmStatus tm_weighted_set_obtuse_ratio(const struct TmWeightedSet *set, double *ratio_out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `set` must come from this library and must not be used afterwards.
 */
void tm_weighted_set_free(struct TmWeightedSet *set);

/**
 * # Safety
 * `out_approx` must be a valid pointer or null.
 */
enum TmStatus tm_dirichlet_2d(double x, double y, double eps, struct TmApproximant *out_approx);

/**
 * Lattice triangle whose shape lies within `eps` of `target`.
 * `distance_out` may be null.
 *
 * # Safety
 * `triangle_out` must be valid or null; `distance_out` valid or null.
 */
enum TmStatus tm_approximate_shape(struct TmShape target,
                                   double eps,
                                   struct TmTriangle *triangle_out,
                                   double *distance_out);

/**
 * # Safety
 * `estimate_out` must be a valid pointer or null.
 */
enum TmStatus tm_obtuse_probability(uint64_t samples,
                                    uint64_t seed,
                                    struct TmEstimate *estimate_out);

/**
 * # Safety
 * `estimate_out` must be a valid pointer or null.
 */
enum TmStatus tm_mean_pair_distance(uint64_t samples,
                                    uint64_t seed,
                                    struct TmEstimate *estimate_out);

double tm_measure_teich(void);

double tm_measure_moduli(void);

double tm_obtuse_region_measure(void);

double tm_uniform_target(enum TmRegion region);

double tm_langford_probability(void);

/**
 * Message for the last failed call on this thread, or an empty string.
 * Valid until the next call into this library from the same thread.
 */
const char *tm_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *tm_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TRIMODULI_H */
