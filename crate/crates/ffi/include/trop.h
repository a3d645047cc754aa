#ifndef TROP_H
#define TROP_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Result of every fallible call.
 */
typedef enum TropStatus {
  TROP_STATUS_OK = 0,
  TROP_STATUS_NULL_POINTER = 1,
  TROP_STATUS_INVALID_UTF8 = 2,
  TROP_STATUS_SYNTAX = 3,
  TROP_STATUS_EMPTY_VARIETY = 4,
  TROP_STATUS_NOT_TRANSVERSAL = 5,
  TROP_STATUS_NOT_ELLIPTIC = 6,
  TROP_STATUS_NOT_ON_CYCLE = 7,
  TROP_STATUS_NOT_ON_CURVE = 8,
  TROP_STATUS_DOMAIN = 9,
  TROP_STATUS_PANIC = 10,
} TropStatus;

/**
 * A tropical plane curve.
 */
typedef struct TropCurve TropCurve;

/**
 * The cycle of an elliptic curve with a base point.
 */
typedef struct TropCycle TropCycle;

/**
 * A parsed tropical polynomial.
 */
typedef struct TropPoly TropPoly;

/**
 * Message of the last failed call on this thread; empty after a success.
 * Valid until the next call into this library on the same thread.
 */
const char *trop_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void trop_string_free(char *s);

/**
 * # Safety
 * `text` must be a nul-terminated string; `out` must be writable.
 */
enum TropStatus trop_poly_parse(const char *text, struct TropPoly **out);

/**
 * Normalized text of the polynomial.
 *
 * # Safety
 * `poly` must be a live handle; `out` must be writable.
 */
enum TropStatus trop_poly_to_string(const struct TropPoly *poly, char **out);

/**
 * # Safety
 * `poly` must be null or a live handle.
 */
void trop_poly_free(struct TropPoly *poly);

/**
 * # Safety
 * `poly` must be a live handle; `out` must be writable.
 */
enum TropStatus trop_curve_new(const struct TropPoly *poly, struct TropCurve **out);

/**
 * Parses and builds in one step.
 *
 * # Safety
 * `text` must be a nul-terminated string; `out` must be writable.
 */
enum TropStatus trop_curve_from_text(const char *text, struct TropCurve **out);

/**
 * # Safety
 * `curve` must be null or a live handle.
 */
void trop_curve_free(struct TropCurve *curve);

/**
 * Normalized degree of the Newton polygon.
 *
 * # Safety
 * `curve` must be a live handle; `out` must be writable.
 */
enum TropStatus trop_curve_degree(const struct TropCurve *curve, int64_t *out);

/**
 * Counts of vertices, bounded edges and rays.
 *
 * # Safety
 * `curve` must be a live handle; out-pointers must be writable.
 */
enum TropStatus trop_curve_counts(const struct TropCurve *curve,
                                  size_t *vertices,
                                  size_t *bounded_edges,
                                  size_t *rays);

/**
 * # Safety
 * `curve` must be a live handle; `out` must be writable.
 */
enum TropStatus trop_curve_is_smooth(const struct TropCurve *curve, bool *out);

/**
 * Genus of a smooth curve; fails with `Domain` otherwise.
 *
 * # Safety
 * `curve` must be a live handle; `out` must be writable.
 */
enum TropStatus trop_curve_genus(const struct TropCurve *curve, size_t *out);

/**
 * # Safety
 * `curve` must be a live handle; `out` must be writable.
 */
enum TropStatus trop_curve_is_balanced(const struct TropCurve *curve, bool *out);

/**
 * `tropcurve-1` JSON document, with the subdivision if `with_subdivision`.
 *
 * # Safety
 * `curve` must be a live handle; `out` must be writable.
 */
enum TropStatus trop_curve_to_json(const struct TropCurve *curve,
                                   bool with_subdivision,
                                   char **out);

/**
 * SVG of the curve in its default viewport.
 *
 * # Safety
 * `curve` must be a live handle; `out` must be writable.
 */
enum TropStatus trop_curve_to_svg(const struct TropCurve *curve, char **out);

/**
 * Intersection as JSON (`entries` of point and multiplicity, and `total`).
 * Stable when `stable`, otherwise transversal (fails with `NotTransversal`).
 *
 * # Safety
 * Both curves must be live handles; out-pointers must be writable.
 */
enum TropStatus trop_intersect(const struct TropCurve *a,
                               const struct TropCurve *b,
                               bool stable,
                               int64_t *total,
                               char **json);

/**
 * Cycle of an elliptic curve, based at its lowest-leftmost vertex.
 *
 * # Safety
 * `curve` must be a live handle; `out` must be writable.
 */
enum TropStatus trop_cycle_new(const struct TropCurve *curve, struct TropCycle **out);

/**
 * # Safety
 * `cycle` must be null or a live handle.
 */
void trop_cycle_free(struct TropCycle *cycle);

/**
 * Moves the base point to `origin` ("x,y").
 *
 * # Safety
 * `cycle` must be a live, exclusively held handle; `origin` a nul-terminated string.
 */
enum TropStatus trop_cycle_set_origin(struct TropCycle *cycle, const char *origin);

/**
 * Total lattice length as `"n/d"`.
 *
 * # Safety
 * `cycle` must be a live handle; `out` must be writable.
 */
enum TropStatus trop_cycle_length(const struct TropCycle *cycle, char **out);

/**
 * `lambda(P)` as `"n/d"`.
 *
 * # Safety
 * `cycle` must be a live handle; `p` a nul-terminated string; `out` writable.
 */
enum TropStatus trop_cycle_lambda(const struct TropCycle *cycle, const char *p, char **out);

/**
 * `P + Q` as `"x,y"`.
 *
 * # Safety
 * `cycle` must be a live handle; `p`, `q` nul-terminated strings; `out` writable.
 */
enum TropStatus trop_cycle_add(const struct TropCycle *cycle,
                               const char *p,
                               const char *q,
                               char **out);

/**
 * `-P` as `"x,y"`.
 *
 * # Safety
 * `cycle` must be a live handle; `p` a nul-terminated string; `out` writable.
 */
enum TropStatus trop_cycle_neg(const struct TropCycle *cycle, const char *p, char **out);

/**
 * Reduces a degree-0 divisor such as `"(1,2)+(3,4)-2*O"` to `P` with `D ~ P - O`.
 *
 * # Safety
 * `cycle` must be a live handle; `divisor` a nul-terminated string; `out` writable.
 */
enum TropStatus trop_cycle_reduce(const struct TropCycle *cycle, const char *divisor, char **out);

#endif  /* TROP_H */
