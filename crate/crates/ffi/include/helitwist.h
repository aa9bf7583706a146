#ifndef HELITWIST_H
#define HELITWIST_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of a call.
 */
typedef enum HtStatus {
  HT_STATUS_OK = 0,
  HT_STATUS_NULL_ARGUMENT = 1,
  HT_STATUS_INVALID_UTF8 = 2,
  HT_STATUS_PARSE_ERROR = 3,
  HT_STATUS_VALIDATION_ERROR = 4,
  HT_STATUS_OUT_OF_RANGE = 5,
  HT_STATUS_OVERFLOW = 6,
  HT_STATUS_PANIC = 7,
} HtStatus;

/**
 * A locally helical surface, checked against the triangulation it was
 * parsed for.
 */
typedef struct HtSurface HtSurface;

/**
 * A closed oriented triangulation.
 */
typedef struct HtTriangulation HtTriangulation;

/**
 * A curve system on a tetrahedron boundary: vertex link counts, and
 * `copies` parallel copies of the long loop with the given pair weights
 * (ignored when `copies` is 0).
 */
typedef struct HtCurves {
  uint32_t links[4];
  uint32_t pairs[3];
  uint32_t copies;
} HtCurves;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or the empty string.
 * Valid until the next call on the same thread.
 */
const char *ht_last_error(void);

/**
 * Parses a triangulation document and checks it is closed and oriented.
 *
 * # Safety
 * `doc` must be a nul-terminated string; `out` must be writable.
 */
enum HtStatus ht_triangulation_parse(const char *doc, struct HtTriangulation **out);

/**
 * Number of tetrahedra, or 0 for a null handle.
 *
 * # Safety
 * `m` must be null or a live handle.
 */
size_t ht_triangulation_tet_count(const struct HtTriangulation *m);

/**
 * Orientation of tetrahedron `tet` as +1 or -1, or 0 if out of range.
 *
 * # Safety
 * `m` must be null or a live handle.
 */
int ht_triangulation_orientation(const struct HtTriangulation *m, size_t tet);

/**
 * # Safety
 * `m` must be null or a handle from [`ht_triangulation_parse`] not yet freed.
 */
void ht_triangulation_free(struct HtTriangulation *m);

/**
 * Parses a surface document and checks it matches across every gluing of
 * `m`.
 *
 * # Safety
 * `m` must be a live handle, `doc` a nul-terminated string, `out` writable.
 */
enum HtStatus ht_surface_parse(const struct HtTriangulation *m,
                               const char *doc,
                               struct HtSurface **out);

/**
 * # Safety
 * `h` must be null or a handle from [`ht_surface_parse`] not yet freed.
 */
void ht_surface_free(struct HtSurface *h);

/**
 * Sum of the absolute twists of all helicoids of `h`.
 *
 * # Safety
 * `h` must be a live handle and `out` writable.
 */
enum HtStatus ht_surface_total_absolute_twisting(const struct HtSurface *h, uint64_t *out);

/**
 * Smallest and largest net twisting of `h` over the tetrahedra listed in
 * `delta`, across all axis choices.
 *
 * # Safety
 * Handles must be live, `delta` must point to `delta_len` indices (or be
 * null with `delta_len` 0), and `out` must have room for two values.
 */
enum HtStatus ht_surface_net_range(const struct HtTriangulation *m,
                                   const struct HtSurface *h,
                                   const size_t *delta,
                                   size_t delta_len,
                                   int64_t *out);

/**
 * The full twisting report of `h` as JSON. Free the string with
 * [`ht_string_free`].
 *
 * # Safety
 * Handles must be live and `out` writable.
 */
enum HtStatus ht_surface_report_json(const struct HtTriangulation *m,
                                     const struct HtSurface *h,
                                     char **out);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void ht_string_free(char *s);

/**
 * Whether `h` and `g` are consistent over `delta`; when they are, their
 * net twisting under the shared readings goes to `net[0]` and `net[1]`.
 *
 * # Safety
 * Handles must be live; `delta` as for [`ht_surface_net_range`];
 * `consistent` writable and `net` room for two values.
 */
enum HtStatus ht_surfaces_compare(const struct HtTriangulation *m,
                                  const struct HtSurface *h,
                                  const struct HtSurface *g,
                                  const size_t *delta,
                                  size_t delta_len,
                                  bool *consistent,
                                  int64_t *net);

/**
 * Upper bound on the consistency classes of surfaces on `m` whose
 * helicoids twist at most `max_twist`, with a helicoid in every tetrahedron
 * of `delta`.
 *
 * # Safety
 * As for [`ht_surface_net_range`]; `out` writable.
 */
enum HtStatus ht_count_consistency_classes(const struct HtTriangulation *m,
                                           const size_t *delta,
                                           size_t delta_len,
                                           uint32_t max_twist,
                                           uint64_t *out);

/**
 * Signed crossing count and number of crossings of `a` and `b` in minimal
 * position on a tetrahedron of orientation `orientation` (+1 or -1).
 *
 * # Safety
 * `a` and `b` must be readable; `eta` and `crossings` writable.
 */
enum HtStatus ht_curves_eta(const struct HtCurves *a,
                            const struct HtCurves *b,
                            int orientation,
                            int64_t *eta,
                            uint64_t *crossings);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HELITWIST_H */
