#ifndef STRIP_BERGMAN_H
#define STRIP_BERGMAN_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Interpolation along `x`.
 */
typedef enum {
  SB_INTERP_SPECTRAL = 0,
  SB_INTERP_CUBIC = 1,
} SbInterp;

/**
 * Result codes.
 */
typedef enum {
  SB_STATUS_OK = 0,
  SB_STATUS_NULL_POINTER = 1,
  SB_STATUS_DOMAIN = 2,
  SB_STATUS_PARAMETER = 3,
  SB_STATUS_GRID_MISMATCH = 4,
  SB_STATUS_ILL_CONDITIONED = 5,
  SB_STATUS_NUMERICAL = 6,
  SB_STATUS_TOO_LARGE = 7,
  SB_STATUS_CONFIG = 8,
  SB_STATUS_IO = 9,
  SB_STATUS_PANIC = 10,
} SbStatus;

/**
 * Disc family handle.
 */
typedef struct SbDisc SbDisc;

/**
 * Strip grid handle.
 */
typedef struct SbGrid SbGrid;

/**
 * Discretised `π` handle.
 */
typedef struct SbPi SbPi;

/**
 * A complex number laid out as two doubles.
 */
typedef struct {
  double re;
  double im;
} SbComplex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copy the last error message of this thread into `buf` (NUL-terminated,
 * truncated to `len` bytes). Returns the full message length, or 0 if no
 * error has been recorded.
 *
 * # Safety
 * `buf` must be null or point to `len` writable bytes.
 */
size_t sb_last_error(char *buf, size_t len);

/**
 * Library version as a static NUL-terminated string.
 */
const char *sb_version(void);

/**
 * Centres `t1 <= t2` of the two unit circles through `z` in the strip.
 *
 * # Safety
 * `t1` and `t2` must be valid for writes.
 */
SbStatus sb_tangent_centers(SbComplex z, double *t1, double *t2);

/**
 * Build an `nx × ny` grid on `[−m−pad, m+pad] × (−1, 1)` with weight exponent `alpha`.
 *
 * # Safety
 * `out` must be valid for writes. The handle must be released with [`sb_grid_free`].
 */
SbStatus sb_grid_new(double m, double pad, size_t nx, size_t ny, double alpha, SbGrid **out);

/**
 * Release a grid. Null is ignored.
 *
 * # Safety
 * `grid` must come from [`sb_grid_new`] and not be used afterwards.
 */
void sb_grid_free(SbGrid *grid);

/**
 * Number of grid nodes (`nx · ny`).
 *
 * # Safety
 * `grid` must be a live handle and `len` valid for writes.
 */
SbStatus sb_grid_len(const SbGrid *grid, size_t *len);

/**
 * Node coordinates in grid order (row `j` major, `i` fastest), plus the
 * quadrature weight of each node.
 *
 * # Safety
 * `nodes` and `weights` must hold `len` elements; `weights` may be null.
 */
SbStatus sb_grid_nodes(const SbGrid *grid, SbComplex *nodes, double *weights, size_t len);

/**
 * Whether the row weights use the piecewise-linear fallback rule.
 *
 * # Safety
 * `grid` must be a live handle and `fallback` valid for writes.
 */
SbStatus sb_grid_uses_fallback(const SbGrid *grid, bool *fallback);

/**
 * Weighted `L²` norm of grid values.
 *
 * # Safety
 * `values` must hold `len` elements and `norm` be valid for writes.
 */
SbStatus sb_grid_norm(const SbGrid *grid, const SbComplex *values, size_t len, double *norm);

/**
 * Assemble `π` with Szegő degree `n` (< ny) on a grid. The operator keeps its
 * own reference to the grid.
 *
 * # Safety
 * `grid` must be a live handle and `out` valid for writes. Release with [`sb_pi_free`].
 */
SbStatus sb_pi_new(const SbGrid *grid, size_t n, SbInterp interp, SbPi **out);

/**
 * Release an operator. Null is ignored.
 *
 * # Safety
 * `op` must come from [`sb_pi_new`] and not be used afterwards.
 */
void sb_pi_free(SbPi *op);

/**
 * `output = π input` on grid values. The buffers may not overlap.
 *
 * # Safety
 * `input` and `output` must each hold `len` elements.
 */
SbStatus sb_pi_apply(const SbPi *op, const SbComplex *input, SbComplex *output, size_t len);

/**
 * Relative asymmetry of `π` in the grid metric.
 *
 * # Safety
 * `op` must be a live handle and `defect` valid for writes.
 */
SbStatus sb_pi_asymmetry(const SbPi *op, double *defect);

/**
 * Build the disc family for `0 <= eps < 1` on an `ns × npsi` grid.
 *
 * # Safety
 * `out` must be valid for writes. Release with [`sb_disc_free`].
 */
SbStatus sb_disc_new(double eps, size_t ns, size_t npsi, SbDisc **out);

/**
 * Release a disc family. Null is ignored.
 *
 * # Safety
 * `disc` must come from [`sb_disc_new`] and not be used afterwards.
 */
void sb_disc_free(SbDisc *disc);

/**
 * Number of disc grid nodes.
 *
 * # Safety
 * `disc` must be a live handle and `len` valid for writes.
 */
SbStatus sb_disc_len(const SbDisc *disc, size_t *len);

/**
 * Node positions `ζ` and measure weights of the disc grid.
 *
 * # Safety
 * `nodes` and `weights` must hold `len` elements; `weights` may be null.
 */
SbStatus sb_disc_nodes(const SbDisc *disc, SbComplex *nodes, double *weights, size_t len);

/**
 * `output = T input` for the averaged disc projection.
 *
 * # Safety
 * `input` and `output` must each hold `len` elements.
 */
SbStatus sb_disc_apply(const SbDisc *disc, const SbComplex *input, SbComplex *output, size_t len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* STRIP_BERGMAN_H */
