#ifndef IELDTM_H
#define IELDTM_H

/* Generated by cbindgen from crates/ffi/src. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes. The numeric values are part of the ABI.
typedef enum IeldtmStatus {
  IELDTM_STATUS_OK = 0,
  IELDTM_STATUS_NULL_POINTER = 1,
  IELDTM_STATUS_INVALID_ARGUMENT = 2,
  IELDTM_STATUS_SOLVER_FAILURE = 3,
  IELDTM_STATUS_BUFFER_TOO_SMALL = 4,
  IELDTM_STATUS_PANIC = 5,
} IeldtmStatus;

typedef enum IeldtmProblem {
  IELDTM_PROBLEM_BURGERS1D = 0,
  IELDTM_PROBLEM_BURGERS2D = 1,
} IeldtmProblem;

typedef enum IeldtmMode {
  IELDTM_MODE_FIXED = 0,
  IELDTM_MODE_ADAPTIVE = 1,
} IeldtmMode;

// Completed run.
typedef struct IeldtmRun IeldtmRun;

// Run description. `m` is ignored for the 1D problem; `dt` is used in
// fixed mode and `tol` in adaptive mode.
typedef struct IeldtmConfig {
  enum IeldtmProblem problem;
  double eps;
  size_t n;
  size_t m;
  double theta;
  size_t k;
  enum IeldtmMode mode;
  double dt;
  double tol;
  double tf;
} IeldtmConfig;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message describing the last failed call on this thread, or null. The
// pointer stays valid until the next failing call on the same thread.
const char *ieldtm_last_error(void);

// Fills `out` with the 1D benchmark defaults (ε = 0.1, N = 20, θ = ½,
// K = 3, Δt = 0.001, t_f = 0.1).
//
// # Safety
// `out` must be null or point to writable memory for one `IeldtmConfig`.
enum IeldtmStatus ieldtm_config_default(struct IeldtmConfig *out);

// Integrates the configured problem to `tf`. On success `*out` receives
// a handle to release with [`ieldtm_run_free`].
//
// # Safety
// `config` must be null or point to a valid `IeldtmConfig`; `out` must be
// null or point to writable memory for one pointer.
enum IeldtmStatus ieldtm_run(const struct IeldtmConfig *config, struct IeldtmRun **out);

// Releases a run handle. Null is ignored.
//
// # Safety
// `run` must be null or a handle from [`ieldtm_run`] not yet released.
void ieldtm_run_free(struct IeldtmRun *run);

// Maximum error at interior nodes against the exact solution.
//
// # Safety
// `run` must be a live handle; `out` must point to one writable double.
enum IeldtmStatus ieldtm_run_linf(const struct IeldtmRun *run, double *out);

// Number of accepted steps.
//
// # Safety
// `run` must be a live handle; `out` must point to one writable `size_t`.
enum IeldtmStatus ieldtm_run_step_count(const struct IeldtmRun *run, size_t *out);

// Grid shape `(N + 1, M + 1)` of the final field; `cols` is 1 in 1D.
//
// # Safety
// `run` must be a live handle; `rows` and `cols` must point to writable
// `size_t` values.
enum IeldtmStatus ieldtm_run_field_shape(const struct IeldtmRun *run, size_t *rows, size_t *cols);

// Copies the final field, boundary included, in column-major order (`x`
// varies fastest) into `buf`, which must hold `rows * cols` doubles.
//
// # Safety
// `run` must be a live handle; `buf` must point to `len` writable doubles.
enum IeldtmStatus ieldtm_run_copy_field(const struct IeldtmRun *run, double *buf, size_t len);

// Evaluates the final collocation interpolant at `(x, y)`; `y` is
// ignored in 1D.
//
// # Safety
// `run` must be a live handle; `out` must point to one writable double.
enum IeldtmStatus ieldtm_run_eval(const struct IeldtmRun *run, double x, double y, double *out);

// Amplification factor `R(z)` of the scheme with direction `theta` and
// order `k` on `u' = λu`, `z = λΔt`.
//
// # Safety
// `out_re` and `out_im` must point to writable doubles.
enum IeldtmStatus ieldtm_stability_function(double theta,
                                            size_t k,
                                            double z_re,
                                            double z_im,
                                            double *out_re,
                                            double *out_im);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* IELDTM_H */
