#ifndef NABLA_FDE_H
#define NABLA_FDE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code of every fallible call.
 */
typedef enum NfdeStatus {
  NFDE_STATUS_OK = 0,
  NFDE_STATUS_NULL_POINTER = 1,
  NFDE_STATUS_INVALID_ARGUMENT = 2,
  /**
   * The system coefficient lambda must not equal 1.
   */
  NFDE_STATUS_LAMBDA_ONE = 3,
  NFDE_STATUS_INSUFFICIENT_HISTORY = 4,
  NFDE_STATUS_HORIZON_TOO_SHORT = 5,
  /**
   * The series only converges for |lambda| < 1; use the recursive solver.
   */
  NFDE_STATUS_SERIES_NOT_CONVERGENT = 6,
  /**
   * An iteration hit its term cap without settling.
   */
  NFDE_STATUS_NON_CONVERGED = 7,
  NFDE_STATUS_DOMAIN_ERROR = 8,
  NFDE_STATUS_TRANSFORM_POLE = 9,
  /**
   * Output buffer too small for the requested copy.
   */
  NFDE_STATUS_BUFFER_TOO_SMALL = 10,
  /**
   * lambda = 0 has no pole of the form lambda^(1/alpha).
   */
  NFDE_STATUS_NO_POLE = 11,
} NfdeStatus;

/**
 * Solver selection for `nfde_solve`.
 */
typedef enum NfdeMethod {
  /**
   * Recursive when |lambda| >= 0.95 or alpha is integer-adjacent,
   * explicit otherwise.
   */
  NFDE_METHOD_AUTO = 0,
  NFDE_METHOD_EXPLICIT = 1,
  NFDE_METHOD_RECURSIVE = 2,
} NfdeMethod;

/**
 * Zero-input behavior verdict.
 */
typedef enum NfdeVerdict {
  NFDE_VERDICT_DIVERGENT = 0,
  NFDE_VERDICT_CONVERGENT = 1,
  NFDE_VERDICT_MONOTONE_CONVERGENT = 2,
  NFDE_VERDICT_CONVERGENT_POSSIBLE_OVERSHOOT = 3,
  NFDE_VERDICT_CONSTANT = 4,
  NFDE_VERDICT_POLYNOMIAL_DIVERGENT = 5,
  NFDE_VERDICT_OSCILLATING = 6,
  NFDE_VERDICT_ON_BOUNDARY = 7,
} NfdeVerdict;

/**
 * Opaque solved trajectory handle.
 */
typedef struct NfdeResponse NfdeResponse;

/**
 * Opaque system definition handle.
 */
typedef struct NfdeSystem NfdeSystem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates a system handle for `caputo_diff(y) = lambda*y + u` with order
 * `alpha`, origin `a`, and the `n_b = ceil(alpha)` initial conditions `b`.
 *
 * On success writes a handle (free with [`nfde_system_free`]) and returns
 * `Ok`.
 *
 * # Safety
 * `b` must point to `n_b` readable doubles and `out` to a writable pointer
 * slot.
 */
enum NfdeStatus nfde_system_new(double alpha,
                                double lambda,
                                int64_t a,
                                const double *b,
                                size_t n_b,
                                struct NfdeSystem **out);

/**
 * Releases a system handle. Null is ignored.
 *
 * # Safety
 * `sys` must be a pointer returned by [`nfde_system_new`], not yet freed.
 */
void nfde_system_free(struct NfdeSystem *sys);

/**
 * Solves the system over `horizon` steps. `u` may be null for zero input,
 * otherwise it must hold `u_len == horizon` samples on a+1 ..= a+horizon.
 * `tol` is the series tolerance for the explicit path (pass 0 for the
 * default). On success writes a response handle (free with
 * [`nfde_response_free`]).
 *
 * # Safety
 * `sys` must be a live system handle; `u` null or `u_len` readable doubles;
 * `out` a writable pointer slot.
 */
enum NfdeStatus nfde_solve(const struct NfdeSystem *sys,
                           enum NfdeMethod method,
                           const double *u,
                           size_t u_len,
                           size_t horizon,
                           double tol,
                           struct NfdeResponse **out);

/**
 * Number of stored samples (may be shorter than the requested horizon if
 * the trajectory overflowed).
 *
 * # Safety
 * `resp` must be a live response handle.
 */
size_t nfde_response_len(const struct NfdeResponse *resp);

/**
 * The initial instant a; samples cover a+1 ..= a+len.
 *
 * # Safety
 * `resp` must be a live response handle.
 */
int64_t nfde_response_origin(const struct NfdeResponse *resp);

/**
 * Copies the trajectory into `out` (capacity `cap` doubles).
 *
 * # Safety
 * `resp` must be a live response handle and `out` writable for `cap`
 * doubles.
 */
enum NfdeStatus nfde_response_values(const struct NfdeResponse *resp, double *out, size_t cap);

/**
 * True when the march left the f64 range; the offending grid point is
 * written to `at` (if non-null) and the stored trajectory stops before it.
 *
 * # Safety
 * `resp` must be a live response handle; `at` null or writable.
 */
bool nfde_response_overflowed(const struct NfdeResponse *resp, int64_t *at);

/**
 * Releases a response handle. Null is ignored.
 *
 * # Safety
 * `resp` must be a pointer returned by [`nfde_solve`], not yet freed.
 */
void nfde_response_free(struct NfdeResponse *resp);

/**
 * Evaluates the discrete Mittag-Leffler function F_{alpha,beta}(lambda,k,a).
 * Pass `tol <= 0` for the default tolerance. `terms_used` and
 * `truncation_bound` may be null.
 *
 * # Safety
 * `value` must be writable; `terms_used`/`truncation_bound` null or
 * writable.
 */
enum NfdeStatus nfde_ml_eval(double alpha,
                             double beta,
                             double lambda,
                             int64_t a,
                             int64_t k,
                             double tol,
                             double *value,
                             size_t *terms_used,
                             double *truncation_bound);

/**
 * Classifies the zero-input response of (alpha, lambda, b). Pass
 * `boundary_tol <= 0` for the default band.
 *
 * # Safety
 * `b` must point to `n_b` readable doubles and `verdict` be writable.
 */
enum NfdeStatus nfde_classify(double alpha,
                              double lambda,
                              const double *b,
                              size_t n_b,
                              double boundary_tol,
                              enum NfdeVerdict *verdict);

/**
 * The pole lambda^(1/alpha) on the principal branch; `NoPole` for
 * lambda = 0.
 *
 * # Safety
 * `re` and `im` must be writable.
 */
enum NfdeStatus nfde_principal_pole(double alpha, double lambda, double *re, double *im);

/**
 * The |lambda| threshold 2^alpha cos^alpha(pi/alpha) for alpha > 2.
 *
 * # Safety
 * `out` must be writable.
 */
enum NfdeStatus nfde_critical_radius(double alpha, double *out);

/**
 * Static description of a status code. Never null; do not free.
 */
const char *nfde_status_message(enum NfdeStatus status);

/**
 * Static name of a verdict. Never null; do not free.
 */
const char *nfde_verdict_name(enum NfdeVerdict verdict);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NABLA_FDE_H */
