/* C interface to the prwalk persistent-random-walk library. */

#ifndef PRWALK_H
#define PRWALK_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code of every C-API call.
 */
typedef enum PrwStatus {
  PRW_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  PRW_STATUS_NULL_POINTER = 1,
  /**
   * A persistence probability was outside the open unit interval.
   */
  PRW_STATUS_INVALID_PARAMETER = 2,
  /**
   * The requested (x, k) violates the walk-length support constraints.
   */
  PRW_STATUS_OFF_SUPPORT = 3,
  /**
   * Sample statistics outside the admissible region of the estimator.
   */
  PRW_STATUS_INADMISSIBLE = 4,
  /**
   * No interior parameters reproduce the requested (beta, force).
   */
  PRW_STATUS_NO_SOLUTION = 5,
  /**
   * A size or range limit was exceeded.
   */
  PRW_STATUS_TOO_LARGE = 6,
  /**
   * An unexpected internal failure (a bug; never expected).
   */
  PRW_STATUS_INTERNAL = 7,
} PrwStatus;

/**
 * How the pre-walk direction is drawn in [`prw_simulate`].
 */
typedef enum PrwSigma0Mode {
  PRW_SIGMA0_MODE_STATIONARY = 0,
  PRW_SIGMA0_MODE_FORCED_PLUS = 1,
  PRW_SIGMA0_MODE_FORCED_MINUS = 2,
} PrwSigma0Mode;

/**
 * Opaque handle holding validated model parameters.
 */
typedef struct PrwParams PrwParams;

/**
 * Opaque handle holding a computed joint distribution table.
 */
typedef struct PrwPmf PrwPmf;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Validate (eps_r, eps_l) and allocate a parameter handle.
 *
 * # Safety
 * `out` must be a valid pointer; the handle must be released with
 * [`prw_params_free`].
 */
enum PrwStatus prw_params_new(double eps_r, double eps_l, struct PrwParams **out);

/**
 * Release a parameter handle. Null is ignored.
 *
 * # Safety
 * `params` must come from [`prw_params_new`] or [`prw_from_thermo`] and
 * must not be used afterwards.
 */
void prw_params_free(struct PrwParams *params);

/**
 * Read back the two persistence probabilities.
 *
 * # Safety
 * All pointers must be valid.
 */
enum PrwStatus prw_params_get(const struct PrwParams *params, double *eps_r, double *eps_l);

/**
 * Stationary weights of the increment chain.
 *
 * # Safety
 * All pointers must be valid.
 */
enum PrwStatus prw_stationary(const struct PrwParams *params, double *p_plus, double *p_minus);

/**
 * Closed-form mean endpoint after n steps.
 *
 * # Safety
 * All pointers must be valid.
 */
enum PrwStatus prw_mean_x(const struct PrwParams *params, uint32_t n, double *out);

/**
 * Closed-form mean reversal count after n steps.
 *
 * # Safety
 * All pointers must be valid.
 */
enum PrwStatus prw_mean_k(const struct PrwParams *params, uint32_t n, double *out);

/**
 * Joint probability of ending at x with k reversals after n steps.
 * Off-support points return 0 with status Ok.
 *
 * # Safety
 * All pointers must be valid.
 */
enum PrwStatus prw_joint_prob(const struct PrwParams *params,
                              uint32_t n,
                              int64_t x,
                              uint32_t k,
                              double *out);

/**
 * Compute the full joint distribution table for n steps.
 *
 * # Safety
 * `out` must be valid; the handle must be released with [`prw_pmf_free`].
 */
enum PrwStatus prw_pmf_new(const struct PrwParams *params, uint32_t n, struct PrwPmf **out);

/**
 * Release a table handle. Null is ignored.
 *
 * # Safety
 * `pmf` must come from [`prw_pmf_new`] and must not be used afterwards.
 */
void prw_pmf_free(struct PrwPmf *pmf);

/**
 * Number of steps of the table's walk.
 *
 * # Safety
 * `pmf` must be a valid handle.
 */
uint32_t prw_pmf_n(const struct PrwPmf *pmf);

/**
 * Number of stored nonzero entries.
 *
 * # Safety
 * `pmf` must be a valid handle.
 */
uint64_t prw_pmf_len(const struct PrwPmf *pmf);

/**
 * Probability at (x, k); 0 off support.
 *
 * # Safety
 * All pointers must be valid.
 */
enum PrwStatus prw_pmf_prob(const struct PrwPmf *pmf, int64_t x, uint32_t k, double *out);

/**
 * Natural log of the probability at (x, k); -inf off support.
 *
 * # Safety
 * All pointers must be valid.
 */
enum PrwStatus prw_pmf_log_prob(const struct PrwPmf *pmf, int64_t x, uint32_t k, double *out);

/**
 * Sum of all stored probabilities.
 *
 * # Safety
 * All pointers must be valid.
 */
enum PrwStatus prw_pmf_total_mass(const struct PrwPmf *pmf, double *out);

/**
 * Table-summed mean endpoint.
 *
 * # Safety
 * All pointers must be valid.
 */
enum PrwStatus prw_pmf_mean_x(const struct PrwPmf *pmf, double *out);

/**
 * Table-summed mean reversal count.
 *
 * # Safety
 * All pointers must be valid.
 */
enum PrwStatus prw_pmf_mean_k(const struct PrwPmf *pmf, double *out);

/**
 * Exponential-family coordinates of the parameters at walk length n.
 *
 * # Safety
 * All pointers must be valid.
 */
enum PrwStatus prw_to_thermo(const struct PrwParams *params,
                             uint32_t n,
                             double *force,
                             double *beta,
                             double *gamma_b,
                             double *g);

/**
 * Invert (beta, force) back to a parameter handle.
 *
 * # Safety
 * `out` must be valid; the handle must be released with
 * [`prw_params_free`].
 */
enum PrwStatus prw_from_thermo(double beta, double force, struct PrwParams **out);

/**
 * Moment inversion: per-step sample means to parameter estimates.
 *
 * # Safety
 * All pointers must be valid.
 */
enum PrwStatus prw_estimate(double mean_x_per_n, double mean_k_per_n, double *eps_r, double *eps_l);

/**
 * Run `num_walks` seeded walks of `n` steps, filling the caller's arrays
 * (each of length `num_walks`) with sigma_0, endpoint, and reversal
 * count. Deterministic given the seed.
 *
 * # Safety
 * The three output pointers must reference arrays of at least
 * `num_walks` elements.
 */
enum PrwStatus prw_simulate(const struct PrwParams *params,
                            uint32_t n,
                            uint64_t num_walks,
                            uint64_t seed,
                            enum PrwSigma0Mode mode,
                            int8_t *sigma0_out,
                            int64_t *x_out,
                            uint32_t *k_out);

/**
 * Static description of a status code.
 */
const char *prw_status_message(enum PrwStatus status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PRWALK_H */
