#ifndef FTL_H
#define FTL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum FtlStatus {
  FTL_STATUS_OK = 0,
  FTL_STATUS_NULL_POINTER = 1,
  FTL_STATUS_DOMAIN = 2,
  FTL_STATUS_RANGE = 3,
  FTL_STATUS_PARAMS = 4,
  FTL_STATUS_EMPTY = 5,
  FTL_STATUS_INSUFFICIENT_DATA = 6,
  FTL_STATUS_PROBABILITY_MASS = 7,
  FTL_STATUS_MODE = 8,
  FTL_STATUS_CROSSING = 9,
} FtlStatus;

/**
 * Discount curve parameters `(h, rho)`.
 */
typedef struct FtlDiscount FtlDiscount;

/**
 * Membership function parameters.
 */
typedef struct FtlMembership FtlMembership;

/**
 * Prospect S-curve parameters `(p, rho)`.
 */
typedef struct FtlSCurve FtlSCurve;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the last error message of this thread into `buf` (NUL-terminated,
 * truncated to `len - 1` bytes). Returns the full message length in bytes,
 * excluding the terminator.
 */
size_t ftl_last_error_message(char *buf, size_t len);

/**
 * Generalized exponential `(1 + h a)^(1/h)`.
 */
enum FtlStatus ftl_gexp(double h, double a, double *out);

/**
 * Generalized logarithm, the inverse of [`ftl_gexp`] in its argument.
 */
enum FtlStatus ftl_glog(double p, double v, double *out);

enum FtlStatus ftl_meiotic_change(double x, double s, double *out);

enum FtlStatus ftl_hyperbolic_change(double y, double s, double *out);

enum FtlStatus ftl_membership_new(double alpha, double beta, struct FtlMembership **out);

/**
 * The default membership function.
 */
struct FtlMembership *ftl_membership_default(void);

void ftl_membership_free(struct FtlMembership *handle);

/**
 * Degree of membership of the change `x`.
 */
enum FtlStatus ftl_membership_degree(const struct FtlMembership *handle, double x, double *out);

enum FtlStatus ftl_discount_new(double h, double rho, struct FtlDiscount **out);

/**
 * Discount parameters implied by arbitrage between a small reward (sense
 * `s_small`, `n` trials) and a large one (sense `s_large`).
 */
enum FtlStatus ftl_discount_from_arbitrage(double s_small,
                                           double s_large,
                                           double n,
                                           double kappa,
                                           double wealth,
                                           struct FtlDiscount **out);

/**
 * Least-squares fit to `len` `(delays[i], factors[i])` points. The residual
 * is written to `residual` when it is not null.
 */
enum FtlStatus ftl_discount_fit(const double *delays,
                                const double *factors,
                                size_t len,
                                struct FtlDiscount **out,
                                double *residual);

void ftl_discount_free(struct FtlDiscount *handle);

enum FtlStatus ftl_discount_params(const struct FtlDiscount *handle, double *h, double *rho);

/**
 * Discount factor after `n` periods.
 */
enum FtlStatus ftl_discount_eval(const struct FtlDiscount *handle, double n, double *out);

enum FtlStatus ftl_annualized_rate(double now, double later, double years, double *out);

enum FtlStatus ftl_scurve_new(double p, double rho, struct FtlSCurve **out);

void ftl_scurve_free(struct FtlSCurve *handle);

enum FtlStatus ftl_scurve_eval(const struct FtlSCurve *handle, double x, double *out);

/**
 * Loss below which the S-curve turns risk seeking. `found` is set to 0 and
 * `out` left untouched when there is no interior crossover.
 */
enum FtlStatus ftl_scurve_crossover(const struct FtlSCurve *handle, double *out, bool *found);

/**
 * Sets `delayed` to whether `large` after `trials` periods beats `small` now.
 */
enum FtlStatus ftl_prefer_delayed(const struct FtlMembership *membership,
                                  double small,
                                  double large,
                                  double wealth,
                                  double small_sense,
                                  double large_sense,
                                  double trials,
                                  bool *delayed);

/**
 * Geometric time-average growth factor of a gamble paying `x` with
 * probability `p` each period.
 */
enum FtlStatus ftl_simulate_time_average(double x,
                                         double p,
                                         uint64_t periods,
                                         uint64_t seed,
                                         double *out);

/**
 * Per-period change of `x1` with probability `p` or `x2` with probability `q`.
 */
enum FtlStatus ftl_disjunction_change(double x1, double p, double x2, double q, double *out);

/**
 * Change needed to undo the change `x`.
 */
enum FtlStatus ftl_restore_change(double x, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FTL_H */
