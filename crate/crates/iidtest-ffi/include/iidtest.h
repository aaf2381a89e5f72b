/* C ABI for the iidtest time-series i.i.d. testing library. */

#pragma once

/* Generated with cbindgen:0.29.4 */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status of a C API call.
 */
typedef enum IidStatus {
  IID_OK = 0,
  IID_NULL_POINTER = 1,
  IID_INVALID_ARGUMENT = 2,
  IID_DATA_ERROR = 3,
  IID_NUMERICAL_ERROR = 4,
} IidStatus;

/**
 * Simulated model selector.
 */
typedef enum IidModel {
  IID_MODEL_AR1 = 0,
  IID_MODEL_MA1 = 1,
  IID_MODEL_SV = 2,
  IID_MODEL_GARCH = 3,
} IidModel;

/**
 * Innovation law selector.
 */
typedef enum IidInnovations {
  IID_INNOVATIONS_GAUSSIAN = 0,
  IID_INNOVATIONS_LAPLACE = 1,
  IID_INNOVATIONS_LAPLACE_LITERAL = 2,
} IidInnovations;

/**
 * Statistic variant selector.
 */
typedef enum IidVariant {
  IID_VARIANT_PLAIN_T = 0,
  IID_VARIANT_LJUNG_L = 1,
  IID_VARIANT_WHITENED_T = 2,
  IID_VARIANT_WHITENED_L = 3,
} IidVariant;

/**
 * Transform family selector.
 */
typedef enum IidFunctions {
  IID_FUNCTIONS_ID = 0,
  IID_FUNCTIONS_ABS = 1,
  IID_FUNCTIONS_ID_ABS = 2,
  IID_FUNCTIONS_ID_SQUARE = 3,
  IID_FUNCTIONS_TRIG = 4,
} IidFunctions;

/**
 * Contemporaneous matrix used by whitened variants.
 */
typedef enum IidBasis {
  IID_BASIS_CORRELATION = 0,
  IID_BASIS_COVARIANCE = 1,
} IidBasis;

/**
 * Opaque series handle.
 */
typedef struct IidSeries IidSeries;

/**
 * Opaque test result handle.
 */
typedef struct IidTestResult IidTestResult;

/**
 * Message of the most recent failure on this thread. The pointer stays
 * valid until the next failing call on the same thread; never free it.
 */
const char *iid_last_error_message(void);

/**
 * Create a series handle from a buffer of finite values (length >= 2).
 *
 * # Safety
 * `values` must point to `len` readable doubles and `out` must be a valid
 * location for one pointer.
 */
enum IidStatus iid_series_create(const double *values, size_t len, struct IidSeries **out);

/**
 * Free a series handle; a null pointer is a no-op.
 *
 * # Safety
 * `series` must have been returned by this library and not freed before.
 */
void iid_series_free(struct IidSeries *series);

/**
 * Number of observations in the series, or 0 for a null handle.
 *
 * # Safety
 * `series` must be a live handle from this library or null.
 */
size_t iid_series_len(const struct IidSeries *series);

/**
 * Copy the observations into `out`, which must hold at least `capacity`
 * doubles; fails if the series is longer than the buffer.
 *
 * # Safety
 * `series` must be a live handle; `out` must point to `capacity` writable
 * doubles.
 */
enum IidStatus iid_series_copy(const struct IidSeries *series, double *out, size_t capacity);

/**
 * Simulate one of the models into a new series handle. The dependence
 * parameter `a` must lie in (0, 1); GARCH uses the equal-thirds form.
 *
 * # Safety
 * `out` must be a valid location for one pointer.
 */
enum IidStatus iid_simulate(enum IidModel model,
                            double a,
                            enum IidInnovations innovations,
                            size_t n,
                            uint64_t master_seed,
                            uint64_t stream_index,
                            struct IidSeries **out);

/**
 * Run one portmanteau test over the series.
 *
 * `c` is the weighting constant of the L-type variants (use 2 for the
 * classic choice) and `trig_scale` the frequency of the trig family (use 1
 * unless selected).
 *
 * # Safety
 * `series` must be a live handle and `out` a valid location for one
 * pointer.
 */
enum IidStatus iid_test_run(const struct IidSeries *series,
                            enum IidVariant variant,
                            enum IidFunctions functions,
                            size_t lags,
                            double c,
                            double trig_scale,
                            enum IidBasis basis,
                            struct IidTestResult **out);

/**
 * Statistic value, or NaN for a null handle.
 *
 * # Safety
 * `result` must be a live handle from this library or null.
 */
double iid_test_result_statistic(const struct IidTestResult *result);

/**
 * Upper-tail p-value, or NaN for a null handle.
 *
 * # Safety
 * `result` must be a live handle from this library or null.
 */
double iid_test_result_p_value(const struct IidTestResult *result);

/**
 * Chi-squared degrees of freedom, or 0 for a null handle.
 *
 * # Safety
 * `result` must be a live handle from this library or null.
 */
size_t iid_test_result_df(const struct IidTestResult *result);

/**
 * Whether the test rejects at the given significance level; false for a
 * null handle.
 *
 * # Safety
 * `result` must be a live handle from this library or null.
 */
bool iid_test_result_rejects(const struct IidTestResult *result, double alpha);

/**
 * Free a test result handle; a null pointer is a no-op.
 *
 * # Safety
 * `result` must have been returned by this library and not freed before.
 */
void iid_test_result_free(struct IidTestResult *result);
