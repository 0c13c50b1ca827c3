/*
 * plxc: power-law cross-correlations of long- and short-memory process pairs.
 *
 * C interface to the library. Objects are opaque handles created by the
 * library and released with the matching *_free function. Every fallible call
 * returns a plxc_status; on failure plxc_last_error() describes the problem
 * for the calling thread until its next failing call.
 */
#ifndef PLXC_H
#define PLXC_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(PLXC_BUILDING_LIBRARY)
#    define PLXC_API __declspec(dllexport)
#  else
#    define PLXC_API __declspec(dllimport)
#  endif
#else
#  define PLXC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum plxc_status {
  PLXC_OK = 0,
  PLXC_E_INVALID_ARGUMENT = 1,
  PLXC_E_DOMAIN = 2,
  PLXC_E_DEGENERATE_INPUT = 3,
  PLXC_E_SIGN_INSTABILITY = 4,
  PLXC_E_INSUFFICIENT_POINTS = 5,
  PLXC_E_IO = 6,
  PLXC_E_INTEGRITY = 7,
  PLXC_E_PARSE = 8,
  PLXC_E_INTERNAL = 99
} plxc_status;

typedef enum plxc_pair_kind { PLXC_PAIR_ARFIMA_ARFIMA = 0, PLXC_PAIR_ARFIMA_AR = 1 } plxc_pair_kind;

typedef enum plxc_estimator { PLXC_EST_CCF_DECAY = 0, PLXC_EST_CROSS_PERIODOGRAM = 1 } plxc_estimator;

typedef enum plxc_curve_kind {
  PLXC_CURVE_SAMPLE = 0,
  PLXC_CURVE_EXACT_TRUNCATED = 1,
  PLXC_CURVE_ASYMPTOTIC = 2
} plxc_curve_kind;

typedef struct plxc_innovations {
  double sigma_e2;
  double sigma_v2;
  double sigma_ev;
} plxc_innovations;

/* d2 is read for PLXC_PAIR_ARFIMA_ARFIMA, theta for PLXC_PAIR_ARFIMA_AR. */
typedef struct plxc_pair_params {
  plxc_pair_kind kind;
  double d1;
  double d2;
  double theta;
  plxc_innovations innovations;
} plxc_pair_params;

/* burn_in = 0 selects max(length, 2^14). */
typedef struct plxc_sim_config {
  uint64_t length;
  uint64_t burn_in;
  uint64_t seed;
} plxc_sim_config;

typedef struct plxc_hurst_estimate {
  plxc_estimator method;
  double h_xy;
  double slope;
  double slope_stderr;
  double window_lo;
  double window_hi;
  uint64_t n_points;
} plxc_hurst_estimate;

/* Estimator settings; zero fields select the defaults. */
typedef struct plxc_estimator_options {
  int64_t window_lo;
  int64_t window_hi;
  uint64_t bandwidth;
  uint64_t ccf_points;
} plxc_estimator_options;

typedef struct plxc_single_report {
  double theory_h_xy;
  plxc_status ccf_status;
  double ccf_h_xy;
  plxc_status periodogram_status;
  double periodogram_h_xy;
} plxc_single_report;

typedef struct plxc_series_pair plxc_series_pair;
typedef struct plxc_curve plxc_curve;
typedef struct plxc_sweep_config plxc_sweep_config;
typedef struct plxc_sweep_result plxc_sweep_result;

PLXC_API const char* plxc_version(void);
PLXC_API const char* plxc_status_string(plxc_status status);
PLXC_API const char* plxc_last_error(void);
/* Releases strings returned through char** out-parameters. */
PLXC_API void plxc_string_free(char* text);

/* ---- process parameters and scalar functions ---- */

PLXC_API plxc_status plxc_arfima_weights(double d, size_t n_max, double* out /* n_max + 1 values */);
PLXC_API plxc_status plxc_arfima_weight_asymptote(double d, uint64_t j, double* out);
PLXC_API plxc_status plxc_process_std_arfima(double d, double innovation_variance, double* out);
PLXC_API plxc_status plxc_process_std_ar(double theta, double innovation_variance, double* out);
PLXC_API plxc_status plxc_upper_incomplete_gamma(double s, double x, double* out);
PLXC_API plxc_status plxc_combine_hurst(double h_x, double h_y, double* out);
PLXC_API plxc_status plxc_hurst_from_gamma(double gamma_xy, double* out);
PLXC_API plxc_status plxc_theoretical_hxy(const plxc_pair_params* params, double* out);

/* Cross-spectrum of rho_xy(n) = corr(x_t, y_{t+n}) at 0 < lambda <= pi. */
PLXC_API plxc_status plxc_cross_spectrum(const plxc_pair_params* params, double lambda, double* re, double* im);
/* Writes `lambda,re,im` over lambda_j = pi j / points, j = 1..points. */
PLXC_API plxc_status plxc_spectrum_write_csv(const plxc_pair_params* params, size_t points, const char* path);

/* truncation = 0 selects the default; tail_bound may be NULL. */
PLXC_API plxc_status plxc_exact_cross_correlation(const plxc_pair_params* params, int64_t lag, uint64_t truncation,
                                                  double* value, double* tail_bound);
/* ARFIMA pairs only: power-law asymptote at lag >= 1. */
PLXC_API plxc_status plxc_asymptotic_cross_correlation(const plxc_pair_params* params, int64_t lag, double* value);
/* theta^-n Gamma(d1, -n log theta) (-log theta)^-d1. */
PLXC_API plxc_status plxc_closed_form_cross_correlation_arfima_ar(int64_t lag, double d1, double theta,
                                                                  double* value);

/* ---- simulation and series ---- */

PLXC_API plxc_status plxc_simulate(const plxc_pair_params* params, const plxc_sim_config* config,
                                   plxc_series_pair** out);
PLXC_API plxc_status plxc_series_pair_from_arrays(const double* x, const double* y, size_t length,
                                                  plxc_series_pair** out);
PLXC_API size_t plxc_series_pair_length(const plxc_series_pair* pair);
PLXC_API const double* plxc_series_pair_x(const plxc_series_pair* pair);
PLXC_API const double* plxc_series_pair_y(const plxc_series_pair* pair);
/* Returns 1 and fills `params` when the pair carries generating metadata. */
PLXC_API int plxc_series_pair_params(const plxc_series_pair* pair, plxc_pair_params* params);
/* Writes `x,y` CSV plus the `.meta` sidecar when metadata is present. */
PLXC_API plxc_status plxc_series_pair_write_csv(const plxc_series_pair* pair, const char* path);
PLXC_API plxc_status plxc_series_pair_read_csv(const char* path, plxc_series_pair** out);
PLXC_API void plxc_series_pair_free(plxc_series_pair* pair);

/* ---- cross-correlation curves ---- */

PLXC_API plxc_status plxc_sample_cross_correlation(const plxc_series_pair* pair, uint64_t max_lag, plxc_curve** out);
PLXC_API plxc_status plxc_exact_curve(const plxc_pair_params* params, const int64_t* lags, size_t count,
                                      uint64_t truncation, plxc_curve** out);
PLXC_API plxc_status plxc_curve_from_arrays(const int64_t* lags, const double* values, size_t count,
                                            plxc_curve_kind kind, plxc_curve** out);
/* Large-lag approximation at the magnitudes `lags` (all >= 1), placed on the
 * long-memory side: lag n for ARFIMA pairs, lag -n for the ARFIMA/AR pair. */
PLXC_API plxc_status plxc_asymptotic_curve(const plxc_pair_params* params, const int64_t* lags, size_t count,
                                           plxc_curve** out);
/* Exchanges the roles of x and y: lag n becomes -n. */
PLXC_API plxc_status plxc_curve_reflect(const plxc_curve* curve, plxc_curve** out);
PLXC_API size_t plxc_curve_size(const plxc_curve* curve);
PLXC_API plxc_status plxc_curve_get(const plxc_curve* curve, size_t index, int64_t* lag, double* value);
PLXC_API plxc_curve_kind plxc_curve_get_kind(const plxc_curve* curve);
/* Writes `lag,value,kind`. */
PLXC_API plxc_status plxc_curve_write_csv(const plxc_curve* curve, const char* path);
PLXC_API void plxc_curve_free(plxc_curve* curve);

/* ---- Hurst estimation ---- */

PLXC_API plxc_status plxc_estimate_ccf_decay(const plxc_curve* curve, int64_t window_lo, int64_t window_hi,
                                             plxc_hurst_estimate* out);
/* bandwidth = 0 selects floor(sqrt(N)). */
PLXC_API plxc_status plxc_estimate_cross_periodogram(const plxc_series_pair* pair, uint64_t bandwidth,
                                                     plxc_hurst_estimate* out);
/* Runs both estimators the way the sweep does (lag-domain fit on the
 * long-memory side for `kind`). Statuses are reported per estimator. */
PLXC_API plxc_status plxc_estimate_all(const plxc_series_pair* pair, plxc_pair_kind kind,
                                       const plxc_estimator_options* options, plxc_hurst_estimate out[2],
                                       plxc_status status[2]);
/* Writes `method,H_xy,slope_stderr,window_lo,window_hi,n_points`. */
PLXC_API plxc_status plxc_estimates_write_csv(const plxc_hurst_estimate* estimates, size_t count, const char* path);

/* ---- experiments ---- */

/* Writes series, curves, estimates and report.txt into out_dir. */
PLXC_API plxc_status plxc_run_single(const plxc_pair_params* params, const plxc_sim_config* config,
                                     const plxc_estimator_options* options, uint64_t max_lag, const char* out_dir,
                                     plxc_single_report* report);

PLXC_API plxc_status plxc_sweep_config_create(plxc_sweep_config** out);
/* `key = value` lines, '#' comments. */
PLXC_API plxc_status plxc_sweep_config_parse(const char* text, plxc_sweep_config** out);
PLXC_API plxc_status plxc_sweep_config_load(const char* path, plxc_sweep_config** out);
PLXC_API plxc_status plxc_sweep_config_set(plxc_sweep_config* config, const char* key, const char* value);
/* Output path configured with `out`, or NULL. Valid until the next set. */
PLXC_API const char* plxc_sweep_config_output(const plxc_sweep_config* config);
PLXC_API void plxc_sweep_config_free(plxc_sweep_config* config);

PLXC_API plxc_status plxc_run_sweep(const plxc_sweep_config* config, unsigned jobs, plxc_sweep_result** out);
PLXC_API size_t plxc_sweep_result_rows(const plxc_sweep_result* result);
PLXC_API plxc_status plxc_sweep_result_row(const plxc_sweep_result* result, size_t index, plxc_pair_params* params,
                                           plxc_estimator* method, double* theory, double* mean, double* sd);
PLXC_API plxc_status plxc_sweep_result_write_csv(const plxc_sweep_result* result, const char* path);
PLXC_API plxc_status plxc_sweep_result_read_csv(const char* path, plxc_sweep_result** out);
/* Claim summary text (one line per claim); *all_passed is 1 when no claim failed. */
PLXC_API plxc_status plxc_verify_claims(const plxc_sweep_result* result, char** summary, int* all_passed);
PLXC_API void plxc_sweep_result_free(plxc_sweep_result* result);

#ifdef __cplusplus
}
#endif

#endif /* PLXC_H */
