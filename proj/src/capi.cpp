#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "plxc.h"
#include "plxc/arfima.hpp"
#include "plxc/correlation.hpp"
#include "plxc/harness.hpp"
#include "plxc/hurst.hpp"
#include "plxc/io.hpp"
#include "plxc/special.hpp"

struct plxc_series_pair {
  plxc::SeriesPair pair;
};

struct plxc_curve {
  plxc::CrossCorrelationCurve curve;
};

struct plxc_sweep_config {
  plxc::SweepConfig config;
  std::string output;
};

struct plxc_sweep_result {
  plxc::SweepResult result;
};

namespace {

thread_local std::string last_error;

plxc_status to_status(plxc::ErrorCode code) {
  switch (code) {
    case plxc::ErrorCode::invalid_argument:
      return PLXC_E_INVALID_ARGUMENT;
    case plxc::ErrorCode::domain:
      return PLXC_E_DOMAIN;
    case plxc::ErrorCode::degenerate_input:
      return PLXC_E_DEGENERATE_INPUT;
    case plxc::ErrorCode::sign_instability:
      return PLXC_E_SIGN_INSTABILITY;
    case plxc::ErrorCode::insufficient_points:
      return PLXC_E_INSUFFICIENT_POINTS;
    case plxc::ErrorCode::io:
      return PLXC_E_IO;
    case plxc::ErrorCode::integrity:
      return PLXC_E_INTEGRITY;
    case plxc::ErrorCode::parse:
      return PLXC_E_PARSE;
  }
  return PLXC_E_INTERNAL;
}

template <typename F>
plxc_status guarded(F&& body) noexcept {
  try {
    body();
    return PLXC_OK;
  } catch (const plxc::Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return PLXC_E_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return PLXC_E_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return PLXC_E_INTERNAL;
  }
}

template <typename... Ptr>
void require_non_null(const Ptr*... ptrs) {
  const bool ok = ((ptrs != nullptr) && ...);
  plxc::require(ok, plxc::ErrorCode::invalid_argument, "null pointer argument");
}

plxc::PairParams from_c(const plxc_pair_params& p) {
  plxc::require(p.kind == PLXC_PAIR_ARFIMA_ARFIMA || p.kind == PLXC_PAIR_ARFIMA_AR,
                plxc::ErrorCode::invalid_argument, "unknown pair kind");
  plxc::PairParams out;
  out.kind = p.kind == PLXC_PAIR_ARFIMA_AR ? plxc::PairKind::arfima_ar : plxc::PairKind::arfima_arfima;
  out.d1 = p.d1;
  out.d2 = p.d2;
  out.theta = p.theta;
  out.innovations = {p.innovations.sigma_e2, p.innovations.sigma_v2, p.innovations.sigma_ev};
  return out;
}

plxc_pair_params to_c(const plxc::PairParams& p) {
  plxc_pair_params out{};
  out.kind = p.kind == plxc::PairKind::arfima_ar ? PLXC_PAIR_ARFIMA_AR : PLXC_PAIR_ARFIMA_ARFIMA;
  out.d1 = p.d1;
  out.d2 = p.d2;
  out.theta = p.theta;
  out.innovations = {p.innovations.sigma_e2, p.innovations.sigma_v2, p.innovations.sigma_ev};
  return out;
}

plxc::SimulationConfig from_c(const plxc_sim_config& c) { return {c.length, c.burn_in, c.seed}; }

plxc::EstimatorOptions from_c(const plxc_estimator_options* o) {
  plxc::EstimatorOptions out;
  if (o == nullptr) return out;
  if (o->window_lo != 0 || o->window_hi != 0) out.window = plxc::LagWindow{o->window_lo, o->window_hi};
  out.bandwidth = o->bandwidth;
  if (o->ccf_points != 0) out.ccf_points = o->ccf_points;
  return out;
}

plxc_estimator to_c(plxc::EstimatorMethod m) {
  return m == plxc::EstimatorMethod::ccf_decay ? PLXC_EST_CCF_DECAY : PLXC_EST_CROSS_PERIODOGRAM;
}

plxc::EstimatorMethod from_c(plxc_estimator m) {
  return m == PLXC_EST_CCF_DECAY ? plxc::EstimatorMethod::ccf_decay : plxc::EstimatorMethod::cross_periodogram;
}

plxc_hurst_estimate to_c(const plxc::HurstEstimate& e) {
  return {to_c(e.method), e.hxy, e.slope, e.slope_stderr, e.window_lo, e.window_hi, e.n_points};
}

plxc::HurstEstimate from_c(const plxc_hurst_estimate& e) {
  return {e.h_xy, from_c(e.method), e.window_lo, e.window_hi, e.slope, e.slope_stderr, e.n_points};
}

plxc::CurveKind from_c(plxc_curve_kind k) {
  switch (k) {
    case PLXC_CURVE_SAMPLE:
      return plxc::CurveKind::sample;
    case PLXC_CURVE_EXACT_TRUNCATED:
      return plxc::CurveKind::exact_truncated;
    case PLXC_CURVE_ASYMPTOTIC:
      return plxc::CurveKind::asymptotic;
  }
  plxc::fail(plxc::ErrorCode::invalid_argument, "unknown curve kind");
}

char* copy_string(const std::string& s) {
  auto* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* plxc_version(void) { return "1.0.0"; }

const char* plxc_status_string(plxc_status status) {
  switch (status) {
    case PLXC_OK:
      return "ok";
    case PLXC_E_INVALID_ARGUMENT:
      return "invalid argument";
    case PLXC_E_DOMAIN:
      return "domain error";
    case PLXC_E_DEGENERATE_INPUT:
      return "degenerate input";
    case PLXC_E_SIGN_INSTABILITY:
      return "sign instability";
    case PLXC_E_INSUFFICIENT_POINTS:
      return "insufficient points";
    case PLXC_E_IO:
      return "i/o error";
    case PLXC_E_INTEGRITY:
      return "integrity failure";
    case PLXC_E_PARSE:
      return "parse error";
    case PLXC_E_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

const char* plxc_last_error(void) { return last_error.c_str(); }

void plxc_string_free(char* text) { std::free(text); }

plxc_status plxc_arfima_weights(double d, size_t n_max, double* out) {
  return guarded([&] {
    require_non_null(out);
    const auto w = plxc::arfima_weights(plxc::FracDiffOrder(d), n_max);
    std::copy(w.begin(), w.end(), out);
  });
}

plxc_status plxc_arfima_weight_asymptote(double d, uint64_t j, double* out) {
  return guarded([&] {
    require_non_null(out);
    *out = plxc::arfima_weight_asymptote(plxc::FracDiffOrder(d), j);
  });
}

plxc_status plxc_process_std_arfima(double d, double innovation_variance, double* out) {
  return guarded([&] {
    require_non_null(out);
    *out = plxc::process_std(plxc::FracDiffOrder(d), innovation_variance);
  });
}

plxc_status plxc_process_std_ar(double theta, double innovation_variance, double* out) {
  return guarded([&] {
    require_non_null(out);
    *out = plxc::process_std(plxc::ArCoefficient(theta), innovation_variance);
  });
}

plxc_status plxc_upper_incomplete_gamma(double s, double x, double* out) {
  return guarded([&] {
    require_non_null(out);
    *out = plxc::upper_incomplete_gamma(s, x);
  });
}

plxc_status plxc_combine_hurst(double h_x, double h_y, double* out) {
  return guarded([&] {
    require_non_null(out);
    *out = plxc::combine_hurst(h_x, h_y);
  });
}

plxc_status plxc_hurst_from_gamma(double gamma_xy, double* out) {
  return guarded([&] {
    require_non_null(out);
    *out = plxc::hurst_from_gamma(gamma_xy);
  });
}

plxc_status plxc_theoretical_hxy(const plxc_pair_params* params, double* out) {
  return guarded([&] {
    require_non_null(params, out);
    *out = plxc::theoretical_hxy(from_c(*params));
  });
}

plxc_status plxc_cross_spectrum(const plxc_pair_params* params, double lambda, double* re, double* im) {
  return guarded([&] {
    require_non_null(params, re, im);
    const auto f = plxc::cross_spectrum(from_c(*params), lambda);
    *re = f.real();
    *im = f.imag();
  });
}

plxc_status plxc_spectrum_write_csv(const plxc_pair_params* params, size_t points, const char* path) {
  return guarded([&] {
    require_non_null(params, path);
    plxc::require(points >= 1, plxc::ErrorCode::invalid_argument, "spectrum grid needs at least one point");
    const auto p = from_c(*params);
    std::vector<plxc::SpectrumPoint> grid;
    grid.reserve(points);
    for (size_t j = 1; j <= points; ++j) {
      const double lambda = std::numbers::pi * static_cast<double>(j) / static_cast<double>(points);
      grid.push_back({lambda, plxc::cross_spectrum(p, lambda)});
    }
    plxc::io::write_text(path, plxc::io::format_spectrum(grid));
  });
}

plxc_status plxc_exact_cross_correlation(const plxc_pair_params* params, int64_t lag, uint64_t truncation,
                                         double* value, double* tail_bound) {
  return guarded([&] {
    require_non_null(params, value);
    const auto p = from_c(*params);
    p.validate();
    const auto r = p.kind == plxc::PairKind::arfima_arfima
                       ? plxc::exact_cross_correlation_arfima(lag, p.first(), p.second_order(), p.innovations,
                                                              truncation)
                       : plxc::exact_cross_correlation_arfima_ar(lag, p.first(), p.second_ar(), p.innovations,
                                                                 truncation);
    *value = r.value;
    if (tail_bound != nullptr) *tail_bound = r.tail_bound;
  });
}

plxc_status plxc_asymptotic_cross_correlation(const plxc_pair_params* params, int64_t lag, double* value) {
  return guarded([&] {
    require_non_null(params, value);
    const auto p = from_c(*params);
    p.validate();
    plxc::require(p.kind == plxc::PairKind::arfima_arfima, plxc::ErrorCode::domain,
                  "the power-law asymptote with explicit constant applies to ARFIMA pairs");
    *value = plxc::asymptotic_cross_correlation_arfima(lag, p.first(), p.second_order(), p.innovations);
  });
}

plxc_status plxc_closed_form_cross_correlation_arfima_ar(int64_t lag, double d1, double theta, double* value) {
  return guarded([&] {
    require_non_null(value);
    *value = plxc::closed_form_cross_correlation_arfima_ar(lag, d1, theta);
  });
}

plxc_status plxc_simulate(const plxc_pair_params* params, const plxc_sim_config* config, plxc_series_pair** out) {
  return guarded([&] {
    require_non_null(params, config, out);
    *out = new plxc_series_pair{plxc::simulate(from_c(*params), from_c(*config))};
  });
}

plxc_status plxc_series_pair_from_arrays(const double* x, const double* y, size_t length, plxc_series_pair** out) {
  return guarded([&] {
    require_non_null(x, y, out);
    *out = new plxc_series_pair{plxc::SeriesPair(std::vector<double>(x, x + length), std::vector<double>(y, y + length))};
  });
}

size_t plxc_series_pair_length(const plxc_series_pair* pair) { return pair == nullptr ? 0 : pair->pair.size(); }

const double* plxc_series_pair_x(const plxc_series_pair* pair) {
  return pair == nullptr ? nullptr : pair->pair.x().data();
}

const double* plxc_series_pair_y(const plxc_series_pair* pair) {
  return pair == nullptr ? nullptr : pair->pair.y().data();
}

int plxc_series_pair_params(const plxc_series_pair* pair, plxc_pair_params* params) {
  if (pair == nullptr || params == nullptr || !pair->pair.meta()) return 0;
  *params = to_c(pair->pair.meta()->params);
  return 1;
}

plxc_status plxc_series_pair_write_csv(const plxc_series_pair* pair, const char* path) {
  return guarded([&] {
    require_non_null(pair, path);
    plxc::io::write_series(pair->pair, path);
  });
}

plxc_status plxc_series_pair_read_csv(const char* path, plxc_series_pair** out) {
  return guarded([&] {
    require_non_null(path, out);
    *out = new plxc_series_pair{plxc::io::read_series(path)};
  });
}

void plxc_series_pair_free(plxc_series_pair* pair) { delete pair; }

plxc_status plxc_sample_cross_correlation(const plxc_series_pair* pair, uint64_t max_lag, plxc_curve** out) {
  return guarded([&] {
    require_non_null(pair, out);
    *out = new plxc_curve{plxc::sample_cross_correlation(pair->pair, max_lag)};
  });
}

plxc_status plxc_exact_curve(const plxc_pair_params* params, const int64_t* lags, size_t count, uint64_t truncation,
                             plxc_curve** out) {
  return guarded([&] {
    require_non_null(params, lags, out);
    *out = new plxc_curve{plxc::exact_curve(from_c(*params), std::span(lags, count), truncation)};
  });
}

plxc_status plxc_asymptotic_curve(const plxc_pair_params* params, const int64_t* lags, size_t count,
                                  plxc_curve** out) {
  return guarded([&] {
    require_non_null(params, lags, out);
    *out = new plxc_curve{plxc::asymptotic_curve(from_c(*params), std::span(lags, count))};
  });
}

plxc_status plxc_curve_from_arrays(const int64_t* lags, const double* values, size_t count, plxc_curve_kind kind,
                                   plxc_curve** out) {
  return guarded([&] {
    require_non_null(lags, values, out);
    plxc::CrossCorrelationCurve curve{{lags, lags + count}, {values, values + count}, from_c(kind), 1.0, 1.0};
    curve.validate();
    *out = new plxc_curve{std::move(curve)};
  });
}

plxc_status plxc_curve_reflect(const plxc_curve* curve, plxc_curve** out) {
  return guarded([&] {
    require_non_null(curve, out);
    *out = new plxc_curve{curve->curve.reflected()};
  });
}

size_t plxc_curve_size(const plxc_curve* curve) { return curve == nullptr ? 0 : curve->curve.size(); }

plxc_status plxc_curve_get(const plxc_curve* curve, size_t index, int64_t* lag, double* value) {
  return guarded([&] {
    require_non_null(curve, lag, value);
    plxc::require(index < curve->curve.size(), plxc::ErrorCode::invalid_argument, "curve index out of range");
    *lag = curve->curve.lags[index];
    *value = curve->curve.values[index];
  });
}

plxc_curve_kind plxc_curve_get_kind(const plxc_curve* curve) {
  if (curve == nullptr) return PLXC_CURVE_SAMPLE;
  switch (curve->curve.kind) {
    case plxc::CurveKind::sample:
      return PLXC_CURVE_SAMPLE;
    case plxc::CurveKind::exact_truncated:
      return PLXC_CURVE_EXACT_TRUNCATED;
    case plxc::CurveKind::asymptotic:
      return PLXC_CURVE_ASYMPTOTIC;
  }
  return PLXC_CURVE_SAMPLE;
}

plxc_status plxc_curve_write_csv(const plxc_curve* curve, const char* path) {
  return guarded([&] {
    require_non_null(curve, path);
    plxc::io::write_curve(curve->curve, path);
  });
}

void plxc_curve_free(plxc_curve* curve) { delete curve; }

plxc_status plxc_estimate_ccf_decay(const plxc_curve* curve, int64_t window_lo, int64_t window_hi,
                                    plxc_hurst_estimate* out) {
  return guarded([&] {
    require_non_null(curve, out);
    *out = to_c(plxc::estimate_hxy_ccf_decay(curve->curve, {window_lo, window_hi}));
  });
}

plxc_status plxc_estimate_cross_periodogram(const plxc_series_pair* pair, uint64_t bandwidth,
                                            plxc_hurst_estimate* out) {
  return guarded([&] {
    require_non_null(pair, out);
    *out = to_c(plxc::estimate_hxy_cross_periodogram(pair->pair, bandwidth));
  });
}

plxc_status plxc_estimate_all(const plxc_series_pair* pair, plxc_pair_kind kind, const plxc_estimator_options* options,
                              plxc_hurst_estimate out[2], plxc_status status[2]) {
  return guarded([&] {
    require_non_null(pair, out, status);
    const auto k = kind == PLXC_PAIR_ARFIMA_AR ? plxc::PairKind::arfima_ar : plxc::PairKind::arfima_arfima;
    const auto outcomes = plxc::run_estimators(
        pair->pair, k, {plxc::EstimatorMethod::ccf_decay, plxc::EstimatorMethod::cross_periodogram}, from_c(options));
    for (size_t i = 0; i < 2; ++i) {
      out[i] = plxc_hurst_estimate{};
      out[i].method = to_c(outcomes[i].method);
      if (outcomes[i].estimate) {
        out[i] = to_c(*outcomes[i].estimate);
        status[i] = PLXC_OK;
      } else {
        status[i] = to_status(*outcomes[i].error);
        last_error = outcomes[i].message;
      }
    }
  });
}

plxc_status plxc_estimates_write_csv(const plxc_hurst_estimate* estimates, size_t count, const char* path) {
  return guarded([&] {
    require_non_null(path);
    plxc::require(count == 0 || estimates != nullptr, plxc::ErrorCode::invalid_argument, "null estimates");
    std::vector<plxc::HurstEstimate> rows;
    for (size_t i = 0; i < count; ++i) rows.push_back(from_c(estimates[i]));
    plxc::io::write_text(path, plxc::io::format_estimates(rows));
  });
}

plxc_status plxc_run_single(const plxc_pair_params* params, const plxc_sim_config* config,
                            const plxc_estimator_options* options, uint64_t max_lag, const char* out_dir,
                            plxc_single_report* report) {
  return guarded([&] {
    require_non_null(params, config, out_dir);
    const plxc::SingleRunConfig cfg{from_c(*params), from_c(*config), from_c(options), max_lag};
    const auto r = plxc::run_single(cfg, out_dir);
    if (report == nullptr) return;
    *report = plxc_single_report{r.theory, PLXC_OK, 0.0, PLXC_OK, 0.0};
    for (const auto& o : r.outcomes) {
      const plxc_status s = o.estimate ? PLXC_OK : to_status(*o.error);
      const double h = o.estimate ? o.estimate->hxy : 0.0;
      if (o.method == plxc::EstimatorMethod::ccf_decay) {
        report->ccf_status = s;
        report->ccf_h_xy = h;
      } else {
        report->periodogram_status = s;
        report->periodogram_h_xy = h;
      }
    }
  });
}

plxc_status plxc_sweep_config_create(plxc_sweep_config** out) {
  return guarded([&] {
    require_non_null(out);
    *out = new plxc_sweep_config{};
  });
}

plxc_status plxc_sweep_config_parse(const char* text, plxc_sweep_config** out) {
  return guarded([&] {
    require_non_null(text, out);
    auto cfg = plxc::parse_sweep_config(text);
    auto output = cfg.output.string();
    *out = new plxc_sweep_config{std::move(cfg), std::move(output)};
  });
}

plxc_status plxc_sweep_config_load(const char* path, plxc_sweep_config** out) {
  return guarded([&] {
    require_non_null(path, out);
    auto cfg = plxc::parse_sweep_config(plxc::io::read_text(path));
    auto output = cfg.output.string();
    *out = new plxc_sweep_config{std::move(cfg), std::move(output)};
  });
}

plxc_status plxc_sweep_config_set(plxc_sweep_config* config, const char* key, const char* value) {
  return guarded([&] {
    require_non_null(config, key, value);
    config->config.set(key, value);
    config->output = config->config.output.string();
  });
}

const char* plxc_sweep_config_output(const plxc_sweep_config* config) {
  if (config == nullptr || config->output.empty()) return nullptr;
  return config->output.c_str();
}

void plxc_sweep_config_free(plxc_sweep_config* config) { delete config; }

plxc_status plxc_run_sweep(const plxc_sweep_config* config, unsigned jobs, plxc_sweep_result** out) {
  return guarded([&] {
    require_non_null(config, out);
    *out = new plxc_sweep_result{plxc::run_sweep(config->config, jobs)};
  });
}

size_t plxc_sweep_result_rows(const plxc_sweep_result* result) {
  return result == nullptr ? 0 : result->result.rows.size();
}

plxc_status plxc_sweep_result_row(const plxc_sweep_result* result, size_t index, plxc_pair_params* params,
                                  plxc_estimator* method, double* theory, double* mean, double* sd) {
  return guarded([&] {
    require_non_null(result);
    plxc::require(index < result->result.rows.size(), plxc::ErrorCode::invalid_argument, "row index out of range");
    const auto& row = result->result.rows[index];
    if (params != nullptr) *params = to_c(row.params);
    if (method != nullptr) *method = to_c(row.method);
    if (theory != nullptr) *theory = row.theory;
    if (mean != nullptr) *mean = row.mean;
    if (sd != nullptr) *sd = row.sd;
  });
}

plxc_status plxc_sweep_result_write_csv(const plxc_sweep_result* result, const char* path) {
  return guarded([&] {
    require_non_null(result, path);
    plxc::io::write_text(path, plxc::format_sweep_result(result->result));
  });
}

plxc_status plxc_sweep_result_read_csv(const char* path, plxc_sweep_result** out) {
  return guarded([&] {
    require_non_null(path, out);
    *out = new plxc_sweep_result{plxc::parse_sweep_result(plxc::io::read_text(path))};
  });
}

plxc_status plxc_verify_claims(const plxc_sweep_result* result, char** summary, int* all_passed) {
  return guarded([&] {
    require_non_null(result, summary, all_passed);
    const auto claims = plxc::verify_claims(result->result);
    *summary = copy_string(claims.format());
    *all_passed = claims.all_passed() ? 1 : 0;
  });
}

void plxc_sweep_result_free(plxc_sweep_result* result) { delete result; }

}  // extern "C"
