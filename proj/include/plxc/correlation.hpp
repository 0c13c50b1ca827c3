#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "plxc/types.hpp"

namespace plxc {

// Lag convention throughout: rho_xy(n) = corr(x_t, y_{t+n}), so
// rho_xy(n) = rho_yx(-n).

enum class CurveKind { sample, exact_truncated, asymptotic };

std::string_view to_string(CurveKind kind);
CurveKind curve_kind_from_string(std::string_view text);

struct CrossCorrelationCurve {
  std::vector<std::int64_t> lags;  // strictly increasing
  std::vector<double> values;
  CurveKind kind = CurveKind::sample;
  double sigma_x = 1.0;
  double sigma_y = 1.0;

  std::size_t size() const noexcept { return lags.size(); }
  void validate() const;
  /// The curve of the exchanged pair: lag n becomes -n.
  CrossCorrelationCurve reflected() const;
};

struct SpectrumPoint {
  double lambda = 0.0;
  std::complex<double> value;
};

/// Result of a truncated lag sum with a bound on the neglected tail (same
/// normalization as the value).
struct TruncatedSum {
  double value = 0.0;
  double tail_bound = 0.0;
  std::uint64_t terms = 0;
};

/// Standard deviation of ARFIMA(0,d,0): sigma * sqrt(Gamma(1-2d)) / Gamma(1-d).
double process_std(FracDiffOrder d, double innovation_variance);
/// Standard deviation of AR(1): sigma / sqrt(1 - theta^2).
double process_std(ArCoefficient theta, double innovation_variance);

double sigma_x(const PairParams& params);
double sigma_y(const PairParams& params);

/// f_xy(lambda) = sigma_ev/(2 pi) (1 - e^{i lambda})^{-d1} (1 - e^{-i lambda})^{-d2}, 0 < lambda <= pi.
std::complex<double> cross_spectrum_arfima(FracDiffOrder d1, FracDiffOrder d2, const InnovationSpec& spec,
                                           double lambda);
/// Spectrum of the ARFIMA/AR(1) pair in the orientation used by the
/// literature: sigma_ev/(2 pi) (1 - e^{-i lambda})^{-d1} (1 - theta e^{i lambda})^{-1}.
/// This is the conjugate of the spectrum of corr(x_t, y_{t+n}).
std::complex<double> cross_spectrum_arfima_ar(FracDiffOrder d1, ArCoefficient theta, const InnovationSpec& spec,
                                              double lambda);
/// Cross-spectrum of rho_xy(n) under the module lag convention, i.e.
/// rho_xy(n) sigma_x sigma_y = integral_{-pi}^{pi} f(lambda) e^{i n lambda} d lambda.
std::complex<double> cross_spectrum(const PairParams& params, double lambda);

/// max(10^6, 1000 |n|).
std::uint64_t default_truncation(std::int64_t n);

/// rho_xy(n) = sigma_ev / (sigma_x sigma_y) sum_k a_k(d1) a_{n+k}(d2) summed over
/// k < K (K = 0 selects default_truncation). For n < 0 the roles of the
/// weights exchange.
TruncatedSum exact_cross_correlation_arfima(std::int64_t n, FracDiffOrder d1, FracDiffOrder d2,
                                            const InnovationSpec& spec, std::uint64_t truncation = 0);

/// Default truncation for the AR(1) pair: theta^K below the smallest double.
std::uint64_t default_truncation_ar(ArCoefficient theta);

/// rho_xy(n) for the ARFIMA x / AR(1) y pair:
///   n >= 0: sigma_ev/(sigma_x sigma_y) theta^n sum_k a_k(d1) theta^k
///   n <  0: sigma_ev/(sigma_x sigma_y) sum_k a_{|n|+k}(d1) theta^k   (long-memory side)
TruncatedSum exact_cross_correlation_arfima_ar(std::int64_t n, FracDiffOrder d1, ArCoefficient theta,
                                               const InnovationSpec& spec, std::uint64_t truncation = 0);

/// Gamma(1 - d1 - d2) / (Gamma(1 - d2) Gamma(d2)).
double asymptotic_constant_arfima(double d1, double d2);

/// Large-lag power law sigma_ev Gamma(1-d1-d2) / (sigma_x sigma_y Gamma(1-d2) Gamma(d2)) n^{d1+d2-1}
/// for n >= 1, d1 > 0, d2 > 0, d1 + d2 < 1.
double asymptotic_cross_correlation_arfima(std::int64_t n, FracDiffOrder d1, FracDiffOrder d2,
                                           const InnovationSpec& spec);

/// theta^{-n} Gamma(d1, -n log theta) (-log theta)^{-d1}; proportional to the
/// long-memory side of the ARFIMA/AR(1) cross-correlation. Requires
/// 0 < theta < 1, d1 > 0, n >= 1. d1 is not restricted to (0, 0.5).
double closed_form_cross_correlation_arfima_ar(std::int64_t n, double d1, double theta);
double log_closed_form_cross_correlation_arfima_ar(std::int64_t n, double d1, double theta);

/// rho_xy(n) recovered from cross_spectrum() by quadrature,
///   2 Re integral_0^pi f(lambda) e^{i n lambda} d lambda / (sigma_x sigma_y),
/// on the graded mesh lambda_j = pi (j / cells)^2 with Gauss-Legendre per cell.
double cross_correlation_from_spectrum(const PairParams& params, std::int64_t n, std::size_t cells = 400);

/// Exact truncated curve over the given lags (any kind of pair).
CrossCorrelationCurve exact_curve(const PairParams& params, std::span<const std::int64_t> lags,
                                  std::uint64_t truncation = 0);

/// Large-lag approximation on the long-memory side, evaluated at the positive
/// magnitudes `lags`. For arfima_arfima the curve holds
/// asymptotic_cross_correlation_arfima at lags n. For arfima_ar it holds lags -n
/// with the integral approximation sigma_ev / (sigma_x sigma_y Gamma(d1)) *
/// closed_form(n). The integral replaces sum_k theta^k = 1/(1 - theta) by
/// 1/(-log theta), so exact ~ curve * (-log theta) / (1 - theta) at large n.
CrossCorrelationCurve asymptotic_curve(const PairParams& params, std::span<const std::int64_t> lags);

/// Biased sample cross-correlation over lags -max_lag..max_lag,
///   sum_t (x_t - xbar)(y_{t+n} - ybar) / sqrt(Sxx Syy),
/// which equals the divisor-N form with biased standard deviations.
CrossCorrelationCurve sample_cross_correlation(const SeriesPair& pair, std::uint64_t max_lag);
/// Same estimator on an explicit, strictly increasing lag list.
CrossCorrelationCurve sample_cross_correlation_at(const SeriesPair& pair, std::span<const std::int64_t> lags);

/// Integer lags log-spaced over [lo, hi], rounded and deduplicated.
std::vector<std::int64_t> log_spaced_lags(std::int64_t lo, std::int64_t hi, std::size_t count);

}  // namespace plxc
