#pragma once

#include <cstdint>
#include <string_view>

#include "plxc/correlation.hpp"
#include "plxc/types.hpp"

namespace plxc {

/// One memory parameter in its three equivalent forms. H is stored; d and
/// gamma are derived from it on access.
class HurstRelation {
 public:
  static HurstRelation from_hurst(double hurst);
  static HurstRelation from_d(double d);
  static HurstRelation from_gamma(double gamma);

  double hurst() const noexcept { return hurst_; }
  double d() const noexcept { return hurst_ - 0.5; }
  double gamma() const noexcept { return 2.0 - 2.0 * hurst_; }

 private:
  explicit HurstRelation(double hurst) : hurst_(hurst) {}
  double hurst_;
};

/// (H_x + H_y) / 2, both arguments in (0, 1).
double combine_hurst(double hurst_x, double hurst_y);

/// 1 - gamma/2 for 0 < gamma < 2.
double hurst_from_gamma(double gamma_xy);

/// Theoretical bivariate exponent of a process pair: (H_x + H_y)/2 with
/// H_y = 0.5 for the AR(1) member.
double theoretical_hxy(const PairParams& params);

enum class EstimatorMethod { ccf_decay, cross_periodogram };

std::string_view to_string(EstimatorMethod method);
EstimatorMethod estimator_from_string(std::string_view text);

struct HurstEstimate {
  double hxy = 0.0;
  EstimatorMethod method = EstimatorMethod::ccf_decay;
  double window_lo = 0.0;
  double window_hi = 0.0;
  double slope = 0.0;
  double slope_stderr = 0.0;
  std::uint64_t n_points = 0;
};

struct LagWindow {
  std::int64_t lo = 10;
  std::int64_t hi = 1000;
};

/// [10, min(N/50, 1000)].
LagWindow default_ccf_window(std::size_t length);

/// floor(sqrt(N)).
std::uint64_t default_periodogram_bandwidth(std::size_t length);

/// Fraction of values that must share a sign before a decay fit is attempted.
inline constexpr double kSignConsistency = 0.9;

/// OLS of log|rho(n)| on log n over the curve lags inside `window`;
/// H_xy = 1 + slope / 2. Throws sign_instability when fewer than 90% of the
/// in-window values share one sign, insufficient_points when fewer than three
/// non-zero values remain.
HurstEstimate estimate_hxy_ccf_decay(const CrossCorrelationCurve& curve, LagWindow window);

/// OLS of log|I_xy(lambda_j)| on log lambda_j over the m lowest Fourier
/// frequencies, I_xy = X(lambda_j) conj(Y(lambda_j)) / (2 pi N) on demeaned
/// series; H_xy = (1 - slope) / 2. m = 0 selects floor(sqrt(N)).
HurstEstimate estimate_hxy_cross_periodogram(const SeriesPair& pair, std::uint64_t m = 0);

}  // namespace plxc
