#include "plxc/hurst.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "fft.hpp"
#include "plxc/error.hpp"

namespace plxc {

namespace {

void check_open_unit(double h, const char* name) {
  require(std::isfinite(h) && h > 0.0 && h < 1.0, ErrorCode::domain,
          std::string(name) + " must lie in (0, 1)");
}

struct LineFit {
  double slope = 0.0;
  double stderr_slope = 0.0;
};

LineFit ordinary_least_squares(const std::vector<double>& xs, const std::vector<double>& ys) {
  const auto count = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= count;
  my /= count;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  require(sxx > 0.0, ErrorCode::insufficient_points, "regression needs at least two distinct abscissae");
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double ssr = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - intercept - slope * xs[i];
    ssr += r * r;
  }
  return {slope, std::sqrt(ssr / (count - 2.0) / sxx)};
}

std::vector<double> demeaned(const std::vector<double>& v) {
  double mean = 0.0;
  for (const double e : v) mean += e;
  mean /= static_cast<double>(v.size());
  std::vector<double> out(v.size());
  std::transform(v.begin(), v.end(), out.begin(), [mean](double e) { return e - mean; });
  return out;
}

}  // namespace

HurstRelation HurstRelation::from_hurst(double hurst) {
  check_open_unit(hurst, "Hurst exponent");
  return HurstRelation(hurst);
}

HurstRelation HurstRelation::from_d(double d) { return from_hurst(d + 0.5); }

HurstRelation HurstRelation::from_gamma(double gamma) { return from_hurst(hurst_from_gamma(gamma)); }

double combine_hurst(double hurst_x, double hurst_y) {
  check_open_unit(hurst_x, "H_x");
  check_open_unit(hurst_y, "H_y");
  return (hurst_x + hurst_y) / 2.0;
}

double hurst_from_gamma(double gamma_xy) {
  require(std::isfinite(gamma_xy) && gamma_xy > 0.0 && gamma_xy < 2.0, ErrorCode::domain,
          "decay exponent gamma must lie in (0, 2)");
  return 1.0 - gamma_xy / 2.0;
}

double theoretical_hxy(const PairParams& params) {
  params.validate();
  const double hy = params.kind == PairKind::arfima_arfima ? params.d2 + 0.5 : 0.5;
  return combine_hurst(params.d1 + 0.5, hy);
}

std::string_view to_string(EstimatorMethod method) {
  switch (method) {
    case EstimatorMethod::ccf_decay:
      return "ccf_decay";
    case EstimatorMethod::cross_periodogram:
      return "cross_periodogram";
  }
  return "unknown";
}

EstimatorMethod estimator_from_string(std::string_view text) {
  if (text == "ccf_decay") return EstimatorMethod::ccf_decay;
  if (text == "cross_periodogram") return EstimatorMethod::cross_periodogram;
  fail(ErrorCode::parse, "unknown estimator '" + std::string(text) + "'");
}

LagWindow default_ccf_window(std::size_t length) {
  const auto hi = std::min<std::int64_t>(static_cast<std::int64_t>(length / 50), 1000);
  return {10, hi};
}

std::uint64_t default_periodogram_bandwidth(std::size_t length) {
  return static_cast<std::uint64_t>(std::floor(std::sqrt(static_cast<double>(length))));
}

HurstEstimate estimate_hxy_ccf_decay(const CrossCorrelationCurve& curve, LagWindow window) {
  curve.validate();
  require(window.lo >= 1 && window.lo < window.hi, ErrorCode::invalid_argument,
          "decay window must satisfy 1 <= lo < hi");
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t in_window = 0;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    if (curve.lags[i] < window.lo || curve.lags[i] > window.hi) continue;
    ++in_window;
    if (curve.values[i] > 0.0) ++positive;
    if (curve.values[i] < 0.0) ++negative;
  }
  require(positive + negative >= 3, ErrorCode::insufficient_points,
          "decay fit needs at least three non-zero values inside the window");
  const double agreement = static_cast<double>(std::max(positive, negative)) / static_cast<double>(in_window);
  if (agreement < kSignConsistency) {
    std::ostringstream os;
    os << "cross-correlation changes sign inside the window (" << std::max(positive, negative) << " of "
       << in_window << " values agree)";
    fail(ErrorCode::sign_instability, os.str());
  }

  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    if (curve.lags[i] < window.lo || curve.lags[i] > window.hi || curve.values[i] == 0.0) continue;
    xs.push_back(std::log(static_cast<double>(curve.lags[i])));
    ys.push_back(std::log(std::abs(curve.values[i])));
  }
  const LineFit fit = ordinary_least_squares(xs, ys);
  return {1.0 + fit.slope / 2.0, EstimatorMethod::ccf_decay, static_cast<double>(window.lo),
          static_cast<double>(window.hi), fit.slope, fit.stderr_slope, xs.size()};
}

HurstEstimate estimate_hxy_cross_periodogram(const SeriesPair& pair, std::uint64_t m) {
  const std::size_t n = pair.size();
  if (m == 0) m = default_periodogram_bandwidth(n);
  require(m >= 3 && 2 * m <= n, ErrorCode::invalid_argument, "periodogram bandwidth must satisfy 3 <= m <= N/2");

  const auto fx = detail::real_dft(demeaned(pair.x()));
  const auto fy = detail::real_dft(demeaned(pair.y()));
  const double scale = 1.0 / (2.0 * std::numbers::pi * static_cast<double>(n));
  const double step = 2.0 * std::numbers::pi / static_cast<double>(n);

  std::vector<double> xs;
  std::vector<double> ys;
  for (std::uint64_t j = 1; j <= m; ++j) {
    const double magnitude = std::abs(fx[j] * std::conj(fy[j])) * scale;
    if (magnitude == 0.0 || !std::isfinite(magnitude)) continue;
    xs.push_back(std::log(step * static_cast<double>(j)));
    ys.push_back(std::log(magnitude));
  }
  require(xs.size() >= 3, ErrorCode::insufficient_points, "fewer than three non-zero periodogram ordinates");
  const LineFit fit = ordinary_least_squares(xs, ys);
  return {(1.0 - fit.slope) / 2.0, EstimatorMethod::cross_periodogram, step, step * static_cast<double>(m),
          fit.slope, fit.stderr_slope, xs.size()};
}

}  // namespace plxc
