#include "plxc/correlation.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <numbers>

#include "plxc/arfima.hpp"
#include "plxc/error.hpp"
#include "plxc/special.hpp"

namespace plxc {

namespace {

using std::numbers::pi;

// Neumaier-compensated accumulator.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      carry_ += (sum_ - t) + v;
    } else {
      carry_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

void check_frequency(double lambda) {
  require(std::isfinite(lambda) && lambda > 0.0 && lambda <= pi, ErrorCode::domain,
          "spectral frequency must lie in (0, pi]");
}

std::uint64_t magnitude(std::int64_t n) {
  return n < 0 ? static_cast<std::uint64_t>(-(n + 1)) + 1 : static_cast<std::uint64_t>(n);
}

// |a_k(d)| <= c_d k^{d-1} / |Gamma(d)| for k >= 1, with c_d = 1 when d >= 0
// and 1 / (1 + d) when d < 0 (Gautschi's inequality).
double weight_envelope_factor(double d) {
  const double c = d >= 0.0 ? 1.0 : 1.0 / (1.0 + d);
  return c / std::abs(std::tgamma(d));
}

// Bound on sum_{k >= K} |a_k(d1) a_{n+k}(d2)|, using (n+k)^{d2-1} <= k^{d2-1}.
double arfima_tail_bound(double d1, double d2, std::uint64_t terms) {
  if (d1 == 0.0 || d2 == 0.0) return 0.0;
  const double k = static_cast<double>(terms);
  const double s = d1 + d2;
  const double c = weight_envelope_factor(d1) * weight_envelope_factor(d2);
  return c * (std::pow(k, s - 2.0) + std::pow(k, s - 1.0) / (1.0 - s));
}

double normalized(double sigma_ev, double raw, double sx, double sy) {
  if (sigma_ev == 0.0) return 0.0;
  return sigma_ev * (raw / (sx * sy));
}

bool strictly_increasing(std::span<const std::int64_t> lags) {
  return std::adjacent_find(lags.begin(), lags.end(), std::greater_equal<>()) == lags.end();
}

}  // namespace

std::string_view to_string(CurveKind kind) {
  switch (kind) {
    case CurveKind::sample:
      return "sample";
    case CurveKind::exact_truncated:
      return "exact_truncated";
    case CurveKind::asymptotic:
      return "asymptotic";
  }
  return "unknown";
}

CurveKind curve_kind_from_string(std::string_view text) {
  if (text == "sample") return CurveKind::sample;
  if (text == "exact_truncated") return CurveKind::exact_truncated;
  if (text == "asymptotic") return CurveKind::asymptotic;
  fail(ErrorCode::parse, "unknown curve kind '" + std::string(text) + "'");
}

void CrossCorrelationCurve::validate() const {
  require(lags.size() == values.size(), ErrorCode::invalid_argument, "curve lags and values differ in length");
  require(strictly_increasing(lags), ErrorCode::invalid_argument, "curve lags must be strictly increasing");
  if (kind == CurveKind::sample) {
    require(std::all_of(values.begin(), values.end(), [](double v) { return std::abs(v) <= 1.0; }),
            ErrorCode::invalid_argument, "sample correlations must lie in [-1, 1]");
  }
}

CrossCorrelationCurve CrossCorrelationCurve::reflected() const {
  CrossCorrelationCurve out{{}, {}, kind, sigma_y, sigma_x};
  out.lags.reserve(size());
  out.values.reserve(size());
  for (std::size_t i = size(); i-- > 0;) {
    out.lags.push_back(-lags[i]);
    out.values.push_back(values[i]);
  }
  return out;
}

double process_std(FracDiffOrder d, double innovation_variance) {
  require(innovation_variance >= 0.0 && std::isfinite(innovation_variance), ErrorCode::invalid_argument,
          "innovation variance must be finite and non-negative");
  const double dv = d.value();
  return std::sqrt(innovation_variance) * std::sqrt(std::tgamma(1.0 - 2.0 * dv)) / std::tgamma(1.0 - dv);
}

double process_std(ArCoefficient theta, double innovation_variance) {
  require(innovation_variance >= 0.0 && std::isfinite(innovation_variance), ErrorCode::invalid_argument,
          "innovation variance must be finite and non-negative");
  const double th = theta.value();
  return std::sqrt(innovation_variance) / std::sqrt(1.0 - th * th);
}

double sigma_x(const PairParams& params) { return process_std(params.first(), params.innovations.sigma_e2); }

double sigma_y(const PairParams& params) {
  if (params.kind == PairKind::arfima_arfima) return process_std(params.second_order(), params.innovations.sigma_v2);
  return process_std(params.second_ar(), params.innovations.sigma_v2);
}

std::complex<double> cross_spectrum_arfima(FracDiffOrder d1, FracDiffOrder d2, const InnovationSpec& spec,
                                           double lambda) {
  check_frequency(lambda);
  spec.validate();
  const std::complex<double> forward = 1.0 - std::polar(1.0, lambda);
  const std::complex<double> backward = 1.0 - std::polar(1.0, -lambda);
  return spec.sigma_ev / (2.0 * pi) * std::pow(forward, -d1.value()) * std::pow(backward, -d2.value());
}

std::complex<double> cross_spectrum_arfima_ar(FracDiffOrder d1, ArCoefficient theta, const InnovationSpec& spec,
                                              double lambda) {
  check_frequency(lambda);
  spec.validate();
  const std::complex<double> backward = 1.0 - std::polar(1.0, -lambda);
  const std::complex<double> ar = 1.0 - theta.value() * std::polar(1.0, lambda);
  return spec.sigma_ev / (2.0 * pi) * std::pow(backward, -d1.value()) / ar;
}

std::complex<double> cross_spectrum(const PairParams& params, double lambda) {
  params.validate();
  if (params.kind == PairKind::arfima_arfima) {
    return cross_spectrum_arfima(params.first(), params.second_order(), params.innovations, lambda);
  }
  return std::conj(cross_spectrum_arfima_ar(params.first(), params.second_ar(), params.innovations, lambda));
}

std::uint64_t default_truncation(std::int64_t n) {
  return std::max<std::uint64_t>(1'000'000, 1000 * magnitude(n));
}

TruncatedSum exact_cross_correlation_arfima(std::int64_t n, FracDiffOrder d1, FracDiffOrder d2,
                                            const InnovationSpec& spec, std::uint64_t truncation) {
  spec.validate();
  const std::uint64_t terms = truncation == 0 ? default_truncation(n) : truncation;
  const std::uint64_t shift = magnitude(n);
  // For n < 0 the shifted index moves to the x weights.
  const bool shift_x = n < 0;
  const auto wx = arfima_weights(d1, terms - 1 + (shift_x ? shift : 0));
  const auto wy = arfima_weights(d2, terms - 1 + (shift_x ? 0 : shift));

  CompensatedSum acc;
  for (std::uint64_t k = 0; k < terms; ++k) {
    acc.add(shift_x ? wx[k + shift] * wy[k] : wx[k] * wy[k + shift]);
  }
  const double sx = process_std(d1, spec.sigma_e2);
  const double sy = process_std(d2, spec.sigma_v2);
  const double tail = arfima_tail_bound(d1.value(), d2.value(), terms);
  return {normalized(spec.sigma_ev, acc.value(), sx, sy), normalized(std::abs(spec.sigma_ev), tail, sx, sy), terms};
}

std::uint64_t default_truncation_ar(ArCoefficient theta) {
  const double mag = std::abs(theta.value());
  if (mag == 0.0) return 1;
  const double needed = std::ceil(-760.0 / std::log(mag));
  return static_cast<std::uint64_t>(std::clamp(needed, 1.0, 1e7));
}

TruncatedSum exact_cross_correlation_arfima_ar(std::int64_t n, FracDiffOrder d1, ArCoefficient theta,
                                               const InnovationSpec& spec, std::uint64_t truncation) {
  spec.validate();
  const std::uint64_t terms = truncation == 0 ? default_truncation_ar(theta) : truncation;
  const double th = theta.value();
  const std::uint64_t shift = n < 0 ? magnitude(n) : 0;
  const auto w = arfima_weights(d1, terms - 1 + shift);

  CompensatedSum acc;
  double power = 1.0;
  for (std::uint64_t k = 0; k < terms && (power != 0.0 || k == 0); ++k) {
    acc.add(w[k + shift] * power);
    power *= th;
  }
  double raw = acc.value();
  const double mag = std::abs(th);
  double tail = std::pow(mag, static_cast<double>(terms)) / (1.0 - mag);
  if (n > 0) {
    const double lead = std::pow(th, static_cast<double>(n));
    raw *= lead;
    tail *= std::abs(lead);
  }
  const double sx = process_std(d1, spec.sigma_e2);
  const double sy = process_std(theta, spec.sigma_v2);
  return {normalized(spec.sigma_ev, raw, sx, sy), normalized(std::abs(spec.sigma_ev), tail, sx, sy), terms};
}

double asymptotic_constant_arfima(double d1, double d2) {
  return std::tgamma(1.0 - d1 - d2) / (std::tgamma(1.0 - d2) * std::tgamma(d2));
}

double asymptotic_cross_correlation_arfima(std::int64_t n, FracDiffOrder d1, FracDiffOrder d2,
                                           const InnovationSpec& spec) {
  spec.validate();
  const double a = d1.value();
  const double b = d2.value();
  require(a > 0.0 && b > 0.0 && a + b < 1.0, ErrorCode::domain,
          "power-law asymptote requires d1 > 0, d2 > 0 and d1 + d2 < 1");
  require(n >= 1, ErrorCode::domain, "power-law asymptote requires lag n >= 1");
  const double sx = process_std(d1, spec.sigma_e2);
  const double sy = process_std(d2, spec.sigma_v2);
  const double raw = asymptotic_constant_arfima(a, b) * std::pow(static_cast<double>(n), a + b - 1.0);
  return normalized(spec.sigma_ev, raw, sx, sy);
}

double log_closed_form_cross_correlation_arfima_ar(std::int64_t n, double d1, double theta) {
  require(std::isfinite(theta) && theta > 0.0 && theta < 1.0, ErrorCode::domain,
          "closed form requires 0 < theta < 1");
  require(std::isfinite(d1) && d1 > 0.0, ErrorCode::domain, "closed form requires d1 > 0");
  require(n >= 1, ErrorCode::domain, "closed form requires lag n >= 1");
  const double rate = -std::log(theta);
  const double nn = static_cast<double>(n);
  return nn * rate + log_upper_incomplete_gamma(d1, nn * rate) - d1 * std::log(rate);
}

double closed_form_cross_correlation_arfima_ar(std::int64_t n, double d1, double theta) {
  return std::exp(log_closed_form_cross_correlation_arfima_ar(n, d1, theta));
}

double cross_correlation_from_spectrum(const PairParams& params, std::int64_t n, std::size_t cells) {
  params.validate();
  require(cells >= 1, ErrorCode::invalid_argument, "quadrature needs at least one cell");
  const double memory = params.d1 + (params.kind == PairKind::arfima_arfima ? params.d2 : 0.0);
  require(memory < 1.0, ErrorCode::domain, "spectral pole is not integrable for d1 + d2 >= 1");
  if (params.innovations.sigma_ev == 0.0) return 0.0;

  const double nn = static_cast<double>(n);
  // lambda = pi u^2 maps uniform cells in u onto the graded mesh pi (j/cells)^2.
  const auto integrand = [&](double u) {
    if (u <= 0.0) return 0.0;
    const double lambda = pi * u * u;
    const std::complex<double> f = cross_spectrum(params, std::min(lambda, pi));
    return (f * std::polar(1.0, nn * lambda)).real() * 2.0 * pi * u;
  };
  using Rule = boost::math::quadrature::gauss<double, 20>;
  double total = 0.0;
  const double h = 1.0 / static_cast<double>(cells);
  for (std::size_t j = 0; j < cells; ++j) {
    total += Rule::integrate(integrand, h * static_cast<double>(j), h * static_cast<double>(j + 1));
  }
  return 2.0 * total / (sigma_x(params) * sigma_y(params));
}

CrossCorrelationCurve exact_curve(const PairParams& params, std::span<const std::int64_t> lags,
                                  std::uint64_t truncation) {
  params.validate();
  require(strictly_increasing(lags), ErrorCode::invalid_argument, "curve lags must be strictly increasing");
  CrossCorrelationCurve curve{{lags.begin(), lags.end()}, {}, CurveKind::exact_truncated, sigma_x(params),
                              sigma_y(params)};
  curve.values.reserve(lags.size());
  for (const auto n : lags) {
    if (params.kind == PairKind::arfima_arfima) {
      curve.values.push_back(
          exact_cross_correlation_arfima(n, params.first(), params.second_order(), params.innovations, truncation)
              .value);
    } else {
      curve.values.push_back(
          exact_cross_correlation_arfima_ar(n, params.first(), params.second_ar(), params.innovations, truncation)
              .value);
    }
  }
  return curve;
}

CrossCorrelationCurve asymptotic_curve(const PairParams& params, std::span<const std::int64_t> lags) {
  params.validate();
  require(strictly_increasing(lags), ErrorCode::invalid_argument, "curve lags must be strictly increasing");
  const double sx = sigma_x(params);
  const double sy = sigma_y(params);
  CrossCorrelationCurve curve{{lags.begin(), lags.end()}, {}, CurveKind::asymptotic, sx, sy};
  curve.values.reserve(lags.size());
  for (const auto n : lags) {
    if (params.kind == PairKind::arfima_arfima) {
      curve.values.push_back(
          asymptotic_cross_correlation_arfima(n, params.first(), params.second_order(), params.innovations));
    } else {
      const double raw =
          closed_form_cross_correlation_arfima_ar(n, params.d1, params.theta) / std::tgamma(params.d1);
      curve.values.push_back(normalized(params.innovations.sigma_ev, raw, sx, sy));
    }
  }
  if (params.kind == PairKind::arfima_ar) {
    // Stored under the lag convention; the values belong to rho_xy(-n).
    auto reflected = curve.reflected();
    reflected.sigma_x = sx;
    reflected.sigma_y = sy;
    return reflected;
  }
  return curve;
}

CrossCorrelationCurve sample_cross_correlation_at(const SeriesPair& pair, std::span<const std::int64_t> lags) {
  require(strictly_increasing(lags), ErrorCode::invalid_argument, "curve lags must be strictly increasing");
  const std::size_t n = pair.size();
  for (const auto lag : lags) {
    require(4 * magnitude(lag) < n, ErrorCode::invalid_argument, "sample cross-correlation requires |lag| < N/4");
  }
  const auto centered = [n](const std::vector<double>& v, double& sum_sq) {
    CompensatedSum mean_acc;
    for (const double e : v) mean_acc.add(e);
    const double mean = mean_acc.value() / static_cast<double>(n);
    std::vector<double> c(n);
    CompensatedSum sq;
    for (std::size_t t = 0; t < n; ++t) {
      c[t] = v[t] - mean;
      sq.add(c[t] * c[t]);
    }
    sum_sq = sq.value();
    return c;
  };
  double sxx = 0.0;
  double syy = 0.0;
  const auto xc = centered(pair.x(), sxx);
  const auto yc = centered(pair.y(), syy);
  require(sxx > 0.0 && syy > 0.0, ErrorCode::degenerate_input,
          "sample cross-correlation undefined for a constant series");
  const double denom = std::sqrt(sxx * syy);

  CrossCorrelationCurve curve{{lags.begin(), lags.end()}, {}, CurveKind::sample,
                              std::sqrt(sxx / static_cast<double>(n)), std::sqrt(syy / static_cast<double>(n))};
  curve.values.reserve(lags.size());
  for (const auto lag : lags) {
    const std::size_t shift = magnitude(lag);
    const double* a = lag < 0 ? xc.data() + shift : xc.data();
    const double* b = lag < 0 ? yc.data() : yc.data() + shift;
    double acc = 0.0;
    for (std::size_t t = 0; t + shift < n; ++t) acc += a[t] * b[t];
    curve.values.push_back(std::clamp(acc / denom, -1.0, 1.0));
  }
  return curve;
}

CrossCorrelationCurve sample_cross_correlation(const SeriesPair& pair, std::uint64_t max_lag) {
  require(max_lag >= 1, ErrorCode::invalid_argument, "max_lag must be positive");
  require(4 * max_lag < pair.size(), ErrorCode::invalid_argument, "sample cross-correlation requires max_lag < N/4");
  std::vector<std::int64_t> lags;
  const auto m = static_cast<std::int64_t>(max_lag);
  for (std::int64_t k = -m; k <= m; ++k) lags.push_back(k);
  return sample_cross_correlation_at(pair, lags);
}

std::vector<std::int64_t> log_spaced_lags(std::int64_t lo, std::int64_t hi, std::size_t count) {
  require(lo >= 1 && hi >= lo, ErrorCode::invalid_argument, "log-spaced lags need 1 <= lo <= hi");
  require(count >= 2, ErrorCode::invalid_argument, "log-spaced lags need at least two points");
  std::vector<std::int64_t> lags;
  const double a = std::log(static_cast<double>(lo));
  const double b = std::log(static_cast<double>(hi));
  for (std::size_t i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(count - 1);
    auto lag = static_cast<std::int64_t>(std::llround(std::exp(a + (b - a) * t)));
    lag = std::clamp(lag, lo, hi);
    if (lags.empty() || lag > lags.back()) lags.push_back(lag);
  }
  return lags;
}

}  // namespace plxc
