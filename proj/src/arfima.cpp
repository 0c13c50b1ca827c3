#include "plxc/arfima.hpp"

#include <algorithm>
#include <cmath>

#include "fft.hpp"
#include "plxc/error.hpp"
#include "plxc/rng.hpp"

namespace plxc {

namespace {

constexpr std::size_t kDirectConvolutionLimit = 4096;

SeriesMeta make_meta(const PairParams& params, const SimulationConfig& cfg) {
  return SeriesMeta{params, cfg.length, cfg.effective_burn_in(), cfg.seed};
}

std::vector<double> arfima_path(std::span<const double> stream, FracDiffOrder d, std::size_t length,
                                std::size_t burn_in) {
  if (d.value() == 0.0) {
    return std::vector<double>(stream.begin() + static_cast<std::ptrdiff_t>(burn_in),
                               stream.begin() + static_cast<std::ptrdiff_t>(burn_in + length));
  }
  const auto weights = arfima_weights(d, burn_in);
  return truncated_filter(stream, weights, length);
}

}  // namespace

std::vector<double> arfima_weights(FracDiffOrder d, std::size_t n_max) {
  std::vector<double> a(n_max + 1, 0.0);
  a[0] = 1.0;
  const double dv = d.value();
  if (dv == 0.0) return a;
  for (std::size_t n = 1; n <= n_max; ++n) {
    const double nn = static_cast<double>(n);
    a[n] = a[n - 1] * (nn - 1.0 + dv) / nn;
  }
  return a;
}

double arfima_weight_asymptote(FracDiffOrder d, std::uint64_t j) {
  require(d.value() != 0.0, ErrorCode::domain, "weight asymptote undefined at d = 0 (pole of Gamma(d))");
  require(j >= 1, ErrorCode::domain, "weight asymptote requires j >= 1");
  return std::pow(static_cast<double>(j), d.value() - 1.0) / std::tgamma(d.value());
}

InnovationStreams generate_innovations(const InnovationSpec& spec, std::size_t count, std::uint64_t seed) {
  spec.validate();
  const double l11 = spec.sigma_e();
  require(!(l11 == 0.0 && spec.sigma_ev != 0.0), ErrorCode::invalid_argument,
          "sigma_e = 0 with nonzero covariance is not a valid innovation spec");
  const double l21 = l11 == 0.0 ? 0.0 : spec.sigma_ev / l11;
  const double l22 = std::sqrt(std::max(0.0, spec.sigma_v2 - l21 * l21));

  InnovationStreams out{std::vector<double>(count), std::vector<double>(count)};
  NormalStream normal(seed);
  for (std::size_t t = 0; t < count; ++t) {
    const double z1 = normal();
    const double z2 = normal();
    out.eps[t] = l11 * z1;
    out.nu[t] = l21 * z1 + l22 * z2;
  }
  return out;
}

std::vector<double> truncated_filter(std::span<const double> stream, std::span<const double> weights,
                                     std::size_t n_out, ConvolutionMethod method) {
  require(!weights.empty(), ErrorCode::invalid_argument, "filter needs at least one weight");
  const std::size_t order = weights.size() - 1;
  require(stream.size() >= n_out + order, ErrorCode::invalid_argument, "innovation stream too short for filter");

  if (method == ConvolutionMethod::automatic) {
    method = stream.size() > kDirectConvolutionLimit ? ConvolutionMethod::fft : ConvolutionMethod::direct;
  }

  std::vector<double> out(n_out);
  if (method == ConvolutionMethod::direct) {
    for (std::size_t t = 0; t < n_out; ++t) {
      const std::size_t head = t + order;
      double acc = 0.0;
      for (std::size_t n = 0; n <= order; ++n) acc += weights[n] * stream[head - n];
      out[t] = acc;
    }
    return out;
  }

  // No wrap-around reaches outputs at index >= order when size >= n_out + order.
  const std::span<const double> used = stream.first(n_out + order);
  const std::size_t size = detail::good_fft_size(used.size());
  const auto full = detail::circular_convolution(used, weights, size);
  std::copy_n(full.begin() + static_cast<std::ptrdiff_t>(order), n_out, out.begin());
  return out;
}

SeriesPair simulate_arfima_pair(FracDiffOrder d1, FracDiffOrder d2, const InnovationSpec& spec,
                                const SimulationConfig& cfg) {
  cfg.validate();
  const std::size_t n = cfg.length;
  const std::size_t m = cfg.effective_burn_in();
  const auto innov = generate_innovations(spec, n + m, cfg.seed);
  auto x = arfima_path(innov.eps, d1, n, m);
  auto y = arfima_path(innov.nu, d2, n, m);
  const PairParams params{PairKind::arfima_arfima, d1.value(), d2.value(), 0.0, spec};
  return SeriesPair(std::move(x), std::move(y), make_meta(params, cfg));
}

SeriesPair simulate_arfima_ar_pair(FracDiffOrder d1, ArCoefficient theta, const InnovationSpec& spec,
                                   const SimulationConfig& cfg) {
  cfg.validate();
  const std::size_t n = cfg.length;
  const std::size_t m = cfg.effective_burn_in();
  const auto innov = generate_innovations(spec, n + m, cfg.seed);
  auto x = arfima_path(innov.eps, d1, n, m);

  std::vector<double> y(n);
  const double th = theta.value();
  double state = 0.0;
  for (std::size_t s = 0; s < n + m; ++s) {
    state = th * state + innov.nu[s];
    if (s >= m) y[s - m] = state;
  }
  const PairParams params{PairKind::arfima_ar, d1.value(), 0.0, th, spec};
  return SeriesPair(std::move(x), std::move(y), make_meta(params, cfg));
}

SeriesPair simulate(const PairParams& params, const SimulationConfig& cfg) {
  params.validate();
  if (params.kind == PairKind::arfima_arfima) {
    return simulate_arfima_pair(params.first(), params.second_order(), params.innovations, cfg);
  }
  return simulate_arfima_ar_pair(params.first(), params.second_ar(), params.innovations, cfg);
}

}  // namespace plxc
