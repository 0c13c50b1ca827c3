#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "plxc/types.hpp"

namespace plxc {

/// MA(infinity) weights a_0(d)..a_{n_max}(d) of ARFIMA(0,d,0), where
/// a_n(d) = Gamma(n+d) / (Gamma(n+1) Gamma(d)), via a_n = a_{n-1} (n-1+d)/n.
/// d = 0 gives the unit impulse.
std::vector<double> arfima_weights(FracDiffOrder d, std::size_t n_max);

/// Large-lag approximation a_j(d) ~ j^(d-1) / Gamma(d). Rejects d = 0 and j = 0.
double arfima_weight_asymptote(FracDiffOrder d, std::uint64_t j);

struct InnovationStreams {
  std::vector<double> eps;
  std::vector<double> nu;
};

/// `count` i.i.d. draws of the Gaussian pair (eps, nu) with the covariance of
/// `spec`, formed as L z with L the lower Cholesky factor and z standard normal.
InnovationStreams generate_innovations(const InnovationSpec& spec, std::size_t count, std::uint64_t seed);

enum class ConvolutionMethod { automatic, direct, fft };

/// Output sample t (0 <= t < n_out) of the causal filter `weights` applied to
/// `stream`, evaluated at stream index t + weights.size() - 1:
///   out[t] = sum_{n=0}^{M} weights[n] * stream[t + M - n],  M = weights.size() - 1.
/// Requires stream.size() >= n_out + M. `automatic` switches to the FFT route
/// when the stream is longer than 4096 samples.
std::vector<double> truncated_filter(std::span<const double> stream, std::span<const double> weights,
                                     std::size_t n_out, ConvolutionMethod method = ConvolutionMethod::automatic);

/// Two ARFIMA(0,d,0) series driven by correlated innovations. Each output
/// sample uses the first M+1 MA weights, M = cfg.effective_burn_in().
SeriesPair simulate_arfima_pair(FracDiffOrder d1, FracDiffOrder d2, const InnovationSpec& spec,
                                const SimulationConfig& cfg);

/// ARFIMA(0,d1,0) x and AR(1) y, y_t = theta y_{t-1} + nu_t started from zero
/// M samples before the first output.
SeriesPair simulate_arfima_ar_pair(FracDiffOrder d1, ArCoefficient theta, const InnovationSpec& spec,
                                   const SimulationConfig& cfg);

/// Dispatches on params.kind.
SeriesPair simulate(const PairParams& params, const SimulationConfig& cfg);

}  // namespace plxc
