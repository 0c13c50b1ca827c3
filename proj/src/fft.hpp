#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace plxc::detail {

/// Real-input DFT X_j = sum_t x_t exp(-2 pi i j t / N), bins j = 0..N/2.
std::vector<std::complex<double>> real_dft(std::span<const double> x);

/// Circular convolution of zero-padded `a` and `b` over `size` points.
std::vector<double> circular_convolution(std::span<const double> a, std::span<const double> b, std::size_t size);

/// Smallest 2^k * 3^j >= n.
std::size_t good_fft_size(std::size_t n);

}  // namespace plxc::detail
