#pragma once

#include <cstdint>
#include <random>

namespace plxc {

/// SplitMix64 finalizer. A bijection on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seed for replica `replica` of sweep cell `cell`:
///   mix64(mix64(base) ^ (cell << 32 | replica)).
/// Both indices must be below 2^32; distinct (cell, replica) pairs then map to
/// distinct seeds because mix64 is invertible.
std::uint64_t split_seed(std::uint64_t base, std::uint64_t cell, std::uint64_t replica);

/// Standard normal draws from mt19937_64 through the Box-Muller transform.
/// Output is fully determined by the seed on every platform.
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : engine_(mix64(seed)) {}

  double operator()();

 private:
  double uniform_open();

  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace plxc
