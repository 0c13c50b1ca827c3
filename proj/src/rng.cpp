#include "plxc/rng.hpp"

#include <cmath>
#include <numbers>

#include "plxc/error.hpp"

namespace plxc {

std::uint64_t split_seed(std::uint64_t base, std::uint64_t cell, std::uint64_t replica) {
  require(cell < (std::uint64_t{1} << 32) && replica < (std::uint64_t{1} << 32), ErrorCode::invalid_argument,
          "cell and replica indices must be below 2^32");
  return mix64(mix64(base) ^ ((cell << 32) | replica));
}

// 53 random bits mapped into (0, 1).
double NormalStream::uniform_open() {
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double NormalStream::operator()() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform_open();
  const double u2 = uniform_open();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double phi = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(phi);
  has_spare_ = true;
  return r * std::cos(phi);
}

}  // namespace plxc
