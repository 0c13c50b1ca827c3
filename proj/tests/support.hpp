#pragma once

#include <cmath>
#include <numeric>
#include <span>
#include <vector>

#include "doctest.h"
#include "plxc/error.hpp"

// Asserts that `expr` throws plxc::Error carrying `expected_code`.
#define CHECK_PLXC_ERROR(expr, expected_code)          \
  do {                                                 \
    bool thrown_ = false;                              \
    try {                                              \
      (void)(expr);                                    \
    } catch (const plxc::Error& e_) {                  \
      thrown_ = true;                                  \
      CHECK(e_.code() == (expected_code));             \
    }                                                  \
    CHECK_MESSAGE(thrown_, "expected plxc::Error");    \
  } while (0)

namespace testing {

inline double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

inline double mean(std::span<const double> v) { return std::accumulate(v.begin(), v.end(), 0.0) / v.size(); }

// Biased sample autocorrelation, written independently of the library.
inline double autocorr(std::span<const double> v, std::size_t lag) {
  const double m = mean(v);
  double num = 0.0, den = 0.0;
  for (std::size_t t = 0; t < v.size(); ++t) {
    den += (v[t] - m) * (v[t] - m);
    if (t + lag < v.size()) num += (v[t] - m) * (v[t + lag] - m);
  }
  return num / den;
}

inline double corr(std::span<const double> a, std::span<const double> b) {
  const double ma = mean(a), mb = mean(b);
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t t = 0; t < a.size(); ++t) {
    sab += (a[t] - ma) * (b[t] - mb);
    saa += (a[t] - ma) * (a[t] - ma);
    sbb += (b[t] - mb) * (b[t] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

}  // namespace testing

#include <filesystem>
#include <random>
#include <string>

namespace testing {

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() / ("plxc-test-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

}  // namespace testing
