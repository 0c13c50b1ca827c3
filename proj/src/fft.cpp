#include "fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <memory>
#include <mutex>
#include <new>

namespace plxc::detail {

namespace {

// FFTW planning touches global state; execution of distinct plans does not.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const noexcept { fftw_free(p); }
};

template <typename T>
using FftwBuffer = std::unique_ptr<T[], FftwFree>;

template <typename T>
FftwBuffer<T> allocate(std::size_t count) {
  auto* p = static_cast<T*>(fftw_malloc(sizeof(T) * std::max<std::size_t>(count, 1)));
  if (p == nullptr) throw std::bad_alloc();
  return FftwBuffer<T>(p);
}

class Plan {
 public:
  explicit Plan(fftw_plan plan) : plan_(plan) {
    if (plan_ == nullptr) throw std::bad_alloc();
  }
  Plan(const Plan&) = delete;
  Plan& operator=(const Plan&) = delete;
  ~Plan() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan_);
  }
  void execute() const { fftw_execute(plan_); }

 private:
  fftw_plan plan_;
};

Plan forward_plan(int n, double* in, fftw_complex* out) {
  std::lock_guard lock(planner_mutex());
  return Plan(fftw_plan_dft_r2c_1d(n, in, out, FFTW_ESTIMATE));
}

Plan inverse_plan(int n, fftw_complex* in, double* out) {
  std::lock_guard lock(planner_mutex());
  return Plan(fftw_plan_dft_c2r_1d(n, in, out, FFTW_ESTIMATE));
}

}  // namespace

std::vector<std::complex<double>> real_dft(std::span<const double> x) {
  const std::size_t n = x.size();
  const std::size_t bins = n / 2 + 1;
  auto in = allocate<double>(n);
  auto out = allocate<fftw_complex>(bins);
  const Plan plan = forward_plan(static_cast<int>(n), in.get(), out.get());
  std::copy(x.begin(), x.end(), in.get());
  plan.execute();
  std::vector<std::complex<double>> result(bins);
  for (std::size_t j = 0; j < bins; ++j) result[j] = {out[j][0], out[j][1]};
  return result;
}

std::vector<double> circular_convolution(std::span<const double> a, std::span<const double> b, std::size_t size) {
  const std::size_t bins = size / 2 + 1;
  auto in = allocate<double>(size);
  auto fa = allocate<fftw_complex>(bins);
  auto fb = allocate<fftw_complex>(bins);
  const Plan plan_a = forward_plan(static_cast<int>(size), in.get(), fa.get());
  const Plan plan_b = forward_plan(static_cast<int>(size), in.get(), fb.get());
  const Plan plan_inv = inverse_plan(static_cast<int>(size), fa.get(), in.get());

  const auto load = [&](std::span<const double> v) {
    std::fill(in.get(), in.get() + size, 0.0);
    std::copy_n(v.begin(), std::min(v.size(), size), in.get());
  };
  load(a);
  plan_a.execute();
  load(b);
  plan_b.execute();
  const double scale = 1.0 / static_cast<double>(size);
  for (std::size_t j = 0; j < bins; ++j) {
    const double re = fa[j][0] * fb[j][0] - fa[j][1] * fb[j][1];
    const double im = fa[j][0] * fb[j][1] + fa[j][1] * fb[j][0];
    fa[j][0] = re * scale;
    fa[j][1] = im * scale;
  }
  plan_inv.execute();
  return std::vector<double>(in.get(), in.get() + size);
}

std::size_t good_fft_size(std::size_t n) {
  std::size_t best = std::size_t{1};
  while (best < n) best <<= 1;
  for (std::size_t p3 = 1; p3 < best; p3 *= 3) {
    std::size_t candidate = p3;
    while (candidate < n) candidate <<= 1;
    best = std::min(best, candidate);
  }
  return best;
}

}  // namespace plxc::detail
