#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "plxc/arfima.hpp"
#include "plxc/correlation.hpp"
#include "support.hpp"

using namespace plxc;

namespace {

constexpr double pi = std::numbers::pi;

// sum_k a_k(d1) a_{n+k}(d2) over all k, from Gauss' hypergeometric sum:
// Gamma(n+d2) Gamma(1-d1-d2) / (Gamma(d2) Gamma(n+1-d1) Gamma(1-d2)).
double infinite_sum(int n, double d1, double d2) {
  return std::exp(std::lgamma(n + d2) + std::lgamma(1 - d1 - d2) - std::lgamma(d2) - std::lgamma(n + 1 - d1) -
                  std::lgamma(1 - d2));
}

double arfima_std(double d) { return std::sqrt(std::tgamma(1 - 2 * d)) / std::tgamma(1 - d); }

double ols_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  const double mx = testing::mean(xs), my = testing::mean(ys);
  double sxy = 0, sxx = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxy / sxx;
}

PairParams arfima_pair(double d1, double d2, InnovationSpec spec) {
  return {PairKind::arfima_arfima, d1, d2, 0.0, spec};
}

PairParams ar_pair(double d1, double theta, InnovationSpec spec) { return {PairKind::arfima_ar, d1, 0.0, theta, spec}; }

}  // namespace

TEST_CASE("process standard deviations") {
  CHECK(process_std(FracDiffOrder(0.0), 1.0) == 1.0);
  CHECK(process_std(ArCoefficient(0.0), 4.0) == 2.0);
  CHECK(process_std(FracDiffOrder(0.4), 1.0) == doctest::Approx(1.438783626990620).epsilon(1e-13));
  CHECK(process_std(ArCoefficient(0.6), 1.0) == doctest::Approx(1.25).epsilon(1e-15));

  // Partial sums of a_k^2 increase towards the closed form.
  const auto w = arfima_weights(FracDiffOrder(0.4), 1'000'000);
  double partial = 0.0, at_1e4 = 0.0;
  for (size_t k = 0; k < w.size(); ++k) {
    partial += w[k] * w[k];
    if (k == 10'000) at_1e4 = partial;
  }
  const double full = std::pow(process_std(FracDiffOrder(0.4), 1.0), 2);
  CHECK(at_1e4 < partial);
  CHECK(partial < full);
  CHECK(full - partial < full - at_1e4);
  // a_k <= k^{d-1} / Gamma(d) bounds the neglected tail.
  const double k = static_cast<double>(w.size());
  CHECK(full - partial <= std::pow(k - 1, -0.2) / (0.2 * std::pow(std::tgamma(0.4), 2)));
}

TEST_CASE("cross spectrum: closed-form values") {
  const InnovationSpec unit{1, 1, 1};
  const auto f = cross_spectrum_arfima(FracDiffOrder(0.4), FracDiffOrder(0.2), unit, pi);
  CHECK(f.real() == doctest::Approx(std::pow(2.0, -0.6) / (2 * pi)).epsilon(1e-14));
  CHECK(std::abs(f.imag()) < 1e-15);
  CHECK(f.real() == doctest::Approx(0.1050031).epsilon(1e-6));

  const auto g = cross_spectrum_arfima_ar(FracDiffOrder(0.4), ArCoefficient(0.5), unit, pi);
  CHECK(g.real() == doctest::Approx(std::pow(2.0, -0.4) / (2 * pi * 1.5)).epsilon(1e-14));
  CHECK(std::abs(g.imag()) < 1e-15);
  CHECK(g.real() == doctest::Approx(0.0804113).epsilon(1e-6));

  for (double lambda : {1e-3, 0.5, 2.0, pi}) {
    const auto flat = cross_spectrum_arfima(FracDiffOrder(0.0), FracDiffOrder(0.0), {1, 1, 0.3}, lambda);
    CHECK(flat.real() == doctest::Approx(0.3 / (2 * pi)).epsilon(1e-15));
    CHECK(flat.imag() == 0.0);

    // theta = 0 collapses the AR factor; the literature orientation is the conjugate of ours.
    const auto ar0 = cross_spectrum_arfima_ar(FracDiffOrder(0.3), ArCoefficient(0.0), {1, 1, 0.5}, lambda);
    const auto fd0 = cross_spectrum_arfima(FracDiffOrder(0.3), FracDiffOrder(0.0), {1, 1, 0.5}, lambda);
    CHECK(ar0 == std::conj(fd0));
    CHECK(cross_spectrum(ar_pair(0.3, 0.0, {1, 1, 0.5}), lambda) ==
          cross_spectrum(arfima_pair(0.3, 0.0, {1, 1, 0.5}), lambda));
  }

  const double lambda = 1e-4;
  const auto small = cross_spectrum_arfima(FracDiffOrder(0.4), FracDiffOrder(0.2), {1, 1, 0.5}, lambda);
  CHECK(testing::rel_err(std::abs(small) * std::pow(lambda, 0.6), 0.5 / (2 * pi)) < 0.01);

  CHECK_PLXC_ERROR(cross_spectrum_arfima(FracDiffOrder(0.1), FracDiffOrder(0.1), unit, 0.0), ErrorCode::domain);
  CHECK_PLXC_ERROR(cross_spectrum_arfima(FracDiffOrder(0.1), FracDiffOrder(0.1), unit, 4.0), ErrorCode::domain);
}

TEST_CASE("exact cross-correlation: white noise") {
  const InnovationSpec spec{1, 1, 0.5};
  CHECK(exact_cross_correlation_arfima(0, FracDiffOrder(0), FracDiffOrder(0), spec).value == 0.5);
  for (int n : {-3, -1, 1, 7}) CHECK(exact_cross_correlation_arfima(n, FracDiffOrder(0), FracDiffOrder(0), spec).value == 0.0);
}

TEST_CASE("exact cross-correlation: golden values and tail bounds") {
  const InnovationSpec spec{1, 1, 0.5};
  const FracDiffOrder d1(0.4), d2(0.2);
  const double norm = 0.5 / (arfima_std(0.4) * arfima_std(0.2));

  // Compensated direct summation at K = 10^7 (numpy/fsum oracle).
  const auto r0 = exact_cross_correlation_arfima(0, d1, d2, spec, 10'000'000);
  CHECK(testing::rel_err(r0.value, 0.4240421688532785) < 1e-12);

  for (int n : {0, 1, 10, 1000}) {
    CAPTURE(n);
    const auto r = exact_cross_correlation_arfima(n, d1, d2, spec);
    const double full = norm * infinite_sum(n, 0.4, 0.2);
    CHECK(r.value < full);
    CHECK(full - r.value <= r.tail_bound);
    CHECK(r.terms == default_truncation(n));
  }
  CHECK(default_truncation(5) == 1'000'000);
  CHECK(default_truncation(-5000) == 5'000'000);
}

TEST_CASE("exact cross-correlation: lag reflection") {
  const InnovationSpec spec{1, 2, 0.7};
  const InnovationSpec swapped{2, 1, 0.7};
  for (int n : {-50, -3, 0, 4, 200}) {
    const double a = exact_cross_correlation_arfima(n, FracDiffOrder(0.3), FracDiffOrder(0.15), spec, 200000).value;
    const double b = exact_cross_correlation_arfima(-n, FracDiffOrder(0.15), FracDiffOrder(0.3), swapped, 200000).value;
    CHECK(a == doctest::Approx(b).epsilon(1e-14));
  }
}

TEST_CASE("exact cross-correlation: linear in the innovation covariance") {
  const auto at = [](double sev) {
    return exact_cross_correlation_arfima(12, FracDiffOrder(0.3), FracDiffOrder(0.1), {1, 1, sev}, 100000).value;
  };
  CHECK(at(0.0) == 0.0);
  CHECK(at(0.8) == doctest::Approx(2.0 * at(0.4)).epsilon(1e-15));
  CHECK(at(-0.4) == -at(0.4));
  const auto ar = [](double sev) {
    return exact_cross_correlation_arfima_ar(-12, FracDiffOrder(0.3), ArCoefficient(0.5), {1, 1, sev}).value;
  };
  CHECK(ar(0.0) == 0.0);
  CHECK(ar(0.8) == doctest::Approx(2.0 * ar(0.4)).epsilon(1e-15));
  const auto as = [](double sev) {
    return asymptotic_cross_correlation_arfima(12, FracDiffOrder(0.3), FracDiffOrder(0.1), {1, 1, sev});
  };
  CHECK(as(0.0) == 0.0);
  CHECK(as(0.8) == doctest::Approx(2.0 * as(0.4)).epsilon(1e-15));
  const auto sp = [](double sev) {
    return cross_spectrum_arfima(FracDiffOrder(0.3), FracDiffOrder(0.1), {1, 1, sev}, 0.7);
  };
  CHECK(sp(0.0) == std::complex<double>(0.0, 0.0));
  CHECK(std::abs(sp(0.8) - 2.0 * sp(0.4)) < 1e-16);
}

TEST_CASE("asymptotic cross-correlation") {
  const InnovationSpec spec{1, 1, 0.5};
  const FracDiffOrder d1(0.4), d2(0.2);
  const double exact = exact_cross_correlation_arfima(1000, d1, d2, spec).value;
  const double asym = asymptotic_cross_correlation_arfima(1000, d1, d2, spec);
  CHECK(exact / asym >= 0.95);
  CHECK(exact / asym <= 1.05);

  // Power-law homogeneity.
  for (int n : {10, 100, 1000}) {
    const double ratio = asymptotic_cross_correlation_arfima(2 * n, d1, d2, spec) /
                         asymptotic_cross_correlation_arfima(n, d1, d2, spec);
    CHECK(ratio == doctest::Approx(std::pow(2.0, -0.4)).epsilon(1e-13));
  }

  // The constant as written matches the infinite sum at large positive lags;
  // the exchanged constant describes the negative side.
  const double c = asymptotic_constant_arfima(0.4, 0.2);
  CHECK(c == doctest::Approx(std::tgamma(0.4) / (std::tgamma(0.8) * std::tgamma(0.2))).epsilon(1e-14));
  const int far = 1'000'000;
  CHECK(testing::rel_err(infinite_sum(far, 0.4, 0.2), c * std::pow(far, -0.4)) < 1e-5);
  CHECK(testing::rel_err(infinite_sum(far, 0.2, 0.4), asymptotic_constant_arfima(0.2, 0.4) * std::pow(far, -0.4)) <
        1e-5);
  CHECK(std::abs(c - asymptotic_constant_arfima(0.2, 0.4)) > 0.1);

  CHECK_PLXC_ERROR(asymptotic_cross_correlation_arfima(0, d1, d2, spec), ErrorCode::domain);
  CHECK_PLXC_ERROR(asymptotic_cross_correlation_arfima(5, FracDiffOrder(-0.1), d2, spec), ErrorCode::domain);
  CHECK_PLXC_ERROR(asymptotic_cross_correlation_arfima(5, d1, FracDiffOrder(0.0), spec), ErrorCode::domain);
}

TEST_CASE("ARFIMA/AR(1) exact cross-correlation") {
  const InnovationSpec spec{1, 4, 0.5};
  const double sx = process_std(FracDiffOrder(0.3), 1.0);

  SUBCASE("theta = 0 leaves one weight on the long-memory side") {
    const auto w = arfima_weights(FracDiffOrder(0.3), 6);
    for (int n = 0; n <= 6; ++n) {
      const double got = exact_cross_correlation_arfima_ar(-n, FracDiffOrder(0.3), ArCoefficient(0.0), spec).value;
      CHECK(got == doctest::Approx(w[n] * 0.5 / (sx * 2.0)).epsilon(1e-15));
    }
    CHECK(exact_cross_correlation_arfima_ar(3, FracDiffOrder(0.3), ArCoefficient(0.0), spec).value == 0.0);
  }

  SUBCASE("white x leaves one term on the AR side") {
    const double sy = 2.0 / std::sqrt(1 - 0.36);
    for (int n = 1; n <= 6; ++n) {
      const double got = exact_cross_correlation_arfima_ar(n, FracDiffOrder(0.0), ArCoefficient(0.6), spec).value;
      CHECK(got == doctest::Approx(std::pow(0.6, n) * 0.5 / sy).epsilon(1e-14));
      CHECK(exact_cross_correlation_arfima_ar(-n, FracDiffOrder(0.0), ArCoefficient(0.6), spec).value == 0.0);
    }
  }

  SUBCASE("golden value on the long-memory side") {
    // Direct 40-digit summation at K = 10^5.
    const auto r = exact_cross_correlation_arfima_ar(-100, FracDiffOrder(0.4), ArCoefficient(0.9), {1, 1, 0.5}, 100000);
    CHECK(testing::rel_err(r.value, 0.04100335207954134) < 1e-11);
    const auto d = exact_cross_correlation_arfima_ar(-100, FracDiffOrder(0.4), ArCoefficient(0.9), {1, 1, 0.5});
    CHECK(testing::rel_err(d.value, r.value) < 1e-13);
    CHECK(d.tail_bound < 1e-300);
  }

  SUBCASE("short-memory side is geometric") {
    const FracDiffOrder d1(0.4);
    const ArCoefficient th(0.7);
    const double r0 = exact_cross_correlation_arfima_ar(0, d1, th, spec).value;
    for (int n = 1; n <= 10; ++n)
      CHECK(exact_cross_correlation_arfima_ar(n, d1, th, spec).value == doctest::Approx(r0 * std::pow(0.7, n)).epsilon(1e-13));
  }
}

TEST_CASE("ARFIMA/AR(1) closed form") {
  const FracDiffOrder d1(0.4);
  const ArCoefficient th(0.5);
  std::vector<double> ratios;
  for (int n : {50, 100, 200}) {
    const double exact = exact_cross_correlation_arfima_ar(-n, d1, th, {1, 1, 1}).value;
    ratios.push_back(closed_form_cross_correlation_arfima_ar(n, 0.4, 0.5) / exact);
  }
  for (double r : ratios) CHECK(std::abs(r / ratios[0] - 1.0) < 0.02);

  const double c500 = closed_form_cross_correlation_arfima_ar(500, 0.4, 0.5) * std::pow(500.0, 0.6);
  const double c1000 = closed_form_cross_correlation_arfima_ar(1000, 0.4, 0.5) * std::pow(1000.0, 0.6);
  CHECK(c500 > 0.0);
  CHECK(std::abs(c500 / c1000 - 1.0) < 0.02);

  for (int n : {1, 10, 300}) {
    CHECK(closed_form_cross_correlation_arfima_ar(n, 1.0, 0.3) == doctest::Approx(-1.0 / std::log(0.3)).epsilon(1e-12));
    CHECK(log_closed_form_cross_correlation_arfima_ar(n, 0.4, 0.8) ==
          doctest::Approx(std::log(closed_form_cross_correlation_arfima_ar(n, 0.4, 0.8))).epsilon(1e-13));
  }
  // Far out the direct product under/overflows; the log form does not.
  CHECK(std::isfinite(log_closed_form_cross_correlation_arfima_ar(5000, 0.4, 0.05)));

  CHECK_PLXC_ERROR(closed_form_cross_correlation_arfima_ar(5, 0.4, 0.0), ErrorCode::domain);
  CHECK_PLXC_ERROR(closed_form_cross_correlation_arfima_ar(5, 0.4, -0.5), ErrorCode::domain);
  CHECK_PLXC_ERROR(closed_form_cross_correlation_arfima_ar(5, 0.4, 1.0), ErrorCode::domain);
  CHECK_PLXC_ERROR(closed_form_cross_correlation_arfima_ar(0, 0.4, 0.5), ErrorCode::domain);
  CHECK_PLXC_ERROR(closed_form_cross_correlation_arfima_ar(5, 0.0, 0.5), ErrorCode::domain);
}

TEST_CASE("ARFIMA/AR(1) decay exponent does not depend on theta") {
  const auto lags = log_spaced_lags(100, 1000, 20);
  std::vector<double> lx;
  for (auto n : lags) lx.push_back(std::log(static_cast<double>(n)));
  std::vector<double> slopes;
  for (double theta : {0.1, 0.9}) {
    std::vector<double> ly;
    for (auto n : lags)
      ly.push_back(std::log(
          std::abs(exact_cross_correlation_arfima_ar(-n, FracDiffOrder(0.4), ArCoefficient(theta), {1, 1, 0.5}).value)));
    slopes.push_back(ols_slope(lx, ly));
  }
  CHECK(std::abs(slopes[0] - slopes[1]) < 0.03);
}

TEST_CASE("inverse Fourier transform of the spectrum reproduces the exact sums") {
  const auto fd = arfima_pair(0.3, 0.1, {1, 1, 0.5});
  for (int n = -20; n <= 20; ++n) {
    CAPTURE(n);
    const double exact = exact_cross_correlation_arfima(n, FracDiffOrder(0.3), FracDiffOrder(0.1), fd.innovations).value;
    CHECK(testing::rel_err(cross_correlation_from_spectrum(fd, n), exact) < 0.01);
  }
  const auto ar = ar_pair(0.3, 0.5, {1, 1, 0.5});
  for (int n = -20; n <= 20; ++n) {
    CAPTURE(n);
    const double exact = exact_cross_correlation_arfima_ar(n, FracDiffOrder(0.3), ArCoefficient(0.5), ar.innovations).value;
    // The short-memory side decays geometrically; tiny values get an absolute floor.
    CHECK(std::abs(cross_correlation_from_spectrum(ar, n) - exact) < std::max(0.01 * std::abs(exact), 1e-8));
  }
}

TEST_CASE("analytic curves") {
  const auto params = arfima_pair(0.4, 0.2, {1, 1, 0.5});
  const std::vector<std::int64_t> lags{-5, 0, 3, 40};
  const auto c = exact_curve(params, lags);
  CHECK(c.kind == CurveKind::exact_truncated);
  CHECK(c.lags == lags);
  CHECK(c.values[2] == exact_cross_correlation_arfima(3, FracDiffOrder(0.4), FracDiffOrder(0.2), params.innovations).value);
  CHECK(c.sigma_x == doctest::Approx(process_std(FracDiffOrder(0.4), 1.0)));

  const std::vector<std::int64_t> pos{1, 10, 100};
  const auto a = asymptotic_curve(params, pos);
  CHECK(a.kind == CurveKind::asymptotic);
  CHECK(a.lags == pos);
  CHECK(a.values[1] == asymptotic_cross_correlation_arfima(10, FracDiffOrder(0.4), FracDiffOrder(0.2), params.innovations));

  const auto ar = asymptotic_curve(ar_pair(0.4, 0.5, {1, 1, 0.5}), pos);
  CHECK(ar.lags == std::vector<std::int64_t>{-100, -10, -1});
  // Sum over theta^k versus its integral: exact ~ curve * (-log theta) / (1 - theta) at large lag.
  const double exact = exact_cross_correlation_arfima_ar(-100, FracDiffOrder(0.4), ArCoefficient(0.5), {1, 1, 0.5}).value;
  CHECK(testing::rel_err(ar.values[0] * (-std::log(0.5) / 0.5), exact) < 0.02);

  const auto r = c.reflected();
  CHECK(r.lags == std::vector<std::int64_t>{-40, -3, 0, 5});
  CHECK(r.values[0] == c.values[3]);
  CHECK(r.sigma_x == c.sigma_y);
}

TEST_CASE("sample cross-correlation") {
  const auto p = simulate(arfima_pair(0.3, 0.2, {1, 1, 0.5}), {4096, 0, 3});

  SUBCASE("identical series") {
    const SeriesPair same(p.x(), p.x());
    CHECK(sample_cross_correlation(same, 5).values[5] == doctest::Approx(1.0).epsilon(1e-15));
  }

  SUBCASE("definition and bounds") {
    const auto c = sample_cross_correlation(p, 100);
    REQUIRE(c.size() == 201);
    CHECK(c.lags.front() == -100);
    CHECK(c.kind == CurveKind::sample);
    for (double v : c.values) CHECK(std::abs(v) <= 1.0);
    // Direct evaluation at n = 7 and n = -7.
    const double mx = testing::mean(p.x()), my = testing::mean(p.y());
    double sxx = 0, syy = 0, s7 = 0, sm7 = 0;
    const size_t n = p.size();
    for (size_t t = 0; t < n; ++t) {
      sxx += (p.x()[t] - mx) * (p.x()[t] - mx);
      syy += (p.y()[t] - my) * (p.y()[t] - my);
      if (t + 7 < n) s7 += (p.x()[t] - mx) * (p.y()[t + 7] - my);
      if (t >= 7) sm7 += (p.x()[t] - mx) * (p.y()[t - 7] - my);
    }
    CHECK(c.values[107] == doctest::Approx(s7 / std::sqrt(sxx * syy)).epsilon(1e-12));
    CHECK(c.values[93] == doctest::Approx(sm7 / std::sqrt(sxx * syy)).epsilon(1e-12));
  }

  SUBCASE("exchange symmetry is exact") {
    const auto c = sample_cross_correlation(p, 50);
    const auto s = sample_cross_correlation(p.swapped(), 50);
    for (size_t i = 0; i < c.size(); ++i) CHECK(c.values[i] == s.values[c.size() - 1 - i]);
  }

  SUBCASE("affine invariance") {
    std::vector<double> x2(p.x()), y2(p.y());
    for (auto& v : x2) v = 3.5 * v - 2.0;
    for (auto& v : y2) v = 0.25 * v + 7.0;
    const auto c = sample_cross_correlation(p, 50);
    const auto t = sample_cross_correlation(SeriesPair(x2, y2), 50);
    for (size_t i = 0; i < c.size(); ++i) CHECK(std::abs(c.values[i] - t.values[i]) < 1e-12);
  }

  SUBCASE("explicit lag list") {
    const auto c = sample_cross_correlation(p, 60);
    const std::vector<std::int64_t> lags{-60, -2, 0, 13, 60};
    const auto s = sample_cross_correlation_at(p, lags);
    for (size_t i = 0; i < lags.size(); ++i) CHECK(s.values[i] == doctest::Approx(c.values[lags[i] + 60]).epsilon(1e-12));
  }

  SUBCASE("errors") {
    CHECK_PLXC_ERROR(sample_cross_correlation(p, 1024), ErrorCode::invalid_argument);
    const SeriesPair flat(std::vector<double>(100, 2.0), std::vector<double>(p.y().begin(), p.y().begin() + 100));
    CHECK_PLXC_ERROR(sample_cross_correlation(flat, 5), ErrorCode::degenerate_input);
  }
}

TEST_CASE("sample cross-correlation of independent white noise") {
  constexpr std::uint64_t n = 1u << 15;
  const double bound = 4.0 / std::sqrt(static_cast<double>(n));
  int inside = 0, total = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto p = simulate(arfima_pair(0.0, 0.0, {1, 1, 0}), {n, n, seed});
    const auto c = sample_cross_correlation(p, 100);
    for (size_t i = 101; i < c.size(); ++i) {
      inside += std::abs(c.values[i]) < bound;
      ++total;
    }
  }
  CHECK(static_cast<double>(inside) / total >= 0.99);
}

TEST_CASE("log-spaced lags") {
  const auto lags = log_spaced_lags(10, 1000, 40);
  CHECK(lags.front() == 10);
  CHECK(lags.back() == 1000);
  for (size_t i = 1; i < lags.size(); ++i) CHECK(lags[i] > lags[i - 1]);
  CHECK(log_spaced_lags(1, 5, 40).size() == 5);
}
