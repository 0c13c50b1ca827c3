#include "plxc/special.hpp"

#include <cmath>
#include <limits>

#include "plxc/error.hpp"

namespace plxc {

namespace {

constexpr int kMaxIterations = 100000;
constexpr double kEps = std::numeric_limits<double>::epsilon();

void check_domain(double s, double x) {
  require(std::isfinite(s) && s > 0.0, ErrorCode::domain, "incomplete gamma requires s > 0");
  require(!std::isnan(x) && x >= 0.0, ErrorCode::domain, "incomplete gamma requires x >= 0");
}

// Regularized lower gamma P(s, x) by its power series, x < s + 1.
double lower_regularized_series(double s, double x) {
  double term = 1.0 / s;
  double sum = term;
  for (int k = 1; k < kMaxIterations; ++k) {
    term *= x / (s + k);
    sum += term;
    if (std::abs(term) < std::abs(sum) * kEps) {
      return sum * std::exp(s * std::log(x) - x - std::lgamma(s));
    }
  }
  fail(ErrorCode::domain, "incomplete gamma series failed to converge");
}

// log of the continued fraction in Gamma(s, x) = exp(-x) x^s / (x + 1 - s - 1(1-s)/(x + 3 - s - ...)).
double log_continued_fraction(double s, double x) {
  constexpr double tiny = std::numeric_limits<double>::min() / kEps;
  double b = x + 1.0 - s;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIterations; ++i) {
    const double an = -i * (i - s);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) return std::log(h);
  }
  fail(ErrorCode::domain, "incomplete gamma continued fraction failed to converge");
}

}  // namespace

double log_upper_incomplete_gamma(double s, double x) {
  check_domain(s, x);
  if (x == 0.0) return std::lgamma(s);
  if (std::isinf(x)) return -std::numeric_limits<double>::infinity();
  if (x < s + 1.0) return std::lgamma(s) + std::log1p(-lower_regularized_series(s, x));
  return -x + s * std::log(x) + log_continued_fraction(s, x);
}

double upper_incomplete_gamma(double s, double x) {
  check_domain(s, x);
  if (x == 0.0) return std::tgamma(s);
  if (x < s + 1.0) return std::tgamma(s) * (1.0 - lower_regularized_series(s, x));
  return std::exp(log_upper_incomplete_gamma(s, x));
}

}  // namespace plxc
