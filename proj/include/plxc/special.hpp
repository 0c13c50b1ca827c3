#pragma once

namespace plxc {

/// Upper incomplete gamma Gamma(s, x) = integral_x^inf t^(s-1) e^(-t) dt for
/// s > 0, x >= 0. Series for x < s + 1, Lentz continued fraction otherwise.
double upper_incomplete_gamma(double s, double x);

/// log Gamma(s, x); stays finite where Gamma(s, x) underflows.
double log_upper_incomplete_gamma(double s, double x);

}  // namespace plxc
