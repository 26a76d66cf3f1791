#pragma once

namespace lwsim::special {

/// P(Z <= x) for a standard normal Z. Saturates to exactly 0 / 1 for |x| > 40.
double std_normal_cdf(double x);

/// Standard normal density.
double std_normal_pdf(double x);

/// Inverse of std_normal_cdf on the open interval (0, 1).
double std_normal_quantile(double p);

}  // namespace lwsim::special
