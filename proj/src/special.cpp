#include "lwsim/special.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "lwsim/errors.hpp"

namespace lwsim::special {
namespace {

// Acklam's rational approximation to the normal quantile (relative error
// about 1.15e-9), refined below with Halley steps against the erfc-based CDF.
constexpr double kA[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                         -2.759285104469687e+02, 1.383577518672690e+02,
                         -3.066479806614716e+01, 2.506628277459239e+00};
constexpr double kB[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                         -1.556989798598866e+02, 6.680131188771972e+01,
                         -1.328068155288572e+01};
constexpr double kC[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                         -2.400758277161838e+00, -2.549732539343734e+00,
                         4.374664141464968e+00,  2.938163982698783e+00};
constexpr double kD[] = {7.784695709041462e-03, 3.224671290700398e-01,
                         2.445134137142996e+00, 3.754408661907416e+00};

constexpr double kLowBreak = 0.02425;

double acklam(double p) {
  if (p < kLowBreak) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((kC[0] * q + kC[1]) * q + kC[2]) * q + kC[3]) * q + kC[4]) * q +
            kC[5]) /
           ((((kD[0] * q + kD[1]) * q + kD[2]) * q + kD[3]) * q + 1.0);
  }
  if (p > 1.0 - kLowBreak) return -acklam(1.0 - p);
  const double q = p - 0.5;
  const double r = q * q;
  return (((((kA[0] * r + kA[1]) * r + kA[2]) * r + kA[3]) * r + kA[4]) * r +
          kA[5]) *
         q /
         (((((kB[0] * r + kB[1]) * r + kB[2]) * r + kB[3]) * r + kB[4]) * r +
          1.0);
}

}  // namespace

double std_normal_cdf(double x) {
  if (x > 40.0) return 1.0;
  if (x < -40.0) return 0.0;
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double std_normal_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

double std_normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("std_normal_quantile: p must lie in (0, 1), got " +
                      std::to_string(p));
  }
  if (p == 0.5) return 0.0;
  // Work in the lower tail, where the CDF has full relative precision.
  const bool upper = p > 0.5;
  const double tail = upper ? 1.0 - p : p;
  double x = acklam(tail);
  for (int i = 0; i < 2; ++i) {
    const double e = std_normal_cdf(x) - tail;
    const double u = e / std_normal_pdf(x);
    x -= u / (1.0 + 0.5 * x * u);
  }
  return upper ? -x : x;
}

}  // namespace lwsim::special
