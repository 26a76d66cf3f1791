#include "lwsim/lambert_w.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "lwsim/errors.hpp"

namespace lwsim::lambert {
namespace {

constexpr int kMaxIterations = 50;
constexpr double kStepTolerance = 1e-15;

// e split into a double and its rounding error, so that e*x + 1 keeps its
// low bits when x is close to -1/e.
constexpr double kEHi = 2.718281828459045;
constexpr double kELo = 1.4456468917292502e-16;

// Expansion of W around the branch point in p = +/- sqrt(2(e x + 1)).
// Positive p gives W0, negative p gives W-1.
constexpr std::array<double, 10> kBranchSeries = {
    -1.0,
    1.0,
    -1.0 / 3.0,
    11.0 / 72.0,
    -43.0 / 540.0,
    769.0 / 17280.0,
    -221.0 / 8505.0,
    680863.0 / 43545600.0,
    -1963.0 / 204120.0,
    226287557.0 / 37623398400.0,
};

// Below this |p| the truncated branch series is already exact to rounding.
constexpr double kSeriesOnlyP = 0.02;

double distance_to_branch(double x) {
  // e*x + 1, compensated
  return std::fma(kEHi, x, 1.0) + kELo * x;
}

double branch_series(double p) {
  double s = 0.0;
  for (auto it = kBranchSeries.rbegin(); it != kBranchSeries.rend(); ++it) {
    s = s * p + *it;
  }
  return s;
}

double relative_residual(double w, double x) {
  if (std::isinf(w)) return 0.0;
  const double r = std::abs(w * std::exp(w) - x);
  return r / std::max(std::abs(x), 1e-300);
}

WEvaluation halley(double x, double w) {
  WEvaluation out;
  for (int i = 0; i < kMaxIterations; ++i) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double wp1 = w + 1.0;
    if (wp1 == 0.0) break;
    const double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
    if (denom == 0.0 || !std::isfinite(denom)) break;
    const double step = f / denom;
    w -= step;
    out.iterations = i + 1;
    if (std::abs(step) <= kStepTolerance * (1.0 + std::abs(w))) break;
  }
  out.value = w;
  out.residual = relative_residual(w, x);
  return out;
}

void check_finite(double x, const char* what) {
  if (std::isnan(x)) {
    throw DomainError(std::string(what) + ": argument is NaN");
  }
}

WEvaluation at_branch_point(double x) {
  return {-1.0, relative_residual(-1.0, x), 0};
}

}  // namespace

WEvaluation w_principal(double x) {
  check_finite(x, "w_principal");
  if (x < kBranchPoint - kBranchClamp) {
    throw DomainError("w_principal: x must be >= -1/e, got " +
                      std::to_string(x));
  }
  if (x == 0.0) return {0.0, 0.0, 0};
  if (x == std::numeric_limits<double>::infinity()) {
    return {x, 0.0, 0};
  }

  const double q = distance_to_branch(x);
  if (q <= 0.0) return at_branch_point(x);

  double guess;
  if (x < -0.32) {
    const double p = std::sqrt(2.0 * q);
    guess = branch_series(p);
    if (p < kSeriesOnlyP) return {guess, relative_residual(guess, x), 0};
  } else if (std::abs(x) <= 0.05) {
    guess = w_series(x, 8);
  } else if (x > 2.718281828459045) {
    const double l1 = std::log(x);
    const double l2 = std::log(l1);
    guess = l1 - l2 + l2 / l1;
  } else {
    // Winitzki's global approximation, good to a few percent on (-1/e, e].
    const double l = std::log1p(x);
    guess = l * (1.0 - std::log1p(l) / (2.0 + l));
  }
  return halley(x, guess);
}

WEvaluation w_lower(double x) {
  check_finite(x, "w_lower");
  if (x >= 0.0) {
    throw DomainError("w_lower: x must be negative, got " + std::to_string(x));
  }
  if (x < kBranchPoint - kBranchClamp) {
    throw DomainError("w_lower: x must be >= -1/e, got " + std::to_string(x));
  }

  const double q = distance_to_branch(x);
  if (q <= 0.0) return at_branch_point(x);

  double guess;
  if (x < -0.25) {
    const double p = std::sqrt(2.0 * q);
    guess = branch_series(-p);
    if (p < kSeriesOnlyP) return {guess, relative_residual(guess, x), 0};
  } else {
    const double l1 = std::log(-x);
    const double l2 = std::log(-l1);
    guess = l1 - l2 + l2 / l1;
  }
  return halley(x, guess);
}

WEvaluation evaluate(BranchId branch, double x) {
  return branch == BranchId::Principal ? w_principal(x) : w_lower(x);
}

double w_principal_of_log(double log_x) {
  check_finite(log_x, "w_principal_of_log");
  if (log_x < 700.0) return w_principal(std::exp(log_x)).value;
  if (std::isinf(log_x)) return log_x;
  // Newton on w + ln(w) = log_x; w > 600 here, so the map is nearly linear.
  double w = log_x - std::log(log_x);
  for (int i = 0; i < kMaxIterations; ++i) {
    const double step = (w + std::log(w) - log_x) / (1.0 + 1.0 / w);
    w -= step;
    if (std::abs(step) <= kStepTolerance * w) break;
  }
  return w;
}

double w_series(double x, int n_terms) {
  if (n_terms < 1 || n_terms > 30) {
    throw DomainError("w_series: n_terms must be in [1, 30], got " +
                      std::to_string(n_terms));
  }
  check_finite(x, "w_series");
  if (std::abs(x) >= -kBranchPoint) {
    throw DomainError("w_series: |x| must be below 1/e, got " +
                      std::to_string(x));
  }
  // Horner from the highest coefficient (-n)^(n-1)/n! down to n = 1.
  double s = 0.0;
  for (int n = n_terms; n >= 1; --n) {
    const double magnitude = std::pow(static_cast<double>(n), n - 1) /
                             std::tgamma(static_cast<double>(n) + 1.0);
    const double coeff = (n % 2 == 1) ? magnitude : -magnitude;
    s = s * x + coeff;
  }
  return s * x;
}

double tree_t(double x) {
  check_finite(x, "tree_t");
  if (x > -kBranchPoint) {
    throw DomainError("tree_t: x must be <= 1/e, got " + std::to_string(x));
  }
  return -w_principal(-x).value;
}

}  // namespace lwsim::lambert
