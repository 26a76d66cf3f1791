#pragma once

// Real branches of the Lambert W function, the inverse of w -> w e^w.
//
//   W0  (principal): x >= -1/e, W >= -1
//   W-1 (lower):     -1/e <= x < 0, W <= -1
//
// Both branches meet at the branch point x = -1/e with value -1.

namespace lwsim::lambert {

enum class BranchId { Principal, Lower };

/// Value together with the quality of the defining identity w e^w = x.
struct WEvaluation {
  double value = 0.0;
  /// |w e^w - x| / max(|x|, 1e-300)
  double residual = 0.0;
  int iterations = 0;
};

/// -1/e rounded to double.
inline constexpr double kBranchPoint = -0.36787944117144232159552377016146;

/// Inputs this far below the branch point are clamped onto it.
inline constexpr double kBranchClamp = 1e-15;

WEvaluation w_principal(double x);
WEvaluation w_lower(double x);
WEvaluation evaluate(BranchId branch, double x);

/// W0(exp(log_x)) for arguments whose exponential would overflow.
/// Accepts any finite log_x; falls back to w_principal when exp(log_x) is
/// representable.
double w_principal_of_log(double log_x);

/// Partial sum of sum_{n>=1} (-n)^(n-1)/n! x^n with n_terms terms.
/// Requires |x| < 1/e and 1 <= n_terms <= 30.
double w_series(double x, int n_terms);

/// Tree function T(x) = -W0(-x), defined for x <= 1/e.
double tree_t(double x);

}  // namespace lwsim::lambert
