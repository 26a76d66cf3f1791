#pragma once

// Per-family formulas, indexed by FamilyId. Parameters arrive in the family's
// declared order and have already been validated.

#include <optional>
#include <span>
#include <vector>

#include "lwsim/distributions.hpp"

namespace lwsim::detail {

/// Survival function for t strictly inside the support.
double survival_inside(FamilyId id, std::span<const double> p, double t);

/// Implemented (verified or corrected) quantile; u in (0, max_probability).
double analytic_quantile(FamilyId id, std::span<const double> p, double u);

/// Published expression, literal. See lwsim::printed_quantile.
std::vector<double> printed_quantile(FamilyId id, std::span<const double> p,
                                     double u);

std::optional<double> lambert_argument(FamilyId id, std::span<const double> p,
                                       double u);

}  // namespace lwsim::detail
