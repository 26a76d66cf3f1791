#include "lwsim/distributions.hpp"

#include <cassert>
#include <cmath>
#include <limits>
#include <string>

#include "family_detail.hpp"
#include "lwsim/errors.hpp"
#include "lwsim/lambert_w.hpp"

namespace lwsim {
namespace {

constexpr int kMaxDoublings = 1000;
constexpr int kMaxBisections = 2200;
constexpr int kPolishSteps = 8;

void check_probability(const DistributionSpec& spec, double u,
                       const char* caller) {
  if (!(u > 0.0 && u < 1.0)) {
    throw DomainError(std::string(caller) + ": u must lie in (0, 1), got " +
                      std::to_string(u));
  }
  if (!(u < spec.max_probability())) {
    throw DomainError(std::string(caller) + ": " +
                      std::string(family_name(spec.family())) +
                      " puts mass at infinity; u must be below " +
                      std::to_string(spec.max_probability()));
  }
}

double clamp_to_support(const DistributionSpec& spec, double t) {
  const auto [lo, hi] = spec.support();
  if (t < lo) return lo;
  if (t > hi) return hi;
  return t;
}

// Density by central difference, one-sided at a finite support bound.
double density_estimate(const DistributionSpec& spec, double t) {
  const auto [lo, hi] = spec.support();
  const double h = 1e-6 * std::max(std::abs(t), 1e-8);
  double left = t - h;
  double right = t + h;
  if (left < lo) left = t;
  if (right > hi) right = t;
  if (right == left) return 0.0;
  return (cdf(spec, right) - cdf(spec, left)) / (right - left);
}

}  // namespace

double survival(const DistributionSpec& spec, double t) {
  const auto [lo, hi] = spec.support();
  if (std::isnan(t)) return t;
  if (t <= lo) return 1.0;
  if (t >= hi) return 0.0;
  const double s = detail::survival_inside(spec.family(), spec.values(), t);
  if (s < 0.0) return 0.0;
  if (s > 1.0) return 1.0;
  return s;
}

double cdf(const DistributionSpec& spec, double t) {
  return 1.0 - survival(spec, t);
}

std::string_view path_name(QuantilePath path) {
  switch (path) {
    case QuantilePath::AnalyticVerified:
      return "AnalyticVerified";
    case QuantilePath::AnalyticCorrected:
      return "AnalyticCorrected";
    case QuantilePath::Numeric:
      return "Numeric";
  }
  return "?";
}

QuantileResult quantile(const DistributionSpec& spec, double u) {
  const FamilyInfo& info = family_info(spec.family());
  if (info.kind == QuantileKind::None) {
    throw NoAnalyticForm(std::string(info.name) +
                         ": no closed-form or Lambert-W quantile; use "
                         "numeric_quantile");
  }
  check_probability(spec, u, "quantile");

#ifndef NDEBUG
  if (const auto arg = detail::lambert_argument(spec.family(), spec.values(), u)) {
    assert(*arg >= 0.0 && "Lambert-W argument must be nonnegative");
  }
#endif

  QuantileResult out;
  out.t = clamp_to_support(
      spec, detail::analytic_quantile(spec.family(), spec.values(), u));
  out.path = info.implements_printed_form ? QuantilePath::AnalyticVerified
                                          : QuantilePath::AnalyticCorrected;
  out.roundtrip_residual = std::abs(cdf(spec, out.t) - u);
  return out;
}

QuantileResult numeric_quantile(const DistributionSpec& spec, double u,
                                double tol) {
  check_probability(spec, u, "numeric_quantile");
  if (!(tol >= kMinNumericTolerance)) {
    throw DomainError("numeric_quantile: tol must be at least 1e-14");
  }
  const auto F = [&](double t) { return cdf(spec, t); };
  const auto [support_lo, support_hi] = spec.support();

  // Bracket [lo, hi] with F(lo) < u <= F(hi).
  double lo = support_lo;
  double hi = support_hi;
  const double origin = std::isfinite(support_lo) ? support_lo : 0.0;
  if (!std::isfinite(support_lo) && F(origin) >= u) {
    hi = origin;
    double step = 1.0;
    int n = 0;
    while (F(origin - step) >= u) {
      hi = origin - step;
      step *= 2.0;
      if (++n > kMaxDoublings) {
        throw BracketError("numeric_quantile: no lower bracket for u = " +
                           std::to_string(u));
      }
    }
    lo = origin - step;
  } else if (!std::isfinite(support_hi)) {
    lo = origin;
    double step = 1.0;
    int n = 0;
    while (F(origin + step) < u) {
      lo = origin + step;
      step *= 2.0;
      if (++n > kMaxDoublings) {
        throw BracketError("numeric_quantile: no upper bracket for u = " +
                           std::to_string(u));
      }
    }
    hi = origin + step;
  }

  double best = hi;
  double best_residual = std::abs(F(hi) - u);
  for (int i = 0; i < kMaxBisections; ++i) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    const double fm = F(mid);
    const double r = std::abs(fm - u);
    if (r < best_residual) {
      best = mid;
      best_residual = r;
    }
    if (r <= tol) break;
    if (fm < u) {
      lo = mid;
    } else {
      hi = mid;
    }
  }

  // Newton polish inside the final bracket; keep only improving steps.
  for (int i = 0; i < kPolishSteps && best_residual > 0.0; ++i) {
    const double f = density_estimate(spec, best);
    if (!(f > 0.0) || !std::isfinite(f)) break;
    const double next = best - (F(best) - u) / f;
    if (!(next >= lo && next <= hi)) break;
    const double r = std::abs(F(next) - u);
    if (!(r < best_residual)) break;
    best = next;
    best_residual = r;
  }

  return {best, QuantilePath::Numeric, best_residual};
}

std::vector<double> printed_quantile(const DistributionSpec& spec, double u) {
  if (!has_analytic_quantile(spec.family())) {
    throw NoAnalyticForm(std::string(family_name(spec.family())) +
                         ": no printed quantile");
  }
  return detail::printed_quantile(spec.family(), spec.values(), u);
}

std::optional<double> lambert_argument(const DistributionSpec& spec,
                                       double u) {
  check_probability(spec, u, "lambert_argument");
  return detail::lambert_argument(spec.family(), spec.values(), u);
}

double gompertz_makeham_nested_form(const DistributionSpec& spec, double u) {
  if (spec.family() != FamilyId::GompertzMakeham) {
    throw DomainError("gompertz_makeham_nested_form: wrong family");
  }
  check_probability(spec, u, "gompertz_makeham_nested_form");
  return detail::printed_quantile(spec.family(), spec.values(), u).front();
}

double gompertz_makeham_subtractive_form(const DistributionSpec& spec,
                                         double u) {
  if (spec.family() != FamilyId::GompertzMakeham) {
    throw DomainError("gompertz_makeham_subtractive_form: wrong family");
  }
  check_probability(spec, u, "gompertz_makeham_subtractive_form");
  return detail::analytic_quantile(spec.family(), spec.values(), u);
}

HazardValue wl_hazard(double a, double b, double c, double t) {
  if (!(a > 0.0) || !(b > 0.0) || !(c >= 0.0)) {
    throw ParamError("wl_hazard: requires a > 0, b > 0, c >= 0");
  }
  if (!(t > 0.0)) {
    throw DomainError("wl_hazard: t must be positive, got " +
                      std::to_string(t));
  }
  const double rate =
      a * (b + c * t) * std::pow(t, b - 1.0) * std::exp(c * t);
  return {rate, b >= 1.0 ? HazardShape::Increasing : HazardShape::Bathtub};
}

}  // namespace lwsim
