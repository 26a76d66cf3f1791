// Survival functions, implemented quantiles and the published quantile
// expressions for every family.
//
// Implemented quantiles use log1p/expm1 rewrites of the same algebra so that
// u near 0 or 1 keeps its precision. The printed forms are transcribed
// literally with plain log/pow and no rewriting.

#include <cmath>
#include <limits>

#include "family_detail.hpp"
#include "lwsim/errors.hpp"
#include "lwsim/lambert_w.hpp"
#include "lwsim/special.hpp"

namespace lwsim::detail {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

using std::exp;
using std::expm1;
using std::log;
using std::log1p;
using std::pow;
using std::sqrt;

// W0 for a nonnegative argument that may have overflowed to +inf.
double w0(double arg) { return lambert::w_principal(arg).value; }

// W0(exp(log_arg)); exact path for moderate arguments.
double w0_log(double log_arg) { return lambert::w_principal_of_log(log_arg); }

// W0 as a printed expression would see it: NaN outside the real domain.
double printed_w(double arg) {
  if (std::isnan(arg) || arg < lambert::kBranchPoint) return kNaN;
  return lambert::w_principal(arg).value;
}

// Inverse of the CDF t -> Phi(t) - 1/2 implied by integrating the normal
// density from 0; only defined for u < 1/2.
double half_normal_style_quantile(double u) {
  const double shifted = u + 0.5;
  if (!(shifted > 0.0 && shifted < 1.0)) return kNaN;
  return special::std_normal_quantile(shifted);
}

}  // namespace

double survival_inside(FamilyId id, std::span<const double> p, double t) {
  switch (id) {
    case FamilyId::Weibull2:
      return exp(-p[0] * pow(t, p[1]));
    case FamilyId::Gompertz2:
      return exp(-(p[0] / p[1]) * expm1(p[1] * t));
    case FamilyId::TruncLogWeibull:
      return exp(-exp((t - p[0]) / p[1]));
    case FamilyId::FlexibleWeibull:
      if (t <= 0.0) return 1.0;
      return exp(-exp(p[0] * t - p[1] / t));
    case FamilyId::Pham:
      return exp(-expm1(pow(t, p[1]) * log(p[0])));
    case FamilyId::ExpWeibull:
      return -expm1(p[2] * log(-expm1(-p[0] * pow(t, p[1]))));
    case FamilyId::ModWeibullExt:
      return exp(-p[0] * p[1] * expm1(pow(t / p[1], p[2])));
    case FamilyId::ExpInvWeibull:
      if (t <= 0.0) return 1.0;
      return pow(-expm1(-p[0] * pow(t, -p[2])), p[1]);
    case FamilyId::GenWeibull: {
      const double base = 1.0 - p[0] * p[2] * pow(t, p[1]);
      return base <= 0.0 ? 0.0 : pow(base, 1.0 / p[2]);
    }
    case FamilyId::ExtWeibull: {
      const double x = exp(-pow(p[1] * t, p[2]));
      return p[0] * x / (1.0 - (1.0 - p[0]) * x);
    }
    case FamilyId::GenPowerWeibull:
      return exp(1.0 - pow(1.0 + p[0] * pow(t, p[1]), 1.0 / p[2]));
    case FamilyId::OddWeibull:
      return 1.0 / (1.0 + pow(expm1(p[0] * pow(t, p[1])), p[2]));
    case FamilyId::Kies4:
      return exp(-p[2] * pow((t - p[0]) / (p[1] - t), p[3]));
    case FamilyId::ExpKumWeibull5: {
      // F = [1 - {1 - (1 - x)^a}^b]^c with x = exp(-d t^e)
      const double one_minus_x = -expm1(-p[3] * pow(t, p[4]));
      const double inner = -expm1(p[1] * log1p(-pow(one_minus_x, p[0])));
      return -expm1(p[2] * log(inner));
    }
    case FamilyId::LaiWeibull3:
      return exp(-p[0] * pow(t, p[1]) * exp(p[2] * t));
    case FamilyId::InvModWeibull:
      if (t <= 0.0) return 1.0;
      return -expm1(-pow(p[0] / t, p[1]) * exp(p[2] / t));
    case FamilyId::XieLai3:
      return exp(-pow(p[0] * t, p[1]) - pow(p[0] * t, 1.0 / p[1]) - p[2] * t);
    case FamilyId::GenModWeibull:
      return -expm1(p[3] *
                    log(-expm1(-p[0] * pow(t, p[2]) * exp(p[1] * t))));
    case FamilyId::ShiftedModWeibull: {
      const double s = t - p[3];
      return exp(-pow(p[0] * s, p[1]) * exp(p[2] * s));
    }
    case FamilyId::AdditiveWeibull:
      return exp(-p[0] * pow(t, p[1]) - p[2] * pow(t, p[3]));
    case FamilyId::NadarajahKotz:
      return exp(-p[0] * pow(t, p[1]) * expm1(p[2] * pow(t, p[3])));
    case FamilyId::KumModWeibull: {
      const double one_minus_x =
          -expm1(-p[2] * pow(t, p[3]) * exp(p[4] * t));
      return exp(p[1] * log1p(-pow(one_minus_x, p[0])));
    }
    case FamilyId::Phani5:
      return exp(-p[2] * pow(t - p[0], p[3]) / pow(p[1] - t, p[4]));
    case FamilyId::ModLogLogistic:
      return 1.0 / (1.0 + pow(p[0] * t, p[1]) * exp(p[2] * t));
    case FamilyId::GompertzMakeham:
      return exp(-p[0] * t - (p[1] / p[2]) * expm1(p[2] * t));
    case FamilyId::ModPowerLomax:
      return pow(1.0 + pow(p[0] * t, p[1]) * exp(p[2] * t), -p[3]);
    case FamilyId::ModPareto4: {
      const double s = t - p[4];
      return pow(1.0 + pow(p[0] * s, 1.0 / p[1]) * exp(p[2] * s), -p[3]);
    }
    case FamilyId::ModLognormal: {
      const double z = (p[1] * log(p[0] * t) + p[2] * t - p[3]) / p[4];
      return special::std_normal_cdf(-z);
    }
  }
  return kNaN;
}

std::optional<double> lambert_argument(FamilyId id, std::span<const double> p,
                                       double u) {
  const double cum_hazard = -log1p(-u);  // -ln(1-u)
  switch (id) {
    case FamilyId::LaiWeibull3:
      return (p[2] / p[1]) * pow(cum_hazard / p[0], 1.0 / p[1]);
    case FamilyId::InvModWeibull:
      return (p[2] / (p[1] * p[0])) * pow(-log(u), 1.0 / p[1]);
    case FamilyId::GenModWeibull: {
      const double y = -log1p(-pow(u, 1.0 / p[3])) / p[0];
      return (p[1] / p[2]) * pow(y, 1.0 / p[2]);
    }
    case FamilyId::ShiftedModWeibull:
      return p[2] * pow(cum_hazard, 1.0 / p[1]) / (p[0] * p[1]);
    case FamilyId::KumModWeibull: {
      const double v = -expm1(log1p(-u) / p[1]);  // 1 - (1-u)^(1/b)
      const double y = -log1p(-pow(v, 1.0 / p[0])) / p[2];
      return (p[4] / p[3]) * pow(y, 1.0 / p[3]);
    }
    case FamilyId::ModLogLogistic:
      return (p[2] / (p[0] * p[1])) * pow(u / (1.0 - u), 1.0 / p[1]);
    case FamilyId::GompertzMakeham:
      return (p[1] / p[0]) * exp((p[1] + p[2] * cum_hazard) / p[0]);
    case FamilyId::ModPowerLomax:
      return (p[2] / (p[0] * p[1])) *
             pow(expm1(cum_hazard / p[3]), 1.0 / p[1]);
    case FamilyId::ModPareto4: {
      const double bc = p[1] * p[2];
      return (bc / p[0]) * pow(expm1(cum_hazard / p[3]), p[1]);
    }
    case FamilyId::ModLognormal: {
      const double z = special::std_normal_quantile(u);
      return (p[2] / (p[0] * p[1])) * exp((p[4] * z + p[3]) / p[1]);
    }
    default:
      return std::nullopt;
  }
}

double analytic_quantile(FamilyId id, std::span<const double> p, double u) {
  const double cum_hazard = -log1p(-u);  // -ln(1-u)
  switch (id) {
    case FamilyId::Weibull2:
      return pow(cum_hazard / p[0], 1.0 / p[1]);
    case FamilyId::Gompertz2:
      return log1p((p[1] / p[0]) * cum_hazard) / p[1];
    case FamilyId::TruncLogWeibull:
      return p[0] + p[1] * log(cum_hazard);
    case FamilyId::FlexibleWeibull: {
      // positive root of a t^2 - y t - b = 0
      const double y = log(cum_hazard);
      const double disc = sqrt(y * y + 4.0 * p[0] * p[1]);
      if (y >= 0.0) return (y + disc) / (2.0 * p[0]);
      return 2.0 * p[1] / (disc - y);
    }
    case FamilyId::Pham:
      return pow(log1p(cum_hazard) / log(p[0]), 1.0 / p[1]);
    case FamilyId::ExpWeibull:
      return pow(-log1p(-pow(u, 1.0 / p[2])) / p[0], 1.0 / p[1]);
    case FamilyId::ModWeibullExt:
      return p[1] * pow(log1p(cum_hazard / (p[0] * p[1])), 1.0 / p[2]);
    case FamilyId::ExpInvWeibull: {
      const double v = -expm1(log1p(-u) / p[1]);  // 1 - (1-u)^(1/b)
      return pow(-p[0] / log(v), 1.0 / p[2]);
    }
    case FamilyId::GenWeibull:
      return pow(-expm1(p[2] * log1p(-u)) / (p[0] * p[2]), 1.0 / p[1]);
    case FamilyId::ExtWeibull:
      return pow(log1p(-u * (1.0 - p[0])) + cum_hazard, 1.0 / p[2]) / p[1];
    case FamilyId::GenPowerWeibull:
      return pow(expm1(p[2] * log1p(cum_hazard)) / p[0], 1.0 / p[1]);
    case FamilyId::OddWeibull:
      return pow(log1p(pow(u / (1.0 - u), 1.0 / p[2])) / p[0], 1.0 / p[1]);
    case FamilyId::Kies4: {
      const double r = pow(cum_hazard / p[2], 1.0 / p[3]);
      if (std::isinf(r)) return p[1];
      return (p[1] * r + p[0]) / (r + 1.0);
    }
    case FamilyId::ExpKumWeibull5: {
      const double v1 = -expm1(log(u) / p[2]);    // 1 - u^(1/c)
      const double v2 = -expm1(log(v1) / p[1]);   // 1 - v1^(1/b)
      const double v3 = pow(v2, 1.0 / p[0]);      // 1 - exp(-d t^e)
      return pow(-log1p(-v3) / p[3], 1.0 / p[4]);
    }
    case FamilyId::LaiWeibull3:
      return (p[1] / p[2]) * w0(*lambert_argument(id, p, u));
    case FamilyId::InvModWeibull:
      return (p[2] / p[1]) / w0(*lambert_argument(id, p, u));
    case FamilyId::GenModWeibull:
      return (p[2] / p[1]) * w0(*lambert_argument(id, p, u));
    case FamilyId::ShiftedModWeibull:
      return p[3] + (p[1] / p[2]) * w0(*lambert_argument(id, p, u));
    case FamilyId::KumModWeibull:
      return (p[3] / p[4]) * w0(*lambert_argument(id, p, u));
    case FamilyId::ModLogLogistic:
      return (p[1] / p[2]) * w0(*lambert_argument(id, p, u));
    case FamilyId::GompertzMakeham: {
      const double log_arg = log(p[1] / p[0]) + (p[1] + p[2] * cum_hazard) / p[0];
      return (p[1] / p[2] + cum_hazard) / p[0] - w0_log(log_arg) / p[2];
    }
    case FamilyId::ModPowerLomax:
      return (p[1] / p[2]) * w0(*lambert_argument(id, p, u));
    case FamilyId::ModPareto4: {
      const double bc = p[1] * p[2];
      return p[4] + w0(*lambert_argument(id, p, u)) / bc;
    }
    case FamilyId::ModLognormal: {
      const double z = special::std_normal_quantile(u);
      const double log_arg =
          log(p[2] / (p[0] * p[1])) + (p[4] * z + p[3]) / p[1];
      return (p[1] / p[2]) * w0_log(log_arg);
    }
    case FamilyId::XieLai3:
    case FamilyId::AdditiveWeibull:
    case FamilyId::NadarajahKotz:
    case FamilyId::Phani5:
      break;
  }
  throw NoAnalyticForm("no analytic quantile for this family");
}

std::vector<double> printed_quantile(FamilyId id, std::span<const double> p,
                                     double u) {
  switch (id) {
    case FamilyId::Weibull2: {
      const double a = p[0], b = p[1];
      return {pow(log(1 - u) / (-a), 1 / b)};
    }
    case FamilyId::Gompertz2: {
      const double a = p[0], b = p[1];
      return {(1 / b) * log(1 - (b / a) * log(1 - u))};
    }
    case FamilyId::TruncLogWeibull: {
      const double a = p[0], b = p[1];
      return {a + b * log(-log(1 - u))};
    }
    case FamilyId::FlexibleWeibull: {
      const double a = p[0], b = p[1];
      const double root = sqrt(pow(log(-log(1 - u)), 2) + 4 * a * b);
      return {-log(-log(1 - u) + root) / (2 * a),
              -log(-log(1 - u) - root) / (2 * a)};
    }
    case FamilyId::Pham: {
      const double a = p[0], b = p[1];
      return {pow(log(1 - log(1 - u)) / log(a), 1 / b)};
    }
    case FamilyId::ExpWeibull: {
      const double a = p[0], b = p[1], c = p[2];
      return {pow((-1 / a) * log(1 - pow(u, 1 / c)), 1 / b)};
    }
    case FamilyId::ModWeibullExt: {
      const double a = p[0], b = p[1], c = p[2];
      return {a * pow(log(1 - (1 / (a * b)) * log(1 - u)), 1 / c)};
    }
    case FamilyId::ExpInvWeibull: {
      const double a = p[0], b = p[1], c = p[2];
      return {pow((-a) / log(1 - pow(1 - u, 1 / b)), 1 / c)};
    }
    case FamilyId::GenWeibull: {
      const double a = p[0], b = p[1], c = p[2];
      return {pow((1 - pow(1 - u, c)) / (a * c), 1 / b)};
    }
    case FamilyId::ExtWeibull: {
      const double a = p[0], b = p[1], c = p[2];
      return {(1 / b) * pow(log(((2 * a - 1) + u * (1 - a)) / u), 1 / c)};
    }
    case FamilyId::GenPowerWeibull: {
      const double a = p[0], b = p[1], c = p[2];
      return {pow((pow(1 - log(1 - u), c) - 1) / a, 1 / b)};
    }
    case FamilyId::OddWeibull: {
      const double a = p[0], b = p[1], c = p[2];
      return {pow((1 / a) * log(pow(u / (1 - u), 1 / c) + 1), 1 / b)};
    }
    case FamilyId::Kies4: {
      const double a = p[0], b = p[1], c = p[2], d = p[3];
      return {(pow(pow(b, d) * log(1 - u) / (-c), 1 / d) + a) /
              (pow(log(1 - u) / (-c), 1 / d) + 1)};
    }
    case FamilyId::ExpKumWeibull5: {
      const double a = p[0], b = p[1], c = p[2], d = p[3], e = p[4];
      return {pow(
          -(log(1 - pow(1 - pow(1 - pow(1 - u, 1 / c), 1 / b), 1 / a)) / d),
          1 / e)};
    }
    case FamilyId::LaiWeibull3: {
      const double a = p[0], b = p[1], c = p[2];
      return {(b / c) * printed_w((c / b) * pow((-1 / a) * log(1 - u), 1 / b))};
    }
    case FamilyId::InvModWeibull: {
      const double a = p[0], b = p[1], c = p[2];
      return {(c / b) * pow(printed_w((c / (b * a)) * pow(-log(u), 1 / b)), -1)};
    }
    case FamilyId::GenModWeibull: {
      const double a = p[0], b = p[1], c = p[2], d = p[3];
      return {(c / b) *
              printed_w((b / c) * pow((-1 / a) * log(1 - pow(u, 1 / d)), 1 / c))};
    }
    case FamilyId::ShiftedModWeibull: {
      const double a = p[0], b = p[1], c = p[2], d = p[3];
      return {d + (b / c) * printed_w(c * pow(-log(1 - u), 1 / b) / (a * b))};
    }
    case FamilyId::KumModWeibull: {
      const double a = p[0], b = p[1], c = p[2], d = p[3], mu = p[4];
      return {(d / mu) *
              printed_w((mu / d) *
                        pow((-1 / c) * log(1 - pow(1 - pow(1 - u, 1 / b), 1 / a)),
                            1 / d))};
    }
    case FamilyId::ModLogLogistic: {
      const double a = p[0], b = p[1], c = p[2];
      return {(b / c) * printed_w((c / (a * b)) * pow(pow(1 - u, -1) - 1, 1 / b))};
    }
    case FamilyId::GompertzMakeham: {
      const double a = p[0], b = p[1], c = p[2];
      return {log(pow((a / b) * printed_w((b / a) * exp((b - c * log(1 - u)) / a)),
                      1 / c))};
    }
    case FamilyId::ModPowerLomax: {
      const double a = p[0], b = p[1], c = p[2], d = p[3];
      return {(b / c) *
              printed_w((c / (a * b)) * pow(pow(1 - u, -1 / d) - 1, 1 / b))};
    }
    case FamilyId::ModPareto4: {
      const double b = p[1], c = p[2], d = p[3], mu = p[4];
      return {(1 / (c * b)) * printed_w(pow(pow(1 - u, -1 / d) - 1, b)) + mu};
    }
    case FamilyId::ModLognormal: {
      const double a = p[0], b = p[1], c = p[2], d = p[3], mu = p[4];
      const double z = half_normal_style_quantile(u);
      return {(b / c) * printed_w((c / (a * b)) * pow(exp(mu * z + d), 1 / b))};
    }
    case FamilyId::XieLai3:
    case FamilyId::AdditiveWeibull:
    case FamilyId::NadarajahKotz:
    case FamilyId::Phani5:
      break;
  }
  throw NoAnalyticForm("no printed quantile for this family");
}

}  // namespace lwsim::detail
