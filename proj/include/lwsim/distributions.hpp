#pragma once

// Lifetime distribution registry: survival / CDF evaluation, closed-form and
// Lambert-W quantiles, and a bracketing numeric inverse that serves as the
// oracle for every analytic quantile.

#include <array>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lwsim {

enum class FamilyId {
  Weibull2,
  Gompertz2,
  TruncLogWeibull,
  FlexibleWeibull,
  Pham,
  ExpWeibull,
  ModWeibullExt,
  ExpInvWeibull,
  GenWeibull,
  ExtWeibull,
  GenPowerWeibull,
  OddWeibull,
  Kies4,
  ExpKumWeibull5,
  LaiWeibull3,
  InvModWeibull,
  XieLai3,
  GenModWeibull,
  ShiftedModWeibull,
  AdditiveWeibull,
  NadarajahKotz,
  KumModWeibull,
  Phani5,
  ModLogLogistic,
  GompertzMakeham,
  ModPowerLomax,
  ModPareto4,
  ModLognormal,
};

inline constexpr std::size_t kFamilyCount = 28;

/// How a family's quantile is obtained.
enum class QuantileKind {
  ClosedForm,  // elementary inverse
  LambertW,    // inverse through the principal branch of W
  None,        // numeric inversion only
};

/// Static description of a family.
struct FamilyInfo {
  FamilyId id;
  std::string_view name;
  std::string_view title;
  std::vector<std::string_view> parameters;
  std::string_view constraints;
  std::string_view survival_text;
  QuantileKind kind;
  /// True when the implemented quantile is the printed formula itself (or an
  /// algebraic rearrangement of it); false when it is a corrected derivation.
  bool implements_printed_form;
  std::string_view note;
};

std::span<const FamilyId> all_families();
const FamilyInfo& family_info(FamilyId id);
std::string_view family_name(FamilyId id);
std::optional<FamilyId> parse_family(std::string_view name);
bool has_analytic_quantile(FamilyId id);

/// Half-open support interval [lo, hi); either end may be infinite.
struct Support {
  double lo;
  double hi;
};

using ParamMap = std::map<std::string, double, std::less<>>;

/// Validated, immutable distribution: family plus parameter values in the
/// family's declared order.
class DistributionSpec {
 public:
  FamilyId family() const { return family_; }
  std::span<const double> values() const {
    return std::span<const double>(values_.data(), count_);
  }
  double param(std::string_view name) const;
  ParamMap params() const;
  Support support() const { return support_; }
  /// Supremum of F over the support. Below 1 only for a Gompertz law with a
  /// negative growth rate, which leaves mass at infinity; quantiles are then
  /// defined for u < max_probability() only.
  double max_probability() const { return max_probability_; }

  friend DistributionSpec validate(FamilyId family, const ParamMap& raw);

 private:
  DistributionSpec() = default;

  FamilyId family_ = FamilyId::Weibull2;
  std::array<double, 5> values_{};
  std::size_t count_ = 0;
  Support support_{0.0, 0.0};
  double max_probability_ = 1.0;
};

/// Checks every constraint of the family; throws ParamError naming the first
/// violated one. Unknown and missing parameter names are rejected.
DistributionSpec validate(FamilyId family, const ParamMap& raw);

double survival(const DistributionSpec& spec, double t);
double cdf(const DistributionSpec& spec, double t);

enum class QuantilePath { AnalyticVerified, AnalyticCorrected, Numeric };

std::string_view path_name(QuantilePath path);

struct QuantileResult {
  double t = 0.0;
  QuantilePath path = QuantilePath::Numeric;
  /// |F(t) - u|
  double roundtrip_residual = 0.0;
};

/// Closed-form or Lambert-W quantile. Throws DomainError for u outside
/// (0, max_probability) and NoAnalyticForm for numeric-only families.
QuantileResult quantile(const DistributionSpec& spec, double u);

inline constexpr double kMinNumericTolerance = 1e-14;

/// Inverts the CDF by geometric bracket expansion, bisection down to
/// |F(t) - u| <= tol, then a Newton polish with a central-difference density.
QuantileResult numeric_quantile(const DistributionSpec& spec, double u,
                                double tol = 1e-12);

/// The published quantile expression evaluated literally, one entry per sign
/// choice where the expression carries a +/-. Entries are NaN where the
/// expression is undefined. Throws NoAnalyticForm for numeric-only families.
std::vector<double> printed_quantile(const DistributionSpec& spec, double u);

/// Argument handed to W by the implemented Lambert-W quantile at u
/// (std::nullopt for closed-form families). Nonnegative for every valid u,
/// which is what makes the principal branch the right one.
std::optional<double> lambert_argument(const DistributionSpec& spec, double u);

/// Gompertz-Makeham quantile in the printed nested-logarithm form:
///   ln{[(a/b) W((b/a) exp((b - c ln(1-u))/a))]^(1/c)}
double gompertz_makeham_nested_form(const DistributionSpec& spec, double u);
/// Equivalent subtractive form (b/c - ln(1-u))/a - W(A)/c with the same A,
/// evaluated without forming A explicitly.
double gompertz_makeham_subtractive_form(const DistributionSpec& spec, double u);

enum class HazardShape { Increasing, Bathtub };

struct HazardValue {
  double rate;
  HazardShape shape;
};

/// Hazard rate a(b + ct)t^(b-1)e^(ct) of the Lai three-parameter Weibull and
/// its shape class (increasing for b >= 1, bathtub for 0 < b < 1).
HazardValue wl_hazard(double a, double b, double c, double t);

}  // namespace lwsim
