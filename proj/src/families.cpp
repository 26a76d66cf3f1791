// Family registry and parameter validation.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "family_detail.hpp"
#include "lwsim/distributions.hpp"
#include "lwsim/errors.hpp"

namespace lwsim {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using QK = QuantileKind;

const std::array<FamilyInfo, kFamilyCount>& registry() {
  static const std::array<FamilyInfo, kFamilyCount> table = {{
      {FamilyId::Weibull2, "weibull2", "Two-parameter Weibull",
       {"a", "b"}, "a > 0, b > 0", "exp(-a t^b)", QK::ClosedForm, true, ""},
      {FamilyId::Gompertz2, "gompertz2", "Gompertz", {"a", "b"},
       "a > 0, b != 0", "exp[(a/b)(1 - exp(b t))]", QK::ClosedForm, true,
       "for b < 0 the law leaves mass exp(a/b) at infinity and quantiles "
       "exist only for u < 1 - exp(a/b)"},
      {FamilyId::TruncLogWeibull, "trunc_log_weibull", "Log-Weibull",
       {"a", "b"}, "a real, b > 0", "exp(-exp((t - a)/b))", QK::ClosedForm,
       true,
       "the survival function as given is the untruncated log-Weibull, so "
       "the support is the whole real line"},
      {FamilyId::FlexibleWeibull, "flexible_weibull", "Flexible Weibull",
       {"a", "b"}, "a > 0, b > 0", "exp(-exp(a t - b/t))", QK::ClosedForm,
       false,
       "printed -ln[-ln(1-u) +/- sqrt((ln(-ln(1-u)))^2 + 4ab)]/(2a) does not "
       "invert the CDF for either sign; with y = ln(-ln(1-u)) the quantile is "
       "the positive root of a t^2 - y t - b = 0, t = (y + sqrt(y^2 + "
       "4ab))/(2a)"},
      {FamilyId::Pham, "pham", "Pham's Weibull", {"a", "b"}, "a > 1, b > 0",
       "exp(1 - a^(t^b))", QK::ClosedForm, true, ""},
      {FamilyId::ExpWeibull, "exp_weibull", "Exponentiated Weibull",
       {"a", "b", "c"}, "a > 0, b > 0, c > 0", "1 - (1 - exp(-a t^b))^c",
       QK::ClosedForm, true, ""},
      {FamilyId::ModWeibullExt, "mod_weibull_ext",
       "Modified Weibull extension", {"a", "b", "c"}, "a > 0, b > 0, c > 0",
       "exp{a b (1 - exp((t/b)^c))}", QK::ClosedForm, false,
       "printed a[ln{1 - ln(1-u)/(ab)}]^(1/c) puts a where the scale b "
       "belongs; corrected t = b[ln{1 - ln(1-u)/(ab)}]^(1/c)"},
      {FamilyId::ExpInvWeibull, "exp_inv_weibull",
       "Exponentiated inverse Weibull", {"a", "b", "c"},
       "a > 0, b > 0, c > 0", "{1 - exp(-a t^(-c))}^b", QK::ClosedForm, true,
       "the notation header lists two parameters but the survival function "
       "uses a, b and c; all three are exposed, and b must be positive for a "
       "proper survival function"},
      {FamilyId::GenWeibull, "gen_weibull", "Generalized Weibull",
       {"a", "b", "c"}, "a > 0, b > 0, c > 0; 0 <= t <= (a c)^(-1/b)",
       "(1 - a c t^b)^(1/c)", QK::ClosedForm, true,
       "the survival function reaches 0 at t = (ac)^(-1/b); the printed "
       "range bound (ac)^(1/b) agrees only when ac = 1, so the support uses "
       "the former"},
      {FamilyId::ExtWeibull, "ext_weibull", "Extended Weibull",
       {"a", "b", "c"}, "a > 0, b > 0, c > 0",
       "a e^(-(bt)^c) / (1 - (1 - a) e^(-(bt)^c))", QK::ClosedForm, false,
       "printed (1/b){ln[((2a-1) + u(1-a))/u]}^(1/c) fails the roundtrip; "
       "corrected t = (1/b){ln[(1 - u(1-a))/(1-u)]}^(1/c)"},
      {FamilyId::GenPowerWeibull, "gen_power_weibull",
       "Generalized power Weibull", {"a", "b", "c"}, "a > 0, b > 0, c > 0",
       "exp{1 - (1 + a t^b)^(1/c)}", QK::ClosedForm, true, ""},
      {FamilyId::OddWeibull, "odd_weibull", "Odd Weibull", {"a", "b", "c"},
       "a > 0, b > 0, c > 0", "{1 + (e^(a t^b) - 1)^c}^(-1)", QK::ClosedForm,
       true, ""},
      {FamilyId::Kies4, "kies4", "Four-parameter Weibull (Kies)",
       {"a", "b", "c", "d"}, "0 <= a < b, c > 0, d > 0; a < t < b",
       "exp[-c ((t - a)/(b - t))^d]", QK::ClosedForm, true, ""},
      {FamilyId::ExpKumWeibull5, "exp_kum_weibull5",
       "Exponentiated Kumaraswamy Weibull", {"a", "b", "c", "d", "e"},
       "a, b, c, d, e > 0", "1 - [1 - {1 - (1 - e^(-d t^e))^a}^b]^c",
       QK::ClosedForm, false,
       "printed form takes (1-u)^(1/c) where the CDF [1 - {1 - (1 - "
       "e^(-d t^e))^a}^b]^c requires u^(1/c); corrected t = {-ln(1 - [1 - "
       "(1 - u^(1/c))^(1/b)]^(1/a))/d}^(1/e)"},
      {FamilyId::LaiWeibull3, "lai_weibull3", "Three-parameter Weibull (Lai)",
       {"a", "b", "c"}, "a > 0, b > 0, c > 0 (c = 0 is weibull2)",
       "exp(-a t^b e^(ct))", QK::LambertW, true,
       "hazard a(b + ct)t^(b-1)e^(ct) is increasing for b >= 1 and "
       "bathtub-shaped for 0 < b < 1"},
      {FamilyId::InvModWeibull, "inv_mod_weibull", "Inverse modified Weibull",
       {"a", "b", "c"}, "a > 0, b > 0, c > 0",
       "1 - exp(-(a/t)^b exp(c/t))", QK::LambertW, true,
       "the quantile is sometimes labelled WL(a,b,c) but belongs to this "
       "family; the formula itself verifies"},
      {FamilyId::XieLai3, "xie_lai3", "Three-parameter Weibull (Xie-Lai)",
       {"a", "b", "c"}, "a >= 0, b > 1, c > 0",
       "exp(-(at)^b - (at)^(1/b) - c t)", QK::None, false,
       "no Lambert-W reduction of the inverse is known (left as an open "
       "problem); numeric inversion only"},
      {FamilyId::GenModWeibull, "gen_mod_weibull",
       "Generalized modified Weibull", {"a", "b", "c", "d"},
       "a > 0, b > 0, c > 0, d > 0 (b = 0 is exp_weibull)",
       "1 - [1 - exp(-a t^c e^(bt))]^d", QK::LambertW, true, ""},
      {FamilyId::ShiftedModWeibull, "shifted_mod_weibull",
       "Shifted modified Weibull", {"a", "b", "c", "d"},
       "a > 0, b > 0, c > 0, d >= 0; t >= d",
       "exp(-(a(t - d))^b exp(c(t - d)))", QK::LambertW, true,
       "an intermediate step writes exp((c/a)(t-d)) for exp((c/b)(t-d)); the "
       "final formula is correct"},
      {FamilyId::AdditiveWeibull, "additive_weibull", "Additive Weibull",
       {"a", "b", "c", "d"}, "a, b, c, d > 0", "exp(-a t^b - c t^d)",
       QK::None, false,
       "neither a closed-form inverse nor a Lambert-W approximation is "
       "available; numeric inversion only"},
      {FamilyId::NadarajahKotz, "nadarajah_kotz", "Nadarajah-Kotz Weibull",
       {"a", "b", "c", "d"}, "a > 0, b >= 0, c > 0, d > 0",
       "exp(-a t^b (e^(c t^d) - 1))", QK::None, false,
       "the inverse could not be obtained through W; numeric inversion only"},
      {FamilyId::KumModWeibull, "kum_mod_weibull",
       "Kumaraswamy modified Weibull", {"a", "b", "c", "d", "mu"},
       "a, b, c, d, mu > 0 (mu = 0 is exp_kum_weibull5 with c = 1)",
       "[1 - (1 - exp(-c t^d exp(mu t)))^a]^b", QK::LambertW, true, ""},
      {FamilyId::Phani5, "phani5", "Five-parameter Weibull (Phani)",
       {"a", "b", "c", "d", "e"}, "0 <= a < b, c, d, e > 0; a < t < b",
       "exp[-c (t - a)^d / (b - t)^e]", QK::None, false,
       "only the survival function is given and no quantile is proposed; "
       "numeric inversion only"},
      {FamilyId::ModLogLogistic, "mod_log_logistic", "Modified log-logistic",
       {"a", "b", "c"}, "a > 0, b > 0, c > 0", "[1 + (at)^b e^(ct)]^(-1)",
       QK::LambertW, true, ""},
      {FamilyId::GompertzMakeham, "gompertz_makeham", "Gompertz-Makeham",
       {"a", "b", "c"}, "a > 0, b > 0, c > 0",
       "exp(-a t - (b/c)(exp(ct) - 1))", QK::LambertW, true,
       "nested-log form verified; the implementation evaluates the "
       "equivalent form (b/c - ln(1-u))/a - W(A)/c in log space so that A "
       "never overflows"},
      {FamilyId::ModPowerLomax, "mod_power_lomax", "Modified power Lomax",
       {"a", "b", "c", "d"}, "a > 0, b > 0, c > 0, d > 0",
       "[1 + (at)^b e^(ct)]^(-d)", QK::LambertW, true, ""},
      {FamilyId::ModPareto4, "mod_pareto4", "Modified Pareto IV",
       {"a", "b", "c", "d", "mu"}, "a, b, c, d > 0, mu >= 0; t >= mu",
       "[1 + (a(t - mu))^(1/b) e^(c(t - mu))]^(-d)", QK::LambertW, false,
       "printed (1/(cb))W([(1-u)^(-1/d) - 1]^b) + mu drops the factor bc/a "
       "inside W (the derivation also writes the exponent -d as -beta); "
       "corrected t = mu + W((bc/a)[(1-u)^(-1/d) - 1]^b)/(bc)"},
      {FamilyId::ModLognormal, "mod_lognormal", "Modified lognormal",
       {"a", "b", "c", "d", "mu"}, "a > 0, b > 0, c > 0, d real, mu > 0",
       "1 - Phi((ln[(at)^b e^(ct)] - d)/mu)", QK::LambertW, false,
       "Phi is printed with lower integration limit 0, under which "
       "Phi^-1(u) exists only for u < 1/2 and the inversion fails; the "
       "survival numerator is read as ln[(at)^b e^(ct)]; with the standard "
       "normal CDF the form t = (b/c)W((c/(ab)) exp((mu Phi^-1(u) + d)/b)) "
       "is exact and is what is implemented"},
  }};
  return table;
}

[[noreturn]] void fail(FamilyId id, const std::string& what) {
  throw ParamError(std::string(family_name(id)) + ": " + what);
}

std::string show(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

// Constraint helpers over the validated value array.
class Checker {
 public:
  Checker(FamilyId id, std::span<const double> values)
      : id_(id), values_(values), names_(family_info(id).parameters) {}

  double operator[](std::size_t i) const { return values_[i]; }

  void positive(std::size_t i) const {
    if (!(values_[i] > 0.0)) fail_on(i, "must be positive");
  }
  void nonnegative(std::size_t i) const {
    if (!(values_[i] >= 0.0)) fail_on(i, "must be nonnegative");
  }
  /// Zero is the degenerate limit handled by another family.
  void positive_or_redirect(std::size_t i, const char* redirect) const {
    if (values_[i] == 0.0) {
      fail_on(i, std::string("must be positive; ") + redirect);
    }
    positive(i);
  }
  void fail_on(std::size_t i, const std::string& what) const {
    fail(id_, std::string(names_[i]) + " " + what + " (got " +
                  show(values_[i]) + ")");
  }

 private:
  FamilyId id_;
  std::span<const double> values_;
  const std::vector<std::string_view>& names_;
};

struct Domain {
  Support support{0.0, kInf};
  double max_probability = 1.0;
};

Domain check_constraints(FamilyId id, std::span<const double> values) {
  const Checker p(id, values);
  Domain dom;
  switch (id) {
    case FamilyId::Weibull2:
    case FamilyId::FlexibleWeibull:
      p.positive(0);
      p.positive(1);
      break;
    case FamilyId::Gompertz2:
      p.positive(0);
      if (p[1] == 0.0) {
        p.fail_on(1, "must be nonzero; b = 0 is the exponential law, use "
                     "weibull2 with b = 1");
      }
      if (p[1] < 0.0) dom.max_probability = -std::expm1(p[0] / p[1]);
      break;
    case FamilyId::TruncLogWeibull:
      p.positive(1);
      dom.support = {-kInf, kInf};
      break;
    case FamilyId::Pham:
      if (!(p[0] > 1.0)) p.fail_on(0, "must exceed 1");
      p.positive(1);
      break;
    case FamilyId::ExpWeibull:
    case FamilyId::ModWeibullExt:
    case FamilyId::ExpInvWeibull:
    case FamilyId::ExtWeibull:
    case FamilyId::GenPowerWeibull:
    case FamilyId::OddWeibull:
    case FamilyId::ModLogLogistic:
      for (std::size_t i = 0; i < 3; ++i) p.positive(i);
      break;
    case FamilyId::GenWeibull:
      for (std::size_t i = 0; i < 3; ++i) p.positive(i);
      dom.support.hi = std::pow(p[0] * p[2], -1.0 / p[1]);
      break;
    case FamilyId::Kies4:
    case FamilyId::Phani5:
      p.nonnegative(0);
      if (!(p[0] < p[1])) p.fail_on(0, "must be below b = " + show(p[1]));
      for (std::size_t i = 2; i < values.size(); ++i) p.positive(i);
      dom.support = {p[0], p[1]};
      break;
    case FamilyId::ExpKumWeibull5:
      for (std::size_t i = 0; i < 5; ++i) p.positive(i);
      break;
    case FamilyId::LaiWeibull3:
      p.positive(0);
      p.positive(1);
      p.nonnegative(2);
      p.positive_or_redirect(2, "c = 0 reduces to weibull2(a, b)");
      break;
    case FamilyId::InvModWeibull:
      p.positive(0);
      p.positive(1);
      p.nonnegative(2);
      p.positive_or_redirect(
          2, "c = 0 is the inverse Weibull and the Lambert-W form divides "
             "by c");
      break;
    case FamilyId::XieLai3:
      p.nonnegative(0);
      if (!(p[1] > 1.0)) p.fail_on(1, "must exceed 1");
      p.positive(2);
      break;
    case FamilyId::GenModWeibull:
      p.positive(0);
      p.nonnegative(1);
      p.positive_or_redirect(1, "b = 0 reduces to exp_weibull(a, c, d)");
      p.positive(2);
      p.positive(3);
      break;
    case FamilyId::ShiftedModWeibull:
      p.positive(0);
      p.positive(1);
      p.nonnegative(2);
      p.positive_or_redirect(
          2, "c = 0 reduces to weibull2(a^b, b) shifted by d");
      p.nonnegative(3);
      dom.support.lo = p[3];
      break;
    case FamilyId::AdditiveWeibull:
      for (std::size_t i = 0; i < 4; ++i) p.positive(i);
      break;
    case FamilyId::NadarajahKotz:
      p.positive(0);
      p.nonnegative(1);
      p.positive(2);
      p.positive(3);
      break;
    case FamilyId::KumModWeibull:
      for (std::size_t i = 0; i < 4; ++i) p.positive(i);
      p.nonnegative(4);
      p.positive_or_redirect(
          4, "mu = 0 reduces to exp_kum_weibull5(a, b, 1, c, d)");
      break;
    case FamilyId::GompertzMakeham:
      p.nonnegative(0);
      p.positive_or_redirect(0, "a = 0 reduces to gompertz2(b, c)");
      p.nonnegative(1);
      p.positive_or_redirect(1, "b = 0 reduces to weibull2(a, 1)");
      p.nonnegative(2);
      p.positive_or_redirect(2, "c = 0 reduces to weibull2(a + b, 1)");
      break;
    case FamilyId::ModPowerLomax:
      for (std::size_t i = 0; i < 4; ++i) p.positive(i);
      break;
    case FamilyId::ModPareto4:
      for (std::size_t i = 0; i < 4; ++i) p.positive(i);
      p.nonnegative(4);
      dom.support.lo = p[4];
      break;
    case FamilyId::ModLognormal:
      p.positive(0);
      p.positive(1);
      p.positive(2);
      p.positive(4);
      break;
  }
  return dom;
}

}  // namespace

std::span<const FamilyId> all_families() {
  static const std::array<FamilyId, kFamilyCount> ids = [] {
    std::array<FamilyId, kFamilyCount> out{};
    for (std::size_t i = 0; i < kFamilyCount; ++i) out[i] = registry()[i].id;
    return out;
  }();
  return ids;
}

const FamilyInfo& family_info(FamilyId id) {
  return registry()[static_cast<std::size_t>(id)];
}

std::string_view family_name(FamilyId id) { return family_info(id).name; }

std::optional<FamilyId> parse_family(std::string_view name) {
  for (const auto& info : registry()) {
    if (info.name == name) return info.id;
  }
  return std::nullopt;
}

bool has_analytic_quantile(FamilyId id) {
  return family_info(id).kind != QuantileKind::None;
}

double DistributionSpec::param(std::string_view name) const {
  const auto& names = family_info(family_).parameters;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return values_[i];
  }
  throw ParamError(std::string(family_name(family_)) +
                   ": no parameter named '" + std::string(name) + "'");
}

ParamMap DistributionSpec::params() const {
  ParamMap out;
  const auto& names = family_info(family_).parameters;
  for (std::size_t i = 0; i < count_; ++i) {
    out.emplace(std::string(names[i]), values_[i]);
  }
  return out;
}

DistributionSpec validate(FamilyId family, const ParamMap& raw) {
  const FamilyInfo& info = family_info(family);

  std::string expected;
  for (auto n : info.parameters) {
    if (!expected.empty()) expected += ", ";
    expected += n;
  }
  for (const auto& [key, value] : raw) {
    if (std::find(info.parameters.begin(), info.parameters.end(), key) ==
        info.parameters.end()) {
      fail(family, "unknown parameter '" + key + "' (expected " + expected +
                       ")");
    }
  }

  DistributionSpec spec;
  spec.family_ = family;
  spec.count_ = info.parameters.size();
  for (std::size_t i = 0; i < spec.count_; ++i) {
    const auto it = raw.find(info.parameters[i]);
    if (it == raw.end()) {
      fail(family, "missing parameter '" + std::string(info.parameters[i]) +
                       "' (expected " + expected + ")");
    }
    if (!std::isfinite(it->second)) {
      fail(family, std::string(info.parameters[i]) + " must be finite");
    }
    spec.values_[i] = it->second;
  }

  const Domain dom = check_constraints(family, spec.values());
  spec.support_ = dom.support;
  spec.max_probability_ = dom.max_probability;

  // Endpoint consistency: all mass starts at lo and, for a finite hi, is
  // exhausted there.
  const auto [lo, hi] = spec.support_;
  if (std::isfinite(lo)) {
    const double at_lo = detail::survival_inside(family, spec.values(), lo);
    if (!(at_lo >= 1.0 - 1e-12)) {
      fail(family, "survival at the lower support bound is " + show(at_lo) +
                       ", expected 1");
    }
  }
  if (std::isfinite(hi)) {
    const double at_hi = detail::survival_inside(family, spec.values(), hi);
    // Loose: at hi itself the survival is 0 up to rounding amplified by the
    // family's outer power, e.g. (1 - a c t^b)^(1/c).
    if (!(at_hi <= 1e-6)) {
      fail(family, "survival at the upper support bound is " + show(at_hi) +
                       ", expected 0");
    }
  }
  return spec;
}

}  // namespace lwsim
