#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "lwsim/distributions.hpp"
#include "lwsim/errors.hpp"
#include "lwsim/lambert_w.hpp"
#include "lwsim/reference_sets.hpp"
#include "lwsim/verification.hpp"
#include "oracles.hpp"

using namespace lwsim;

namespace {

constexpr double kE = std::numbers::e;

DistributionSpec make(std::string_view family, ParamMap params) {
  return validate(*parse_family(family), params);
}

// Survival functions transcribed directly, without the library's
// cancellation-avoiding rewrites.
double naive_survival(FamilyId id, const ParamMap& p, double t) {
  auto g = [&](const char* k) { return p.at(k); };
  using std::exp, std::pow, std::log;
  switch (id) {
    case FamilyId::Weibull2:
      return exp(-g("a") * pow(t, g("b")));
    case FamilyId::Gompertz2:
      return exp(g("a") / g("b") * (1 - exp(g("b") * t)));
    case FamilyId::TruncLogWeibull:
      return exp(-exp((t - g("a")) / g("b")));
    case FamilyId::FlexibleWeibull:
      return exp(-exp(g("a") * t - g("b") / t));
    case FamilyId::Pham:
      return exp(1 - pow(g("a"), pow(t, g("b"))));
    case FamilyId::ExpWeibull:
      return 1 - pow(1 - exp(-g("a") * pow(t, g("b"))), g("c"));
    case FamilyId::ModWeibullExt:
      return exp(g("a") * g("b") * (1 - exp(pow(t / g("b"), g("c")))));
    case FamilyId::ExpInvWeibull:
      return pow(1 - exp(-g("a") * pow(t, -g("c"))), g("b"));
    case FamilyId::GenWeibull:
      return pow(1 - g("a") * g("c") * pow(t, g("b")), 1 / g("c"));
    case FamilyId::ExtWeibull: {
      const double x = exp(-pow(g("b") * t, g("c")));
      return g("a") * x / (1 - (1 - g("a")) * x);
    }
    case FamilyId::GenPowerWeibull:
      return exp(1 - pow(1 + g("a") * pow(t, g("b")), 1 / g("c")));
    case FamilyId::OddWeibull:
      return 1 / (1 + pow(exp(g("a") * pow(t, g("b"))) - 1, g("c")));
    case FamilyId::Kies4:
      return exp(-g("c") * pow((t - g("a")) / (g("b") - t), g("d")));
    case FamilyId::ExpKumWeibull5:
      return 1 - pow(1 - pow(1 - pow(1 - exp(-g("d") * pow(t, g("e"))), g("a")),
                             g("b")),
                     g("c"));
    case FamilyId::LaiWeibull3:
      return exp(-g("a") * pow(t, g("b")) * exp(g("c") * t));
    case FamilyId::InvModWeibull:
      return 1 - exp(-pow(g("a") / t, g("b")) * exp(g("c") / t));
    case FamilyId::XieLai3:
      return exp(-pow(g("a") * t, g("b")) - pow(g("a") * t, 1 / g("b")) -
                 g("c") * t);
    case FamilyId::GenModWeibull:
      return 1 - pow(1 - exp(-g("a") * pow(t, g("c")) * exp(g("b") * t)),
                     g("d"));
    case FamilyId::ShiftedModWeibull: {
      const double s = t - g("d");
      return exp(-pow(g("a") * s, g("b")) * exp(g("c") * s));
    }
    case FamilyId::AdditiveWeibull:
      return exp(-g("a") * pow(t, g("b")) - g("c") * pow(t, g("d")));
    case FamilyId::NadarajahKotz:
      return exp(-g("a") * pow(t, g("b")) * (exp(g("c") * pow(t, g("d"))) - 1));
    case FamilyId::KumModWeibull:
      return pow(1 - pow(1 - exp(-g("c") * pow(t, g("d")) * exp(g("mu") * t)),
                         g("a")),
                 g("b"));
    case FamilyId::Phani5:
      return exp(-g("c") * pow(t - g("a"), g("d")) / pow(g("b") - t, g("e")));
    case FamilyId::ModLogLogistic:
      return 1 / (1 + pow(g("a") * t, g("b")) * exp(g("c") * t));
    case FamilyId::GompertzMakeham:
      return exp(-g("a") * t - g("b") / g("c") * (exp(g("c") * t) - 1));
    case FamilyId::ModPowerLomax:
      return pow(1 + pow(g("a") * t, g("b")) * exp(g("c") * t), -g("d"));
    case FamilyId::ModPareto4: {
      const double s = t - g("mu");
      return pow(1 + pow(g("a") * s, 1 / g("b")) * exp(g("c") * s), -g("d"));
    }
    case FamilyId::ModLognormal: {
      const double z =
          (g("b") * log(g("a") * t) + g("c") * t - g("d")) / g("mu");
      return 1 - oracle::normal_cdf(z);
    }
  }
  return NAN;
}

}  // namespace

TEST(Registry, HasAllFamiliesInOrder) {
  ASSERT_EQ(all_families().size(), kFamilyCount);
  std::size_t analytic = 0;
  for (FamilyId id : all_families()) {
    EXPECT_EQ(parse_family(family_name(id)), id);
    if (has_analytic_quantile(id)) ++analytic;
  }
  EXPECT_EQ(analytic, 24u);
  EXPECT_FALSE(parse_family("weibull3").has_value());
  for (auto name : {"xie_lai3", "additive_weibull", "nadarajah_kotz", "phani5"}) {
    EXPECT_FALSE(has_analytic_quantile(*parse_family(name))) << name;
  }
}

TEST(Validate, AcceptsExponentialSpecialCase) {
  const auto s = make("weibull2", {{"a", 1}, {"b", 1}});
  EXPECT_EQ(s.support().lo, 0.0);
  EXPECT_EQ(s.support().hi, INFINITY);
  EXPECT_EQ(s.param("b"), 1.0);
}

TEST(Validate, NamesViolatedConstraint) {
  try {
    make("pham", {{"a", 1}, {"b", 2}});
    FAIL() << "expected ParamError";
  } catch (const ParamError& e) {
    EXPECT_NE(std::string(e.what()).find("a must exceed 1"), std::string::npos)
        << e.what();
  }
  EXPECT_THROW(make("kies4", {{"a", 2}, {"b", 1}, {"c", 1}, {"d", 1}}),
               ParamError);
}

TEST(Validate, RejectsMalformedParameterMaps) {
  EXPECT_THROW(make("weibull2", {{"a", 1}}), ParamError);
  EXPECT_THROW(make("weibull2", {{"a", 1}, {"b", 1}, {"z", 1}}), ParamError);
  EXPECT_THROW(make("weibull2", {{"a", NAN}, {"b", 1}}), ParamError);
  EXPECT_THROW(make("weibull2", {{"a", INFINITY}, {"b", 1}}), ParamError);
  EXPECT_THROW(make("weibull2", {{"a", -1}, {"b", 1}}), ParamError);
}

TEST(Validate, DegenerateParametersRedirect) {
  try {
    make("lai_weibull3", {{"a", 1}, {"b", 1}, {"c", 0}});
    FAIL() << "expected ParamError";
  } catch (const ParamError& e) {
    EXPECT_NE(std::string(e.what()).find("weibull2"), std::string::npos);
  }
  EXPECT_THROW(make("gen_mod_weibull", {{"a", 1}, {"b", 0}, {"c", 1}, {"d", 1}}),
               ParamError);
}

TEST(Validate, FiniteSupportBounds) {
  const auto g = make("gen_weibull", {{"a", 2}, {"b", 2}, {"c", 0.5}});
  EXPECT_DOUBLE_EQ(g.support().hi, 1.0);
  const auto k = make("kies4", {{"a", 0}, {"b", 1}, {"c", 1}, {"d", 1}});
  EXPECT_EQ(k.support().lo, 0.0);
  EXPECT_EQ(k.support().hi, 1.0);
  const auto sm =
      make("shifted_mod_weibull", {{"a", 1}, {"b", 1}, {"c", 1}, {"d", 2}});
  EXPECT_EQ(sm.support().lo, 2.0);
}

TEST(Survival, KnownValues) {
  EXPECT_NEAR(survival(make("weibull2", {{"a", 1}, {"b", 1}}), std::log(2.0)),
              0.5, 1e-16);
  EXPECT_NEAR(survival(make("lai_weibull3", {{"a", 1}, {"b", 1}, {"c", 1}}), 1.0),
              std::exp(-kE), 1e-16);
  EXPECT_EQ(survival(make("gompertz_makeham", {{"a", 1}, {"b", 1}, {"c", 1}}), 0.0),
            1.0);
}

TEST(Survival, MatchesDirectTranscriptionOnReferenceSets) {
  for (const auto& set : default_reference_sets()) {
    const auto spec = validate(set.family, set.params);
    for (double u : {0.02, 0.3, 0.6, 0.9, 0.99}) {
      const double t = numeric_quantile(spec, u).t;
      const double ref = naive_survival(set.family, set.params, t);
      EXPECT_NEAR(survival(spec, t), ref, 1e-11)
          << family_name(set.family) << " t = " << t;
    }
  }
}

TEST(Survival, MonotoneAndBoundedOutsideSupport) {
  for (const auto& set : default_reference_sets()) {
    const auto spec = validate(set.family, set.params);
    const auto [lo, hi] = spec.support();
    if (std::isfinite(lo)) EXPECT_EQ(survival(spec, lo - 1.0), 1.0);
    if (std::isfinite(hi)) EXPECT_EQ(survival(spec, hi + 1.0), 0.0);
    const double a = numeric_quantile(spec, 0.001).t;
    const double b = numeric_quantile(spec, 0.999).t;
    double prev = 1.0;
    for (int i = 0; i <= 200; ++i) {
      const double s = survival(spec, a + (b - a) * i / 200.0);
      EXPECT_LE(s, prev + 1e-15) << family_name(set.family);
      EXPECT_GE(s, 0.0);
      prev = s;
    }
  }
}

TEST(Cdf, KnownValues) {
  EXPECT_EQ(cdf(make("weibull2", {{"a", 1}, {"b", 1}}), 0.0), 0.0);
  const double omega = oracle::lambert(1.0, 0.0, 1.0);
  EXPECT_NEAR(cdf(make("mod_log_logistic", {{"a", 1}, {"b", 1}, {"c", 1}}), omega),
              0.5, 1e-15);
  const auto k = make("kies4", {{"a", 0}, {"b", 1}, {"c", 1}, {"d", 1}});
  EXPECT_NEAR(cdf(k, std::nextafter(1.0, 0.0)), 1.0, 1e-15);
  EXPECT_EQ(cdf(k, 1.0), 1.0);
}

TEST(Quantile, KnownValues) {
  const auto w = quantile(make("weibull2", {{"a", 1}, {"b", 1}}), 0.5);
  EXPECT_NEAR(w.t, 0.6931471805599453, 1e-16);
  EXPECT_EQ(w.path, QuantilePath::AnalyticVerified);

  const auto lai = make("lai_weibull3", {{"a", 1}, {"b", 1}, {"c", 1}});
  const double u = 1.0 - std::exp(-kE);
  EXPECT_NEAR(quantile(lai, u).t, 1.0, 1e-14);

  const double omega = oracle::lambert(1.0, 0.0, 1.0);
  EXPECT_NEAR(
      quantile(make("mod_log_logistic", {{"a", 1}, {"b", 1}, {"c", 1}}), 0.5).t,
      omega, 1e-15);
}

TEST(Quantile, GompertzMakehamMatchesNumericInversionAndNestedForm) {
  const auto gm = make("gompertz_makeham", {{"a", 1}, {"b", 1}, {"c", 1}});
  const double u = 1.0 - std::exp(-1.0);
  const double t_ref = oracle::bisect(
      [&](double t) { return 1.0 - naive_survival(FamilyId::GompertzMakeham,
                                                  gm.params(), t) - u; },
      0.0, 10.0);
  const auto q = quantile(gm, u);
  EXPECT_NEAR(q.t, t_ref, 1e-9);
  // ln{[(a/b) W((b/a) e^{(b - c ln(1-u))/a})]^{1/c}} with a=b=c=1
  const double nested =
      std::log(lambert::w_principal(std::exp(1.0 - std::log(1.0 - u))).value);
  EXPECT_NEAR(q.t, nested, 1e-9);
  EXPECT_NEAR(gompertz_makeham_nested_form(gm, u), nested, 1e-12);
}

TEST(Quantile, FlexibleWeibullUsesCorrectedRoot) {
  const auto fw = make("flexible_weibull", {{"a", 1}, {"b", 1}});
  for (double u : {0.1, 0.5, 0.9}) {
    const auto q = quantile(fw, u);
    EXPECT_EQ(q.path, QuantilePath::AnalyticCorrected);
    const double y = std::log(-std::log1p(-u));
    EXPECT_NEAR(q.t, (y + std::sqrt(y * y + 4.0)) / 2.0, 1e-14);
    EXPECT_LE(q.roundtrip_residual, 1e-10);
  }
}

TEST(Quantile, StrictlyIncreasingAndApproachesSupportEnds) {
  for (const auto& set : default_reference_sets()) {
    if (!has_analytic_quantile(set.family)) continue;
    const auto spec = validate(set.family, set.params);
    double prev = -INFINITY;
    for (double u = 0.001; u < 1.0; u += 0.001) {
      const double t = quantile(spec, u).t;
      EXPECT_GE(t, prev) << family_name(set.family) << " u = " << u;
      prev = t;
    }
    // Moving u toward 0 or 1 moves Q toward the matching support end.
    const auto [lo, hi] = spec.support();
    const double low[] = {1e-3, 1e-6, 1e-10, 1e-15};
    for (int i = 1; i < 4; ++i) {
      EXPECT_LE(quantile(spec, low[i]).t, quantile(spec, low[i - 1]).t);
      EXPECT_GE(quantile(spec, 1 - low[i]).t, quantile(spec, 1 - low[i - 1]).t);
    }
    EXPECT_GE(quantile(spec, 1e-15).t, lo);
    EXPECT_LE(quantile(spec, 1 - 1e-15).t, hi);
    EXPECT_LE(cdf(spec, quantile(spec, 1e-15).t), 1e-12);
  }
}

TEST(Quantile, RejectsBadProbabilitiesAndNumericFamilies) {
  const auto w = make("weibull2", {{"a", 1}, {"b", 1}});
  EXPECT_THROW(quantile(w, 0.0), DomainError);
  EXPECT_THROW(quantile(w, 1.0), DomainError);
  EXPECT_THROW(quantile(w, NAN), DomainError);
  const auto x = make("xie_lai3", {{"a", 1}, {"b", 2}, {"c", 1}});
  EXPECT_THROW(quantile(x, 0.5), NoAnalyticForm);
}

TEST(Quantile, ImproperGompertzHasCappedProbability) {
  const auto g = make("gompertz2", {{"a", 1}, {"b", -1}});
  const double cap = 1.0 - std::exp(-1.0);
  EXPECT_NEAR(g.max_probability(), cap, 1e-15);
  EXPECT_LE(quantile(g, 0.5 * cap).roundtrip_residual, 1e-12);
  EXPECT_THROW(quantile(g, 0.9), DomainError);
}

TEST(NumericQuantile, KnownValues) {
  const auto w = make("weibull2", {{"a", 1}, {"b", 1}});
  EXPECT_NEAR(numeric_quantile(w, 0.5, 1e-12).t, std::log(2.0), 1e-12);

  const auto aw =
      make("additive_weibull", {{"a", 1}, {"b", 2}, {"c", 1}, {"d", 0.5}});
  const double t_ref = oracle::bisect(
      [](double t) { return t * t + std::sqrt(t) - std::log(2.0); }, 0.0, 2.0);
  const auto r = numeric_quantile(aw, 0.5, 1e-12);
  EXPECT_NEAR(r.t, t_ref, 1e-11);
  EXPECT_LE(r.roundtrip_residual, 1e-12);

  const auto xl = make("xie_lai3", {{"a", 1}, {"b", 2}, {"c", 1}});
  const auto rx = numeric_quantile(xl, 0.25, 1e-12);
  EXPECT_LE(std::abs(cdf(xl, rx.t) - 0.25), 1e-12);
  EXPECT_EQ(rx.path, QuantilePath::Numeric);
}

TEST(NumericQuantile, RejectsTooTightTolerance) {
  const auto w = make("weibull2", {{"a", 1}, {"b", 1}});
  EXPECT_THROW(numeric_quantile(w, 0.5, 1e-15), DomainError);
}

TEST(NumericQuantile, WorksOnWholeRealLine) {
  const auto t = make("trunc_log_weibull", {{"a", -1}, {"b", 3}});
  for (double u : {1e-6, 0.01, 0.5, 0.99}) {
    const auto r = numeric_quantile(t, u);
    EXPECT_LE(r.roundtrip_residual, 1e-12) << u;
    EXPECT_NEAR(r.t, quantile(t, u).t, 1e-8 * std::max(1.0, std::abs(r.t)));
  }
}

TEST(Reductions, LaiWeibullApproachesWeibull) {
  const auto lai = make("lai_weibull3", {{"a", 2}, {"b", 0.5}, {"c", 1e-12}});
  const auto w = make("weibull2", {{"a", 2}, {"b", 0.5}});
  for (double u : {0.1, 0.5, 0.9}) {
    EXPECT_NEAR(numeric_quantile(lai, u).t, quantile(w, u).t, 1e-6);
  }
}

TEST(Reductions, PowerLomaxWithUnitExponentIsLogLogistic) {
  const auto pl = make("mod_power_lomax", {{"a", 1.5}, {"b", 2}, {"c", 0.7}, {"d", 1}});
  const auto ll = make("mod_log_logistic", {{"a", 1.5}, {"b", 2}, {"c", 0.7}});
  for (double u : {0.1, 0.5, 0.9}) {
    EXPECT_EQ(quantile(pl, u).t, quantile(ll, u).t);
  }
}

TEST(Reductions, GenModWeibullApproachesWeibull) {
  const auto g =
      make("gen_mod_weibull", {{"a", 1.5}, {"b", 1e-9}, {"c", 2}, {"d", 1}});
  const auto w = make("weibull2", {{"a", 1.5}, {"b", 2}});
  for (double u : {0.1, 0.5, 0.9}) {
    EXPECT_NEAR(quantile(g, u).t, quantile(w, u).t, 1e-6);
  }
}

TEST(LambertArgument, NonnegativeOnGridForLambertFamilies) {
  for (const auto& set : default_reference_sets()) {
    if (family_info(set.family).kind != QuantileKind::LambertW) continue;
    const auto spec = validate(set.family, set.params);
    for (double u : roundtrip_grid()) {
      const auto arg = lambert_argument(spec, u);
      ASSERT_TRUE(arg.has_value()) << family_name(set.family);
      EXPECT_GE(*arg, 0.0) << family_name(set.family) << " u = " << u;
    }
  }
}

TEST(Hazard, KnownValuesAndShapes) {
  const auto h0 = wl_hazard(1, 1, 0, 5);
  EXPECT_DOUBLE_EQ(h0.rate, 1.0);
  EXPECT_EQ(h0.shape, HazardShape::Increasing);
  EXPECT_NEAR(wl_hazard(1, 2, 1, 1).rate, 3 * kE, 1e-14);
  for (double t : {0.01, 1.0, 10.0}) {
    EXPECT_EQ(wl_hazard(1, 0.5, 1, t).shape, HazardShape::Bathtub);
  }
  EXPECT_THROW(wl_hazard(1, 1, 1, 0.0), DomainError);
  EXPECT_THROW(wl_hazard(0, 1, 1, 1.0), ParamError);
}

TEST(Hazard, MatchesDensityOverSurvival) {
  const auto lai = make("lai_weibull3", {{"a", 1}, {"b", 0.5}, {"c", 1}});
  for (double t : {0.05, 0.5, 2.0}) {
    const double h = 1e-6 * t;
    const double dens = (survival(lai, t - h) - survival(lai, t + h)) / (2 * h);
    EXPECT_NEAR(wl_hazard(1, 0.5, 1, t).rate, dens / survival(lai, t),
                1e-6 * wl_hazard(1, 0.5, 1, t).rate);
  }
}
