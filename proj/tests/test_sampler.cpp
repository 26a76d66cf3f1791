#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lwsim/distributions.hpp"
#include "lwsim/errors.hpp"
#include "lwsim/io.hpp"
#include "lwsim/sampler.hpp"

using namespace lwsim;

namespace {
DistributionSpec weibull(double a, double b) {
  return validate(FamilyId::Weibull2, {{"a", a}, {"b", b}});
}

// Reference SplitMix64 step, written out from the published algorithm.
std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}
}  // namespace

TEST(SeededStream, MatchesSequentialSplitMix) {
  std::uint64_t state = 12345;
  SeededStream s(12345);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(s.next_bits(), splitmix64(state));
  EXPECT_EQ(s.position(), 100u);
  EXPECT_EQ(SeededStream::bits_at(12345, 7), SeededStream(12345, 7).next_bits());
}

TEST(SeededStream, UniformsAreStrictlyInterior) {
  SeededStream s(0);
  for (int i = 0; i < 100000; ++i) {
    const double u = s.next_uniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(Sample, DeterministicAcrossRunsAndThreads) {
  const auto spec = weibull(1, 1);
  const auto a = sample(spec, 3, 42);
  const auto b = sample(spec, 3, 42);
  EXPECT_EQ(a.values, b.values);
  const auto serial = sample(spec, 10001, 9, SampleMethod::Auto, 1);
  const auto parallel = sample(spec, 10001, 9, SampleMethod::Auto, 4);
  EXPECT_EQ(serial.values, parallel.values);
  EXPECT_NE(sample(spec, 3, 43).values, a.values);
}

TEST(Sample, ExponentialMean) {
  const auto batch = sample(weibull(1, 1), 100000, 7);
  EXPECT_NEAR(empirical_moments(batch).mean, 1.0, 0.02);
}

TEST(Sample, RayleighTypeMean) {
  const auto batch = sample(weibull(1, 2), 100000, 7);
  EXPECT_NEAR(empirical_moments(batch).mean, std::sqrt(std::numbers::pi) / 2,
              0.01);
}

TEST(Sample, AnalyticAndNumericAgreeElementwise) {
  const auto spec =
      validate(FamilyId::LaiWeibull3, {{"a", 1}, {"b", 1}, {"c", 1}});
  const auto an = sample(spec, 100000, 7, SampleMethod::Analytic);
  const auto nu = sample(spec, 100000, 7, SampleMethod::Numeric);
  ASSERT_EQ(an.values.size(), nu.values.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < an.values.size(); ++i) {
    worst = std::max(worst, std::abs(an.values[i] - nu.values[i]));
  }
  EXPECT_LE(worst, 1e-7);
}

TEST(Sample, AutoFallsBackToNumericAndAnalyticIsRejected) {
  const auto spec =
      validate(FamilyId::XieLai3, {{"a", 1}, {"b", 2}, {"c", 1}});
  const auto b = sample(spec, 100, 1);
  EXPECT_EQ(b.method, SampleMethod::Numeric);
  EXPECT_THROW(sample(spec, 100, 1, SampleMethod::Analytic), NoAnalyticForm);
  EXPECT_THROW(sample(weibull(1, 1), 0, 1), DomainError);
}

TEST(Sample, StaysInsideSupport) {
  const auto k =
      validate(FamilyId::Kies4, {{"a", 0.5}, {"b", 1}, {"c", 0.01}, {"d", 3}});
  const auto b = sample(k, 20000, 3);
  EXPECT_GE(*std::min_element(b.values.begin(), b.values.end()), 0.5);
  EXPECT_LT(*std::max_element(b.values.begin(), b.values.end()), 1.0);
}

TEST(Ks, SingleSampleAtMedian) {
  const auto spec = weibull(1, 1);
  const double v[] = {std::log(2.0)};
  EXPECT_NEAR(ks_statistic(v, spec), 0.5, 1e-15);
}

TEST(Ks, CorrectSamplerPassesAndMismatchIsDetected) {
  const auto batch = sample(weibull(1, 1), 100000, 7);
  EXPECT_LT(ks_statistic(batch), 1.95 / std::sqrt(1e5));
  const auto small = sample(weibull(1, 1), 10000, 7);
  EXPECT_GT(ks_statistic(small.values, weibull(1, 2)), 0.05);
}

TEST(Ks, MatchesBruteForceSupremum) {
  const auto spec = weibull(1, 1);
  auto v = sample(spec, 200, 11).values;
  const double d = ks_statistic(v, spec);
  std::sort(v.begin(), v.end());
  double brute = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double f = cdf(spec, v[i]);
    brute = std::max({brute, std::abs(double(i + 1) / v.size() - f),
                      std::abs(double(i) / v.size() - f)});
  }
  EXPECT_DOUBLE_EQ(d, brute);
  EXPECT_GE(d, 0.0);
  EXPECT_LE(d, 1.0);
}

TEST(Moments, SmallCases) {
  const double ones[] = {1, 1, 1};
  EXPECT_EQ(empirical_moments(ones).mean, 1.0);
  EXPECT_EQ(empirical_moments(ones).variance, 0.0);
  const double two[] = {0, 2};
  EXPECT_EQ(empirical_moments(two).mean, 1.0);
  EXPECT_EQ(empirical_moments(two).variance, 2.0);
}

TEST(Serialisation, CsvAndJson) {
  const auto batch = sample(weibull(1, 1), 3, 42);
  const auto csv = io::to_csv(batch);
  EXPECT_EQ(csv.rfind("value\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
  const auto j = io::to_json(batch);
  EXPECT_EQ(j["seed"], 42);
  EXPECT_EQ(j["values"].size(), 3u);
  EXPECT_EQ(j["values"][0].get<double>(), batch.values[0]);
}

TEST(Serialisation, NumbersRoundTrip) {
  for (double x : {0.1, 1.0 / 3.0, 6.02214076e23, 5e-324, -0.0}) {
    EXPECT_EQ(std::strtod(io::format_number(x).c_str(), nullptr), x);
  }
  EXPECT_EQ(io::format_number(0.6931471805599453), "0.6931471805599453");
}
