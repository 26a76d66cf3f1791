#include "lwsim/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

#include "lwsim/errors.hpp"

namespace lwsim {

std::uint64_t SeededStream::bits_at(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double SeededStream::uniform_at(std::uint64_t seed, std::uint64_t index) {
  const std::uint64_t k = bits_at(seed, index) >> 11;
  return (static_cast<double>(k) + 0.5) * 0x1.0p-53;
}

std::string_view method_name(SampleMethod m) {
  switch (m) {
    case SampleMethod::Analytic:
      return "Analytic";
    case SampleMethod::Numeric:
      return "Numeric";
    case SampleMethod::Auto:
      return "Auto";
  }
  return "?";
}

SampleBatch sample(const DistributionSpec& spec, std::size_t n,
                   std::uint64_t seed, SampleMethod method, unsigned threads) {
  if (n == 0) throw DomainError("sample: n must be positive");
  if (spec.max_probability() < 1.0) {
    throw DomainError("sample: " + std::string(family_name(spec.family())) +
                      " with these parameters leaves mass at infinity");
  }
  const bool analytic = has_analytic_quantile(spec.family());
  if (method == SampleMethod::Analytic && !analytic) {
    throw NoAnalyticForm("sample: " + std::string(family_name(spec.family())) +
                         " has no analytic quantile; use Numeric or Auto");
  }
  if (method == SampleMethod::Auto) {
    method = analytic ? SampleMethod::Analytic : SampleMethod::Numeric;
  }

  SampleBatch batch{spec, std::vector<double>(n), seed, method};
  const auto [lo, hi] = spec.support();

  auto fill = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const double u = SeededStream::uniform_at(seed, i);
      double t = method == SampleMethod::Analytic
                     ? quantile(spec, u).t
                     : numeric_quantile(spec, u, kSamplingTolerance).t;
      // Keep variates strictly below a finite upper bound.
      if (std::isfinite(hi) && t >= hi) t = std::nextafter(hi, lo);
      batch.values[i] = t;
    }
  };

  const std::size_t workers =
      std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(n / 1024, 1));
  if (workers == 1) {
    fill(0, n);
    return batch;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back(fill, begin, end);
  }
  for (auto& t : pool) t.join();
  return batch;
}

double ks_statistic(std::span<const double> values,
                    const DistributionSpec& spec) {
  if (values.empty()) throw DomainError("ks_statistic: empty sample");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(spec, sorted[i]);
    const double above = static_cast<double>(i + 1) / n - f;
    const double below = f - static_cast<double>(i) / n;
    d = std::max({d, above, below});
  }
  return d;
}

double ks_statistic(const SampleBatch& batch) {
  return ks_statistic(batch.values, batch.spec);
}

Moments empirical_moments(std::span<const double> values) {
  if (values.size() < 2) {
    throw DomainError("empirical_moments: need at least two values");
  }
  // Welford
  double mean = 0.0;
  double m2 = 0.0;
  std::size_t k = 0;
  for (double x : values) {
    ++k;
    const double delta = x - mean;
    mean += delta / static_cast<double>(k);
    m2 += delta * (x - mean);
  }
  return {mean, m2 / static_cast<double>(k - 1)};
}

Moments empirical_moments(const SampleBatch& batch) {
  return empirical_moments(batch.values);
}

}  // namespace lwsim
