#pragma once

// Seeded inverse-transform sampling and goodness-of-fit statistics.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "lwsim/distributions.hpp"

namespace lwsim {

/// Counter-based SplitMix64 stream. Output i depends only on (seed, i), so
/// any slice of the sequence can be generated independently and the stream
/// is bit-identical on every platform.
class SeededStream {
 public:
  static constexpr std::string_view kAlgorithm = "splitmix64";

  explicit SeededStream(std::uint64_t seed, std::uint64_t position = 0)
      : seed_(seed), position_(position) {}

  /// Raw 64-bit output at an arbitrary counter position.
  static std::uint64_t bits_at(std::uint64_t seed, std::uint64_t index);
  /// Uniform in the open interval (0, 1): (k + 1/2) 2^-53 with k the top 53
  /// bits of bits_at(seed, index).
  static double uniform_at(std::uint64_t seed, std::uint64_t index);

  std::uint64_t next_bits() { return bits_at(seed_, position_++); }
  double next_uniform() { return uniform_at(seed_, position_++); }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t position() const { return position_; }

 private:
  std::uint64_t seed_;
  std::uint64_t position_;
};

enum class SampleMethod { Analytic, Numeric, Auto };

std::string_view method_name(SampleMethod m);

struct SampleBatch {
  DistributionSpec spec;
  std::vector<double> values;
  std::uint64_t seed;
  /// Resolved method: Analytic or Numeric, never Auto.
  SampleMethod method;
};

/// Tolerance used for numeric-inversion sampling.
inline constexpr double kSamplingTolerance = 1e-12;

/// values[i] = Q(uniform_at(seed, i)). Auto picks Analytic when the family
/// has one. The counter space is split into contiguous chunks across
/// `threads` workers, so the output does not depend on the thread count.
/// Throws NoAnalyticForm for Analytic on a numeric-only family and
/// DomainError when the law leaves mass at infinity.
SampleBatch sample(const DistributionSpec& spec, std::size_t n,
                   std::uint64_t seed, SampleMethod method = SampleMethod::Auto,
                   unsigned threads = 1);

/// D_n = sup |F_n - F| by the sorted-sample formula.
double ks_statistic(std::span<const double> values,
                    const DistributionSpec& spec);
double ks_statistic(const SampleBatch& batch);

/// Asymptotic one-sample KS critical value of sqrt(n) D_n at alpha ~ 0.001.
inline constexpr double kKsCriticalScaled = 1.95;

struct Moments {
  double mean;
  double variance;  // unbiased
};

Moments empirical_moments(std::span<const double> values);
Moments empirical_moments(const SampleBatch& batch);

}  // namespace lwsim
