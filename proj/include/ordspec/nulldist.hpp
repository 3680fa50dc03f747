#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace ordspec {

enum class Descriptor { cid, cod };

std::string_view to_string(Descriptor d);
Descriptor descriptor_from_string(std::string_view name);  // "cid" | "cod"

struct Histogram {
  std::vector<double> edges;           // bins + 1 edges, ascending
  std::vector<std::uint64_t> counts;   // bins
};

// Freedman-Diaconis bin width 2*IQR/n^(1/3); falls back to a single bin when
// the data has zero spread or zero IQR.
Histogram freedman_diaconis_histogram(std::span<const double> values);
Histogram fixed_histogram(std::span<const double> values, std::size_t bins);

struct Moments {
  double mean = 0.0;
  double std = 0.0;  // population
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
};

Moments compute_moments(std::span<const double> values);

enum class NullMode { exact, monte_carlo };

struct NullDistributionSummary {
  Descriptor descriptor = Descriptor::cid;
  std::size_t n = 0;
  std::uint64_t trials = 0;
  Moments moments;
  Histogram histogram;
  NullMode mode = NullMode::exact;
  std::optional<std::uint64_t> seed;  // monte_carlo only

  double standard_error() const;
};

// Bound on n for exhaustive enumeration (10! = 3 628 800 permutations).
inline constexpr std::size_t kMaxExactN = 10;

// Descriptor value of every permutation of {1..n}, in lexicographic order.
std::vector<double> enumerate_null_values(std::size_t n, Descriptor descriptor);
NullDistributionSummary enumerate_null_exact(std::size_t n, Descriptor descriptor);

// Monte-Carlo sampling of uniform random permutations.
//
// Trials are split into fixed blocks of kTrialsPerBlock. Block b draws from
// an mt19937_64 seeded with splitmix64(seed + b) and shuffles with
// Fisher-Yates using Lemire's unbiased bounded integers. Value t of the
// output therefore depends only on (n, seed, t), never on the thread count.
inline constexpr std::uint64_t kTrialsPerBlock = 4096;

std::vector<double> sample_null_values(std::size_t n, std::uint64_t trials, std::uint64_t seed,
                                       Descriptor descriptor);
// Single-threaded reference for sample_null_values; same output bit for bit.
std::vector<double> sample_null_values_serial(std::size_t n, std::uint64_t trials,
                                              std::uint64_t seed, Descriptor descriptor);

NullDistributionSummary sample_null(std::size_t n, std::uint64_t trials, std::uint64_t seed,
                                    Descriptor descriptor);

struct QQPoint {
  double probability;  // plotting position (i + 0.5) / m
  double empirical;    // i-th order statistic
  double normal;       // same quantile of N(mean, std)
};

// Empirical vs fitted-normal quantiles. Needs >= 100 samples with nonzero
// variance (NumericError otherwise). max_points > 0 thins the output to
// evenly spaced order statistics.
std::vector<QQPoint> qq_points(std::span<const double> samples, std::size_t max_points = 0);

// Largest |empirical - normal| over points with probability inside
// [(1-central)/2, (1+central)/2].
double max_qq_deviation(std::span<const QQPoint> points, double central = 0.99);

}  // namespace ordspec
