#include "ordspec/nulldist.hpp"

#include <boost/math/distributions/normal.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include "ordspec/descriptors.hpp"
#include "ordspec/error.hpp"

namespace ordspec {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

__extension__ using uint128 = unsigned __int128;

// Lemire's nearly-divisionless unbiased draw from [0, range).
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t range) {
  std::uint64_t x = rng();
  uint128 m = static_cast<uint128>(x) * range;
  auto low = static_cast<std::uint64_t>(m);
  if (low < range) {
    const std::uint64_t threshold = (0 - range) % range;
    while (low < threshold) {
      x = rng();
      m = static_cast<uint128>(x) * range;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

double evaluate(std::span<const std::size_t> g, Descriptor d) {
  return d == Descriptor::cid ? circular_difference_raw(g) : correspondence_difference_raw(g);
}

void sample_block(std::size_t n, std::uint64_t seed, std::uint64_t block, std::uint64_t first,
                  std::uint64_t last, Descriptor d, std::vector<std::size_t>& scratch,
                  double* out) {
  std::mt19937_64 rng(splitmix64(seed + block));
  scratch.resize(n);
  for (std::uint64_t t = first; t < last; ++t) {
    std::iota(scratch.begin(), scratch.end(), std::size_t{1});
    for (std::size_t i = n - 1; i > 0; --i) {
      const auto j = static_cast<std::size_t>(bounded(rng, i + 1));
      std::swap(scratch[i], scratch[j]);
    }
    out[t] = evaluate(scratch, d);
  }
}

void check_sampling_args(std::size_t n, std::uint64_t trials) {
  if (n < 2) throw std::invalid_argument("null distribution needs n >= 2");
  if (trials < 1) throw std::invalid_argument("null distribution needs at least one trial");
}

double quantile_sorted(const std::vector<double>& sorted, double p) {
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace

std::string_view to_string(Descriptor d) { return d == Descriptor::cid ? "cid" : "cod"; }

Descriptor descriptor_from_string(std::string_view name) {
  if (name == "cid") return Descriptor::cid;
  if (name == "cod") return Descriptor::cod;
  throw std::invalid_argument("unknown descriptor '" + std::string(name) + "' (expected cid|cod)");
}

Histogram fixed_histogram(std::span<const double> values, std::size_t bins) {
  if (values.empty()) throw std::invalid_argument("histogram of an empty sample");
  if (bins == 0) throw std::invalid_argument("histogram needs at least one bin");
  const auto [min_it, max_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *min_it;
  const double hi = *max_it;

  Histogram h;
  h.counts.assign(bins, 0);
  h.edges.resize(bins + 1);
  const double width = (hi - lo) / static_cast<double>(bins);
  for (std::size_t i = 0; i <= bins; ++i) h.edges[i] = lo + width * static_cast<double>(i);
  h.edges.back() = hi;
  for (double v : values) {
    std::size_t idx = 0;
    if (width > 0.0) {
      idx = static_cast<std::size_t>((v - lo) / width);
      idx = std::min(idx, bins - 1);
    }
    ++h.counts[idx];
  }
  return h;
}

Histogram freedman_diaconis_histogram(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("histogram of an empty sample");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double range = sorted.back() - sorted.front();
  const double iqr = quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25);
  if (!(range > 0.0) || !(iqr > 0.0)) return fixed_histogram(values, 1);

  const double width = 2.0 * iqr / std::cbrt(static_cast<double>(sorted.size()));
  constexpr std::size_t kMaxBins = 100000;
  auto bins = static_cast<std::size_t>(std::ceil(range / width));
  bins = std::clamp<std::size_t>(bins, 1, kMaxBins);
  return fixed_histogram(values, bins);
}

Moments compute_moments(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("moments of an empty sample");
  const double count = static_cast<double>(values.size());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= count;

  double m2 = 0.0;
  double m3 = 0.0;
  double m4 = 0.0;
  for (double v : values) {
    const double d = v - mean;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  m2 /= count;
  m3 /= count;
  m4 /= count;

  Moments m;
  m.mean = mean;
  m.std = std::sqrt(m2);
  if (m2 > 0.0) {
    m.skewness = m3 / std::pow(m2, 1.5);
    m.excess_kurtosis = m4 / (m2 * m2) - 3.0;
  }
  return m;
}

double NullDistributionSummary::standard_error() const {
  return trials > 0 ? moments.std / std::sqrt(static_cast<double>(trials)) : 0.0;
}

std::vector<double> enumerate_null_values(std::size_t n, Descriptor descriptor) {
  if (n < 2 || n > kMaxExactN) {
    throw std::invalid_argument("exact enumeration supports 2 <= n <= " +
                                std::to_string(kMaxExactN) + ", got " + std::to_string(n));
  }
  std::vector<std::size_t> g(n);
  std::iota(g.begin(), g.end(), std::size_t{1});
  std::vector<double> values;
  std::size_t total = 1;
  for (std::size_t k = 2; k <= n; ++k) total *= k;
  values.reserve(total);
  do {
    values.push_back(evaluate(g, descriptor));
  } while (std::next_permutation(g.begin(), g.end()));
  return values;
}

NullDistributionSummary enumerate_null_exact(std::size_t n, Descriptor descriptor) {
  const auto values = enumerate_null_values(n, descriptor);
  NullDistributionSummary s;
  s.descriptor = descriptor;
  s.n = n;
  s.trials = values.size();
  s.moments = compute_moments(values);
  s.histogram = freedman_diaconis_histogram(values);
  s.mode = NullMode::exact;
  return s;
}

std::vector<double> sample_null_values_serial(std::size_t n, std::uint64_t trials,
                                              std::uint64_t seed, Descriptor descriptor) {
  check_sampling_args(n, trials);
  std::vector<double> values(trials);
  std::vector<std::size_t> scratch;
  const std::uint64_t blocks = (trials + kTrialsPerBlock - 1) / kTrialsPerBlock;
  for (std::uint64_t b = 0; b < blocks; ++b) {
    const std::uint64_t first = b * kTrialsPerBlock;
    const std::uint64_t last = std::min(trials, first + kTrialsPerBlock);
    sample_block(n, seed, b, first, last, descriptor, scratch, values.data());
  }
  return values;
}

std::vector<double> sample_null_values(std::size_t n, std::uint64_t trials, std::uint64_t seed,
                                       Descriptor descriptor) {
  check_sampling_args(n, trials);
  std::vector<double> values(trials);
  const auto blocks = static_cast<std::int64_t>((trials + kTrialsPerBlock - 1) / kTrialsPerBlock);
#pragma omp parallel
  {
    std::vector<std::size_t> scratch;
#pragma omp for schedule(static)
    for (std::int64_t b = 0; b < blocks; ++b) {
      const auto block = static_cast<std::uint64_t>(b);
      const std::uint64_t first = block * kTrialsPerBlock;
      const std::uint64_t last = std::min(trials, first + kTrialsPerBlock);
      sample_block(n, seed, block, first, last, descriptor, scratch, values.data());
    }
  }
  return values;
}

NullDistributionSummary sample_null(std::size_t n, std::uint64_t trials, std::uint64_t seed,
                                    Descriptor descriptor) {
  const auto values = sample_null_values(n, trials, seed, descriptor);
  NullDistributionSummary s;
  s.descriptor = descriptor;
  s.n = n;
  s.trials = trials;
  s.moments = compute_moments(values);
  s.histogram = freedman_diaconis_histogram(values);
  s.mode = NullMode::monte_carlo;
  s.seed = seed;
  return s;
}

std::vector<QQPoint> qq_points(std::span<const double> samples, std::size_t max_points) {
  if (samples.size() < 100) {
    throw std::invalid_argument("QQ plot needs at least 100 samples, got " +
                                std::to_string(samples.size()));
  }
  const Moments m = compute_moments(samples);
  if (!(m.std > 0.0)) throw NumericError("QQ plot undefined for zero-variance samples");

  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t count = sorted.size();
  const boost::math::normal_distribution<double> fitted(m.mean, m.std);

  std::vector<std::size_t> picks;
  if (max_points == 0 || max_points >= count) {
    picks.resize(count);
    std::iota(picks.begin(), picks.end(), std::size_t{0});
  } else if (max_points == 1) {
    picks.push_back(count / 2);
  } else {
    picks.reserve(max_points);
    for (std::size_t k = 0; k < max_points; ++k) {
      picks.push_back(k * (count - 1) / (max_points - 1));
    }
  }

  std::vector<QQPoint> out;
  out.reserve(picks.size());
  for (std::size_t i : picks) {
    const double p = (static_cast<double>(i) + 0.5) / static_cast<double>(count);
    out.push_back({p, sorted[i], boost::math::quantile(fitted, p)});
  }
  return out;
}

double max_qq_deviation(std::span<const QQPoint> points, double central) {
  const double lo = 0.5 * (1.0 - central);
  const double hi = 0.5 * (1.0 + central);
  double worst = 0.0;
  for (const auto& pt : points) {
    if (pt.probability < lo || pt.probability > hi) continue;
    worst = std::max(worst, std::abs(pt.empirical - pt.normal));
  }
  return worst;
}

}  // namespace ordspec
