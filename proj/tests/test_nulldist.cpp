#include <doctest.h>

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <map>
#include <set>
#include <stdexcept>

#include "ordspec/error.hpp"
#include "ordspec/nulldist.hpp"
#include "test_support.hpp"

using namespace ordspec;

namespace {

// Independent mean of a descriptor over all permutations, by brute force
// with the test oracles.
double brute_mean(std::size_t n, Descriptor d) {
  std::vector<std::size_t> g(n);
  for (std::size_t i = 0; i < n; ++i) g[i] = i + 1;
  double sum = 0.0;
  std::size_t count = 0;
  do {
    sum += d == Descriptor::cid ? ordspec::testing::cid_oracle(g, n)
                                : ordspec::testing::cod_oracle(g, n);
    ++count;
  } while (std::next_permutation(g.begin(), g.end()));
  return sum / static_cast<double>(count);
}

double cod_mean_formula(std::size_t n) {
  const auto x = static_cast<double>(n);
  return (x * x - 1.0) / (3.0 * x);
}

double cid_mean_formula(std::size_t n) { return (static_cast<double>(n) + 1.0) / 3.0; }

}  // namespace

TEST_CASE("exact enumeration small cases") {
  const auto cod4 = enumerate_null_exact(4, Descriptor::cod);
  CHECK(cod4.trials == 24);
  CHECK(cod4.mode == NullMode::exact);
  CHECK_FALSE(cod4.seed.has_value());
  CHECK(cod4.moments.mean == doctest::Approx(1.25).epsilon(1e-14));

  const auto cid4 = enumerate_null_exact(4, Descriptor::cid);
  CHECK(cid4.moments.mean == doctest::Approx(5.0 / 3.0).epsilon(1e-14));

  const auto cod2 = enumerate_null_values(2, Descriptor::cod);
  CHECK(cod2 == std::vector<double>{0.0, 1.0});
  CHECK(enumerate_null_exact(2, Descriptor::cod).moments.mean == 0.5);

  CHECK_THROWS_AS(enumerate_null_exact(1, Descriptor::cid), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_null_exact(11, Descriptor::cid), std::invalid_argument);
}

TEST_CASE("closed-form means hold under enumeration for n <= 8") {
  for (std::size_t n = 2; n <= 8; ++n) {
    const double cod = enumerate_null_exact(n, Descriptor::cod).moments.mean;
    const double cid = enumerate_null_exact(n, Descriptor::cid).moments.mean;
    CHECK(cod == doctest::Approx(brute_mean(n, Descriptor::cod)).epsilon(1e-12));
    CHECK(cid == doctest::Approx(brute_mean(n, Descriptor::cid)).epsilon(1e-12));
    CHECK(cod == doctest::Approx(cod_mean_formula(n)).epsilon(1e-12));
    CHECK(cid == doctest::Approx(cid_mean_formula(n)).epsilon(1e-12));
  }
}

TEST_CASE("histogram counts sum to trials") {
  for (std::size_t n : {2u, 3u, 5u, 7u}) {
    for (auto d : {Descriptor::cid, Descriptor::cod}) {
      const auto s = enumerate_null_exact(n, d);
      std::uint64_t total = 0;
      for (auto c : s.histogram.counts) total += c;
      CHECK(total == s.trials);
      CHECK(s.histogram.edges.size() == s.histogram.counts.size() + 1);
      CHECK(std::is_sorted(s.histogram.edges.begin(), s.histogram.edges.end()));
    }
  }
  const auto h = fixed_histogram(std::vector<double>{0, 1, 2, 3}, 2);
  CHECK(h.counts == std::vector<std::uint64_t>{2, 2});
  CHECK_THROWS_AS(fixed_histogram(std::vector<double>{}, 2), std::invalid_argument);
}

TEST_CASE("moments of a known sample") {
  const auto m = compute_moments(std::vector<double>{1, 2, 3, 4});
  CHECK(m.mean == 2.5);
  CHECK(m.std == doctest::Approx(std::sqrt(1.25)));
  CHECK(m.skewness == doctest::Approx(0.0));
  // Uniform on four points: m4/m2^2 = 2.5625/1.5625 = 1.64.
  CHECK(m.excess_kurtosis == doctest::Approx(1.64 - 3.0));
}

TEST_CASE("sampling is reproducible and independent of thread count") {
  const auto serial = sample_null_values_serial(16, 20000, 99, Descriptor::cid);
  const int saved = omp_get_max_threads();
  for (int threads : {1, 2, 3, 8}) {
    omp_set_num_threads(threads);
    CHECK(sample_null_values(16, 20000, 99, Descriptor::cid) == serial);
  }
  omp_set_num_threads(saved);
  CHECK(sample_null_values(16, 20000, 100, Descriptor::cid) != serial);

  const auto a = sample_null(16, 5000, 3, Descriptor::cod);
  const auto b = sample_null(16, 5000, 3, Descriptor::cod);
  CHECK(a.moments.mean == b.moments.mean);
  CHECK(a.histogram.counts == b.histogram.counts);
  CHECK(a.seed == std::optional<std::uint64_t>(3));
  CHECK(a.mode == NullMode::monte_carlo);
}

TEST_CASE("Monte-Carlo support lies inside the exact support") {
  const auto exact = enumerate_null_values(4, Descriptor::cid);
  const std::set<double> support(exact.begin(), exact.end());
  const auto sampled = sample_null_values(4, 100000, 12345, Descriptor::cid);
  for (double v : sampled) CHECK(support.count(v) == 1);

  const auto exact_cod = enumerate_null_values(4, Descriptor::cod);
  const std::set<double> support_cod(exact_cod.begin(), exact_cod.end());
  const auto sampled_cod = sample_null_values(4, 100000, 12345, Descriptor::cod);
  CHECK(std::all_of(sampled_cod.begin(), sampled_cod.end(),
                    [&](double v) { return support_cod.count(v) == 1; }));
}

TEST_CASE("Monte-Carlo means converge to the exact means for n <= 8") {
  for (std::size_t n = 2; n <= 8; ++n) {
    for (auto d : {Descriptor::cid, Descriptor::cod}) {
      const auto exact = enumerate_null_exact(n, d);
      const auto mc = sample_null(n, 100000, 1000 + n, d);
      const double se = exact.moments.std / std::sqrt(100000.0);
      CHECK(std::abs(mc.moments.mean - exact.moments.mean) <= 4.0 * se + 1e-9);
    }
  }
}

TEST_CASE("sampled values are finite and bounded by n") {
  for (std::size_t n : {2u, 9u, 33u, 64u}) {
    for (auto d : {Descriptor::cid, Descriptor::cod}) {
      for (double v : sample_null_values(n, 2000, 5, d)) {
        CHECK(std::isfinite(v));
        CHECK(v >= 0.0);
        CHECK(v <= static_cast<double>(n));
      }
    }
  }
}

TEST_CASE("sampled permutations are uniform at n = 3") {
  // Each of the 6 permutations of {1,2,3} has a distinct (cid, cod) pair
  // except reflections; compare cod frequencies with exact probabilities.
  const auto values = sample_null_values(3, 60000, 8, Descriptor::cod);
  const auto exact = enumerate_null_values(3, Descriptor::cod);
  std::map<double, double> expected;
  for (double v : exact) expected[v] += 1.0 / 6.0;
  std::map<double, double> observed;
  for (double v : values) observed[v] += 1.0 / 60000.0;
  for (const auto& [v, p] : expected) {
    const double se = std::sqrt(p * (1 - p) / 60000.0);
    CHECK(std::abs(observed[v] - p) <= 4.0 * se);
  }
}

TEST_CASE("qq_points") {
  CHECK_THROWS_AS(qq_points(std::vector<double>(200, 1.0)), NumericError);
  CHECK_THROWS_AS(qq_points(std::vector<double>(50, 1.0)), std::invalid_argument);

  std::mt19937_64 rng(31);
  std::normal_distribution<double> normal(3.0, 2.0);
  std::vector<double> samples(20000);
  for (auto& v : samples) v = normal(rng);
  const auto pts = qq_points(samples);
  CHECK(pts.size() == samples.size());
  // Central 98%: the quantile noise is well under a tenth of the std.
  CHECK(max_qq_deviation(pts, 0.98) < 0.1 * 2.0);

  const auto thin = qq_points(samples, 101);
  CHECK(thin.size() == 101);
  CHECK(std::is_sorted(thin.begin(), thin.end(),
                       [](const QQPoint& a, const QQPoint& b) { return a.empirical < b.empirical; }));
}
