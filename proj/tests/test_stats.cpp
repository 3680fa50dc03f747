#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "ordspec/stats.hpp"
#include "test_support.hpp"

using namespace ordspec;

namespace {

// Two-sided exact p by listing every size-n1 subset of 1..n as a vector.
double exact_p_oracle(std::size_t n1, std::size_t n, double observed_rank_sum) {
  std::vector<int> pick(n, 0);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(n1), 1);
  std::sort(pick.begin(), pick.end());
  std::size_t le = 0, ge = 0, total = 0;
  do {
    double w = 0.0;
    for (std::size_t i = 0; i < n; ++i) if (pick[i]) w += static_cast<double>(i + 1);
    ++total;
    if (w <= observed_rank_sum) ++le;
    if (w >= observed_rank_sum) ++ge;
  } while (std::next_permutation(pick.begin(), pick.end()));
  return std::min(1.0, 2.0 * static_cast<double>(std::min(le, ge)) / static_cast<double>(total));
}

}  // namespace

TEST_CASE("exact rank-sum hand cases") {
  const auto a = wilcoxon_rank_sum(std::vector<double>{1, 2, 3}, std::vector<double>{4, 5, 6});
  CHECK(a.method == RankSumMethod::exact);
  CHECK(a.u_statistic == 0.0);
  CHECK(a.p_two_sided == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(a.n1 == 3);
  CHECK(a.n2 == 3);

  const auto b = wilcoxon_rank_sum(std::vector<double>{1, 4}, std::vector<double>{2, 3});
  CHECK(b.method == RankSumMethod::exact);
  CHECK(b.u_statistic == 2.0);
  CHECK(b.p_two_sided == 1.0);
}

TEST_CASE("exact p matches subset enumeration oracle") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n1 = 1 + rng() % 6;
    const std::size_t n2 = 1 + rng() % 6;
    std::vector<double> x(n1), y(n2);
    std::uniform_real_distribution<double> u(0, 1);
    for (auto& v : x) v = u(rng);
    for (auto& v : y) v = u(rng) + 0.3;
    const auto r = wilcoxon_rank_sum(x, y);
    CHECK(r.method == RankSumMethod::exact);
    const double rank_sum = r.u_statistic + static_cast<double>(n1 * (n1 + 1)) / 2.0;
    CHECK(r.p_two_sided == doctest::Approx(exact_p_oracle(n1, n1 + n2, rank_sum)).epsilon(1e-14));
  }
}

TEST_CASE("rank-sum edge cases") {
  CHECK_THROWS_AS(wilcoxon_rank_sum(std::vector<double>{}, std::vector<double>{1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(wilcoxon_rank_sum_exact(std::vector<double>{1, 1}, std::vector<double>{1, 2}),
                  std::invalid_argument);

  // Ties force the normal approximation even for tiny samples.
  const auto tied = wilcoxon_rank_sum(std::vector<double>{1, 1, 2}, std::vector<double>{2, 3});
  CHECK(tied.method == RankSumMethod::normal_approx);

  std::vector<double> big(40);
  std::mt19937_64 rng(1);
  for (auto& v : big) v = std::normal_distribution<double>()(rng);
  const auto same = wilcoxon_rank_sum(big, big);
  CHECK(same.method == RankSumMethod::normal_approx);
  CHECK(same.p_two_sided >= 0.99);

  const auto all_equal = wilcoxon_rank_sum(std::vector<double>(8, 2.0), std::vector<double>(9, 2.0));
  CHECK(all_equal.p_two_sided == 1.0);
}

TEST_CASE("normal approximation against a hand-computed value") {
  // x = 1..10, y = 11..20: U = 0, mu = 50, var = 100*21/12 = 175,
  // z = 49.5/sqrt(175), p = erfc(z/sqrt2).
  std::vector<double> x(10), y(10);
  for (int i = 0; i < 10; ++i) {
    x[i] = i + 1;
    y[i] = i + 11;
  }
  const auto r = wilcoxon_rank_sum(x, y);
  CHECK(r.method == RankSumMethod::normal_approx);
  CHECK(r.u_statistic == 0.0);
  const double z = 49.5 / std::sqrt(175.0);
  CHECK(r.p_two_sided == doctest::Approx(std::erfc(z / std::sqrt(2.0))).epsilon(1e-12));
}

TEST_CASE("rank-sum invariants") {
  std::mt19937_64 rng(29);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> x(3 + rng() % 20), y(3 + rng() % 20);
    for (auto& v : x) v = nd(rng);
    for (auto& v : y) v = nd(rng) + 0.5;
    const auto r = wilcoxon_rank_sum(x, y);
    const auto swapped = wilcoxon_rank_sum(y, x);
    CHECK(swapped.p_two_sided == doctest::Approx(r.p_two_sided).epsilon(1e-14));
    CHECK(r.u_statistic + swapped.u_statistic == static_cast<double>(x.size() * y.size()));
    CHECK(r.u_statistic >= 0.0);
    CHECK(r.u_statistic <= static_cast<double>(x.size() * y.size()));
    CHECK(r.p_two_sided >= 0.0);
    CHECK(r.p_two_sided <= 1.0);

    auto tx = x, ty = y;
    for (auto& v : tx) v = std::exp(3.0 * v) + 7.0;
    for (auto& v : ty) v = std::exp(3.0 * v) + 7.0;
    CHECK(wilcoxon_rank_sum(tx, ty).p_two_sided == r.p_two_sided);
  }
}

TEST_CASE("exact and normal approximation agree on tie-free 6 vs 6") {
  std::mt19937_64 rng(47);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> x(6), y(6);
    for (auto& v : x) v = nd(rng);
    for (auto& v : y) v = nd(rng) + 0.8;
    const auto e = wilcoxon_rank_sum_exact(x, y);
    const auto a = wilcoxon_rank_sum_normal(x, y);
    CHECK(std::abs(e.p_two_sided - a.p_two_sided) <= 0.02);
  }
}

TEST_CASE("median") {
  CHECK(median(std::vector<double>{3, 1, 2}) == 2.0);
  CHECK(median(std::vector<double>{4, 1, 3, 2}) == 2.5);
  CHECK_THROWS_AS(median(std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("group_compare") {
  std::map<std::string, std::vector<double>> two{
      {"a", std::vector<double>(10, 0.0)}, {"b", std::vector<double>(10, 1.0)}};
  const auto t2 = group_compare(two);
  CHECK(t2.names == std::vector<std::string>{"a", "b"});
  CHECK(t2.p_values[0][1] < 0.001);
  CHECK(t2.p_values[0][0] == 1.0);
  CHECK(t2.medians == std::vector<double>{0.0, 1.0});

  std::map<std::string, std::vector<double>> three{
      {"x", {1, 2, 3, 4}}, {"y", {2, 3, 4, 5}}, {"z", {10, 11, 12, 13}}};
  const auto t3 = group_compare(three);
  REQUIRE(t3.p_values.size() == 3);
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(t3.p_values[i][i] == 1.0);
    for (std::size_t j = i + 1; j < 3; ++j) {
      CHECK(t3.p_values[i][j] == t3.p_values[j][i]);
      ++pairs;
    }
  }
  CHECK(pairs == 3);

  const auto self = wilcoxon_rank_sum(three["x"], three["x"]);
  CHECK(self.p_two_sided >= 0.99);

  CHECK_THROWS_AS(group_compare(std::map<std::string, std::vector<double>>{{"a", {1, 2}}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(group_compare(std::map<std::string, std::vector<double>>{{"a", {1, 2}},
                                                                           {"b", {1}}}),
                  std::invalid_argument);

  std::map<std::string, std::vector<DescriptorSet>> sets{
      {"lo", {{.cid = 1, .cod = 5, .spectral_entropy = 0.1}, {.cid = 2, .cod = 6}}},
      {"hi", {{.cid = 9, .cod = 1}, {.cid = 8, .cod = 2}}}};
  const auto by_cid = group_compare(sets, Metric::cid);
  CHECK(by_cid.medians == std::vector<double>{8.5, 1.5});  // names sorted: hi, lo
  CHECK(metric_from_string("entropy") == Metric::entropy);
  CHECK_THROWS_AS(metric_from_string("foo"), std::invalid_argument);
}
