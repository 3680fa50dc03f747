#include "ordspec/stats.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>

#include "ordspec/error.hpp"

namespace ordspec {

namespace {

struct PooledRanks {
  std::vector<double> ranks;  // pooled order: x first, then y
  double tie_term = 0.0;      // sum over tie groups of t^3 - t
  bool has_ties = false;
};

PooledRanks midranks(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size() + y.size();
  std::vector<double> pooled;
  pooled.reserve(n);
  pooled.insert(pooled.end(), x.begin(), x.end());
  pooled.insert(pooled.end(), y.begin(), y.end());
  for (double v : pooled) {
    if (std::isnan(v)) throw DataError("rank-sum test received a NaN value");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return pooled[a] < pooled[b]; });

  PooledRanks out;
  out.ranks.resize(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i + 1;
    while (j < n && pooled[order[j]] == pooled[order[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + 1 + j);  // mean of ranks i+1..j
    for (std::size_t k = i; k < j; ++k) out.ranks[order[k]] = avg;
    const auto t = static_cast<double>(j - i);
    if (j - i > 1) {
      out.has_ties = true;
      out.tie_term += t * t * t - t;
    }
    i = j;
  }
  return out;
}

void check_groups(std::span<const double> x, std::span<const double> y) {
  if (x.empty() || y.empty()) throw std::invalid_argument("rank-sum test needs two non-empty groups");
}

double u_from_ranks(const PooledRanks& pr, std::size_t n1) {
  double r1 = 0.0;
  for (std::size_t i = 0; i < n1; ++i) r1 += pr.ranks[i];
  const auto n1d = static_cast<double>(n1);
  return r1 - n1d * (n1d + 1.0) / 2.0;
}

constexpr std::size_t kExactEnumerationCap = 24;

}  // namespace

RankSumResult wilcoxon_rank_sum_normal(std::span<const double> x, std::span<const double> y) {
  check_groups(x, y);
  const PooledRanks pr = midranks(x, y);
  RankSumResult r;
  r.n1 = x.size();
  r.n2 = y.size();
  r.method = RankSumMethod::normal_approx;
  r.u_statistic = u_from_ranks(pr, r.n1);

  const auto n1 = static_cast<double>(r.n1);
  const auto n2 = static_cast<double>(r.n2);
  const double n = n1 + n2;
  const double mu = n1 * n2 / 2.0;
  double var = n1 * n2 / 12.0 * (n + 1.0);
  if (n > 1.0) var -= n1 * n2 / 12.0 * pr.tie_term / (n * (n - 1.0));
  if (!(var > 0.0)) {
    r.p_two_sided = 1.0;
    return r;
  }
  const double dev = std::max(0.0, std::abs(r.u_statistic - mu) - 0.5);
  const double z = dev / std::sqrt(var);
  r.p_two_sided = std::min(1.0, std::erfc(z / std::sqrt(2.0)));
  return r;
}

RankSumResult wilcoxon_rank_sum_exact(std::span<const double> x, std::span<const double> y) {
  check_groups(x, y);
  const std::size_t n = x.size() + y.size();
  if (n > kExactEnumerationCap) {
    throw std::invalid_argument("exact rank-sum enumeration limited to n1+n2 <= " +
                                std::to_string(kExactEnumerationCap));
  }
  const PooledRanks pr = midranks(x, y);
  if (pr.has_ties) throw std::invalid_argument("exact rank-sum p-value requires tie-free data");

  RankSumResult r;
  r.n1 = x.size();
  r.n2 = y.size();
  r.method = RankSumMethod::exact;
  r.u_statistic = u_from_ranks(pr, r.n1);

  // Every choice of n1 ranks out of 1..n is equally likely under the null.
  const auto offset = static_cast<std::int64_t>(r.n1 * (r.n1 + 1) / 2);
  const auto observed = static_cast<std::int64_t>(std::llround(r.u_statistic));
  std::uint64_t below_or_equal = 0;
  std::uint64_t above_or_equal = 0;
  std::uint64_t total = 0;
  const std::uint64_t limit = std::uint64_t{1} << n;
  for (std::uint64_t mask = 0; mask < limit; ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) != r.n1) continue;
    std::int64_t rank_sum = 0;
    for (std::size_t b = 0; b < n; ++b) {
      if (mask & (std::uint64_t{1} << b)) rank_sum += static_cast<std::int64_t>(b + 1);
    }
    const std::int64_t u = rank_sum - offset;
    ++total;
    if (u <= observed) ++below_or_equal;
    if (u >= observed) ++above_or_equal;
  }
  const double tail = static_cast<double>(std::min(below_or_equal, above_or_equal)) /
                      static_cast<double>(total);
  r.p_two_sided = std::min(1.0, 2.0 * tail);
  return r;
}

RankSumResult wilcoxon_rank_sum(std::span<const double> x, std::span<const double> y) {
  check_groups(x, y);
  if (x.size() + y.size() <= kExactRankSumLimit && !midranks(x, y).has_ties) {
    return wilcoxon_rank_sum_exact(x, y);
  }
  return wilcoxon_rank_sum_normal(x, y);
}

std::string_view to_string(Metric m) {
  switch (m) {
    case Metric::cid:
      return "cid";
    case Metric::cod:
      return "cod";
    case Metric::entropy:
      return "entropy";
  }
  return "cid";
}

Metric metric_from_string(std::string_view name) {
  if (name == "cid") return Metric::cid;
  if (name == "cod") return Metric::cod;
  if (name == "entropy") return Metric::entropy;
  throw std::invalid_argument("unknown metric '" + std::string(name) +
                              "' (expected cid|cod|entropy)");
}

double metric_value(const DescriptorSet& d, Metric m) {
  switch (m) {
    case Metric::cid:
      return d.cid;
    case Metric::cod:
      return d.cod;
    case Metric::entropy:
      return d.spectral_entropy;
  }
  return d.cid;
}

double median(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("median of an empty sample");
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  return v.size() % 2 == 1 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

GroupComparison group_compare(const std::map<std::string, std::vector<double>>& groups) {
  if (groups.size() < 2) throw std::invalid_argument("group comparison needs at least 2 groups");
  GroupComparison out;
  std::vector<const std::vector<double>*> data;
  for (const auto& [name, values] : groups) {
    if (values.size() < 2) {
      throw std::invalid_argument("group '" + name + "' has fewer than 2 values");
    }
    out.names.push_back(name);
    out.medians.push_back(median(values));
    out.sizes.push_back(values.size());
    data.push_back(&values);
  }
  const std::size_t g = data.size();
  out.p_values.assign(g, std::vector<double>(g, 1.0));
  out.methods.assign(g, std::vector<RankSumMethod>(g, RankSumMethod::exact));
  for (std::size_t i = 0; i < g; ++i) {
    for (std::size_t j = i + 1; j < g; ++j) {
      const RankSumResult r = wilcoxon_rank_sum(*data[i], *data[j]);
      out.p_values[i][j] = out.p_values[j][i] = r.p_two_sided;
      out.methods[i][j] = out.methods[j][i] = r.method;
    }
  }
  return out;
}

GroupComparison group_compare(const std::map<std::string, std::vector<DescriptorSet>>& groups,
                              Metric metric) {
  std::map<std::string, std::vector<double>> values;
  for (const auto& [name, sets] : groups) {
    auto& v = values[name];
    v.reserve(sets.size());
    for (const auto& d : sets) v.push_back(metric_value(d, metric));
  }
  return group_compare(values);
}

}  // namespace ordspec
