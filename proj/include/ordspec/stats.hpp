#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ordspec/descriptors.hpp"

namespace ordspec {

enum class RankSumMethod { exact, normal_approx };

struct RankSumResult {
  double u_statistic = 0.0;  // Mann-Whitney U of x: #{x_i > y_j} + 0.5 #{x_i == y_j}
  double p_two_sided = 1.0;
  RankSumMethod method = RankSumMethod::exact;
  std::size_t n1 = 0;
  std::size_t n2 = 0;
};

// Exact enumeration of rank assignments is used up to this total size when
// the pooled sample has no ties.
inline constexpr std::size_t kExactRankSumLimit = 12;

// Two-sided Wilcoxon rank-sum test. Midranks; the normal approximation uses
// the tie-corrected variance and a 0.5 continuity correction.
// Throws std::invalid_argument on an empty group.
RankSumResult wilcoxon_rank_sum(std::span<const double> x, std::span<const double> y);
RankSumResult wilcoxon_rank_sum_normal(std::span<const double> x, std::span<const double> y);
RankSumResult wilcoxon_rank_sum_exact(std::span<const double> x, std::span<const double> y);

enum class Metric { cid, cod, entropy };

std::string_view to_string(Metric m);
Metric metric_from_string(std::string_view name);
double metric_value(const DescriptorSet& d, Metric m);

double median(std::span<const double> values);

struct GroupComparison {
  std::vector<std::string> names;  // sorted
  std::vector<double> medians;
  std::vector<std::size_t> sizes;
  // p_values[i][j] two-sided p between group i and j; symmetric, diagonal 1.
  std::vector<std::vector<double>> p_values;
  std::vector<std::vector<RankSumMethod>> methods;
};

// Requires >= 2 groups with >= 2 values each.
GroupComparison group_compare(const std::map<std::string, std::vector<double>>& groups);
GroupComparison group_compare(const std::map<std::string, std::vector<DescriptorSet>>& groups,
                              Metric metric);

}  // namespace ordspec
