#include "ordspec/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "ordspec/error.hpp"

namespace ordspec {

RankPermutation RankPermutation::from_grid_of_rank(std::vector<std::size_t> grid_of_rank) {
  const std::size_t n = grid_of_rank.size();
  if (n == 0) throw std::invalid_argument("permutation must be non-empty");
  RankPermutation perm;
  perm.rank_of_grid.assign(n, 0);
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t g = grid_of_rank[r];
    if (g < 1 || g > n || perm.rank_of_grid[g - 1] != 0) {
      throw std::invalid_argument("grid_of_rank is not a permutation of 1.." + std::to_string(n));
    }
    perm.rank_of_grid[g - 1] = r + 1;
  }
  perm.grid_of_rank = std::move(grid_of_rank);
  return perm;
}

RankPermutation rank_values(std::span<const double> values, RankDirection direction) {
  const std::size_t n = values.size();
  if (n < 2) throw std::invalid_argument("ranking needs at least 2 spectrum values");
  for (double v : values) {
    if (std::isnan(v)) throw DataError("cannot rank NaN spectrum values");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  // stable_sort keeps equal values in grid order, so ties go to the lower index.
  if (direction == RankDirection::descending) {
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
  } else {
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  }

  RankPermutation perm;
  perm.grid_of_rank.resize(n);
  perm.rank_of_grid.resize(n);
  for (std::size_t r = 0; r < n; ++r) {
    perm.grid_of_rank[r] = order[r] + 1;
    perm.rank_of_grid[order[r]] = r + 1;
  }
  return perm;
}

RankPermutation rank_spectrum(const PowerSpectrum& spectrum, RankDirection direction) {
  return rank_values(spectrum.values, direction);
}

TruncationResult truncate_by_energy(const PowerSpectrum& spectrum, const RankPermutation& perm,
                                    double q) {
  if (!(q > 0.0 && q <= 1.0)) {
    throw std::invalid_argument("energy quantile q must lie in (0, 1], got " + std::to_string(q));
  }
  const std::size_t n = spectrum.size();
  if (perm.size() != n) {
    throw std::invalid_argument("permutation size does not match the spectrum");
  }
  // Both the total and the running prefix are summed in rank order, so at
  // q = 1 the prefix ending at the last nonzero bin reproduces the total bit
  // for bit.
  std::vector<double> prefix(n);
  double sum = 0.0;
  double c = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    const double v = spectrum.values[perm.grid_of_rank[r] - 1];
    if (v != 0.0) {
      const double y = v - c;
      const double t = sum + y;
      c = (t - sum) - y;
      sum = t;
    }
    prefix[r] = sum;
  }
  const double total = prefix.back();
  if (!(total > 0.0)) throw NumericError("energy truncation undefined: total power is zero");

  const double target = q * total;
  std::size_t length = n;
  for (std::size_t r = 0; r < n; ++r) {
    if (prefix[r] >= target) {
      length = r + 1;
      break;
    }
  }

  TruncationResult result;
  result.length = length;
  result.q = q;
  result.retained_grid.assign(perm.grid_of_rank.begin(),
                              perm.grid_of_rank.begin() + static_cast<std::ptrdiff_t>(length));
  return result;
}

}  // namespace ordspec
