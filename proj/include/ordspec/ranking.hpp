#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ordspec/spectrum.hpp"

namespace ordspec {

enum class RankDirection { descending, ascending };

// The permutation linking frequency-grid locations to power ranks.
//
// Both vectors hold 1-based values and are indexed 0-based:
//   rank_of_grid[k-1] = rank of grid point k   (1 = strongest when descending)
//   grid_of_rank[r-1] = grid point holding rank r
// The two are mutually inverse permutations of {1..n}.
struct RankPermutation {
  std::vector<std::size_t> rank_of_grid;
  std::vector<std::size_t> grid_of_rank;

  std::size_t size() const { return grid_of_rank.size(); }

  // Builds the pair from grid_of_rank alone. Throws std::invalid_argument if
  // the input is not a permutation of {1..n}.
  static RankPermutation from_grid_of_rank(std::vector<std::size_t> grid_of_rank);
};

// Ranks the spectrum values. Ties go to the lower grid index first, in both
// directions. Requires n >= 2.
RankPermutation rank_spectrum(const PowerSpectrum& spectrum,
                              RankDirection direction = RankDirection::descending);
RankPermutation rank_values(std::span<const double> values,
                            RankDirection direction = RankDirection::descending);

struct TruncationResult {
  std::size_t length = 0;  // L
  double q = 1.0;
  std::vector<std::size_t> retained_grid;  // grid_of_rank[0..L)
};

// Smallest L such that the L highest-ranked bins carry at least q of the
// total power. Cumulative sums use Kahan compensation and a plain >= test.
// Requires 0 < q <= 1 and positive total power.
TruncationResult truncate_by_energy(const PowerSpectrum& spectrum,
                                    const RankPermutation& perm, double q);

}  // namespace ordspec
