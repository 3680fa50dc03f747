#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "ordspec/ranking.hpp"
#include "ordspec/spectrum.hpp"

namespace ordspec {

// Circular difference over the first L ranked grid locations g = grid_of_rank:
//   (1/L) * ( |g[L]-g[1]| + sum_{i<L} |g[i]-g[i+1]| )
// Returns 0 for L == 1. Throws std::invalid_argument unless 1 <= L <= n.
double circular_difference(const RankPermutation& perm, std::size_t length);
double circular_difference(const RankPermutation& perm);

// Correspondence difference over the first L ranks:
//   (1/L) * sum_{i<=L} |g[i] - i|
// The rank label i is compared against the raw grid index in [1, n], also
// when L < n.
double correspondence_difference(const RankPermutation& perm, std::size_t length);
double correspondence_difference(const RankPermutation& perm);

// Same quantities on a raw 1-based grid_of_rank sequence. No permutation
// check; used by the null-distribution kernels on their scratch buffers.
double circular_difference_raw(std::span<const std::size_t> grid_of_rank);
double correspondence_difference_raw(std::span<const std::size_t> grid_of_rank);

// M[i][j] = |g[i] - g[j]|, stored row-major.
class DistanceMatrix {
 public:
  explicit DistanceMatrix(const RankPermutation& perm);

  std::size_t size() const { return n_; }
  std::size_t operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  std::span<const std::size_t> row(std::size_t i) const {
    return {entries_.data() + i * n_, n_};
  }
  std::size_t trace() const;

 private:
  std::size_t n_;
  std::vector<std::size_t> entries_;
};

inline DistanceMatrix distance_matrix(const RankPermutation& perm) { return DistanceMatrix(perm); }

// Circular difference read off the matrix: first subdiagonal plus the
// (n,1) corner, divided by n. Agrees with circular_difference(perm).
double circular_difference_from_matrix(const DistanceMatrix& m);

struct EigenSummary {
  std::vector<double> eigenvalues;   // descending
  std::vector<double> partial_sums;  // running sums in the same order
};

// Symmetric eigendecomposition (values only). NumericError if the solver
// does not converge.
EigenSummary distance_matrix_eigenvalues(const DistanceMatrix& m);

struct DescriptorSet {
  double cid = 0.0;
  double cod = 0.0;
  double spectral_entropy = 0.0;  // always over the full spectrum
  std::size_t length_used = 0;    // L
  double q_used = 1.0;
};

struct AnalyzeOptions {
  // Energy quantile for truncation. nullopt runs the untruncated descriptors
  // (L = N) and reports q_used = 1.
  std::optional<double> q = 1.0;
  RankDirection direction = RankDirection::descending;
  LogBase entropy_base = LogBase::natural;
};

// power_spectrum -> rank_spectrum -> truncate_by_energy -> both descriptors.
DescriptorSet analyze(const PowerSpectrum& spectrum, const AnalyzeOptions& options = {});
DescriptorSet analyze(std::span<const double> samples, const AnalyzeOptions& options = {});
DescriptorSet analyze(const Signal& signal, const AnalyzeOptions& options = {});

}  // namespace ordspec
