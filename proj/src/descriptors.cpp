#include "ordspec/descriptors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <string>

#include "ordspec/error.hpp"

namespace ordspec {

namespace {

inline std::size_t abs_diff(std::size_t a, std::size_t b) { return a > b ? a - b : b - a; }

void check_length(const RankPermutation& perm, std::size_t length) {
  if (length < 1 || length > perm.size()) {
    throw std::invalid_argument("descriptor length L=" + std::to_string(length) +
                                " outside [1, " + std::to_string(perm.size()) + "]");
  }
}

}  // namespace

double circular_difference_raw(std::span<const std::size_t> g) {
  const std::size_t len = g.size();
  if (len <= 1) return 0.0;
  std::size_t total = abs_diff(g[len - 1], g[0]);
  for (std::size_t i = 0; i + 1 < len; ++i) total += abs_diff(g[i], g[i + 1]);
  return static_cast<double>(total) / static_cast<double>(len);
}

double correspondence_difference_raw(std::span<const std::size_t> g) {
  const std::size_t len = g.size();
  if (len == 0) return 0.0;
  std::size_t total = 0;
  for (std::size_t i = 0; i < len; ++i) total += abs_diff(g[i], i + 1);
  return static_cast<double>(total) / static_cast<double>(len);
}

double circular_difference(const RankPermutation& perm, std::size_t length) {
  check_length(perm, length);
  return circular_difference_raw(std::span(perm.grid_of_rank).first(length));
}

double circular_difference(const RankPermutation& perm) {
  return circular_difference(perm, perm.size());
}

double correspondence_difference(const RankPermutation& perm, std::size_t length) {
  check_length(perm, length);
  return correspondence_difference_raw(std::span(perm.grid_of_rank).first(length));
}

double correspondence_difference(const RankPermutation& perm) {
  return correspondence_difference(perm, perm.size());
}

DistanceMatrix::DistanceMatrix(const RankPermutation& perm)
    : n_(perm.size()), entries_(perm.size() * perm.size()) {
  const auto& g = perm.grid_of_rank;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i; j < n_; ++j) {
      const std::size_t d = abs_diff(g[i], g[j]);
      entries_[i * n_ + j] = d;
      entries_[j * n_ + i] = d;
    }
  }
}

std::size_t DistanceMatrix::trace() const {
  std::size_t t = 0;
  for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

double circular_difference_from_matrix(const DistanceMatrix& m) {
  const std::size_t n = m.size();
  if (n <= 1) return 0.0;
  std::size_t total = m(n - 1, 0);
  for (std::size_t i = 0; i + 1 < n; ++i) total += m(i + 1, i);
  return static_cast<double>(total) / static_cast<double>(n);
}

EigenSummary distance_matrix_eigenvalues(const DistanceMatrix& m) {
  const auto n = static_cast<Eigen::Index>(m.size());
  Eigen::MatrixXd dense(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      dense(i, j) = static_cast<double>(m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericError("symmetric eigensolver did not converge (n=" + std::to_string(m.size()) + ")");
  }

  EigenSummary summary;
  const auto& ev = solver.eigenvalues();
  summary.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  std::sort(summary.eigenvalues.begin(), summary.eigenvalues.end(), std::greater<>());
  summary.partial_sums.resize(summary.eigenvalues.size());
  double running = 0.0;
  for (std::size_t i = 0; i < summary.eigenvalues.size(); ++i) {
    running += summary.eigenvalues[i];
    summary.partial_sums[i] = running;
  }
  return summary;
}

DescriptorSet analyze(const PowerSpectrum& spectrum, const AnalyzeOptions& options) {
  DescriptorSet out;
  out.spectral_entropy = spectral_entropy(spectrum, options.entropy_base);

  const RankPermutation perm = rank_spectrum(spectrum, options.direction);
  if (options.q) {
    out.length_used = truncate_by_energy(spectrum, perm, *options.q).length;
    out.q_used = *options.q;
  } else {
    out.length_used = perm.size();
    out.q_used = 1.0;
  }
  out.cid = circular_difference(perm, out.length_used);
  out.cod = correspondence_difference(perm, out.length_used);
  return out;
}

DescriptorSet analyze(std::span<const double> samples, const AnalyzeOptions& options) {
  if (options.q && !(*options.q > 0.0 && *options.q <= 1.0)) {
    throw std::invalid_argument("energy quantile q must lie in (0, 1]");
  }
  return analyze(power_spectrum(samples), options);
}

DescriptorSet analyze(const Signal& signal, const AnalyzeOptions& options) {
  return analyze(std::span<const double>(signal.samples), options);
}

}  // namespace ordspec
