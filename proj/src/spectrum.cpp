#include "ordspec/spectrum.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <string>

#include "ordspec/error.hpp"

namespace ordspec {

namespace {

// FFTW planning touches global state; execution with fftw_execute_dft_r2c on
// fresh arrays is thread-safe.
std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

void require_even_length(std::size_t length, std::size_t min_length) {
  if (length % 2 != 0) {
    throw DataError("signal length " + std::to_string(length) +
                    " is odd; truncate the last sample first");
  }
  if (length < min_length) {
    throw DataError("signal length " + std::to_string(length) + " is below the minimum of " +
                    std::to_string(min_length));
  }
}

double log_base_scale(LogBase base) {
  switch (base) {
    case LogBase::natural:
      return 1.0;
    case LogBase::two:
      return 1.0 / std::numbers::ln2;
    case LogBase::ten:
      return 1.0 / std::numbers::ln10;
  }
  return 1.0;
}

}  // namespace

void validate_signal(std::span<const double> samples) {
  if (samples.empty()) throw DataError("signal is empty");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!std::isfinite(samples[i])) {
      throw DataError("non-finite sample at index " + std::to_string(i));
    }
  }
}

double PowerSpectrum::grid_frequency(std::size_t k) const {
  return static_cast<double>(k) * std::numbers::pi / static_cast<double>(values.size());
}

double PowerSpectrum::total_power() const {
  double sum = 0.0;
  double c = 0.0;
  for (double v : values) {
    const double y = v - c;
    const double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
  return sum;
}

std::vector<std::complex<double>> dft_naive(std::span<const double> samples) {
  validate_signal(samples);
  require_even_length(samples.size(), 2);
  const std::size_t len = samples.size();
  std::vector<std::complex<double>> out(len);
  for (std::size_t k = 0; k < len; ++k) {
    double re = 0.0;
    double im = 0.0;
    for (std::size_t i = 0; i < len; ++i) {
      // Reduce i*k mod len first so the angle stays exact for large products.
      const std::size_t ik = (i * k) % len;
      const double angle = -2.0 * std::numbers::pi * static_cast<double>(ik) /
                           static_cast<double>(len);
      re += samples[i] * std::cos(angle);
      im += samples[i] * std::sin(angle);
    }
    out[k] = {re, im};
  }
  return out;
}

std::vector<std::complex<double>> dft_fast(std::span<const double> samples) {
  validate_signal(samples);
  require_even_length(samples.size(), 2);
  const std::size_t len = samples.size();
  const std::size_t half = len / 2 + 1;

  double* in = fftw_alloc_real(len);
  fftw_complex* spec = fftw_alloc_complex(half);
  fftw_plan plan;
  {
    std::lock_guard lock(fftw_planner_mutex());
    plan = fftw_plan_dft_r2c_1d(static_cast<int>(len), in, spec, FFTW_ESTIMATE);
  }
  std::copy(samples.begin(), samples.end(), in);
  fftw_execute(plan);

  std::vector<std::complex<double>> out(len);
  for (std::size_t k = 0; k < half; ++k) out[k] = {spec[k][0], spec[k][1]};
  for (std::size_t k = half; k < len; ++k) out[k] = std::conj(out[len - k]);

  {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }
  fftw_free(in);
  fftw_free(spec);
  return out;
}

PowerSpectrum power_spectrum(std::span<const double> samples) {
  validate_signal(samples);
  require_even_length(samples.size(), 4);
  const auto full = dft_fast(samples);
  PowerSpectrum ps;
  ps.values.resize(samples.size() / 2);
  for (std::size_t k = 0; k < ps.values.size(); ++k) ps.values[k] = std::norm(full[k]);
  return ps;
}

PowerSpectrum power_spectrum(const Signal& signal) { return power_spectrum(signal.samples); }

PowerSpectrum power_spectrum_naive(std::span<const double> samples) {
  validate_signal(samples);
  require_even_length(samples.size(), 4);
  const auto full = dft_naive(samples);
  PowerSpectrum ps;
  ps.values.resize(samples.size() / 2);
  for (std::size_t k = 0; k < ps.values.size(); ++k) ps.values[k] = std::norm(full[k]);
  return ps;
}

double spectral_entropy(std::span<const double> power, LogBase base) {
  if (power.empty()) throw NumericError("spectral entropy of an empty spectrum");
  double total = 0.0;
  for (double v : power) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw DataError("power spectrum values must be finite and non-negative");
    }
    total += v;
  }
  if (!(total > 0.0)) throw NumericError("spectral entropy undefined: total power is zero");

  double h = 0.0;
  for (double v : power) {
    if (v > 0.0) {
      const double p = v / total;
      h -= p * std::log(p);
    }
  }
  // Rounding can leave a tiny negative value for a single-line spectrum.
  if (h < 0.0) h = 0.0;
  return h * log_base_scale(base);
}

double spectral_entropy(const PowerSpectrum& spectrum, LogBase base) {
  return spectral_entropy(std::span<const double>(spectrum.values), base);
}

}  // namespace ordspec
