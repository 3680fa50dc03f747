#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace ordspec {

// Evenly spaced real-valued samples. sample_rate_hz is informational only;
// nothing in the analysis depends on it.
struct Signal {
  std::vector<double> samples;
  std::optional<double> sample_rate_hz;
};

// Throws DataError if the samples are empty or contain NaN/Inf.
void validate_signal(std::span<const double> samples);

// First-half squared-modulus DFT of a length-2N signal.
//
// values[k] (0-based) is the power estimate on the normalized frequency grid
// point k*pi/N. The DC bin is included, the Nyquist bin is not.
struct PowerSpectrum {
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  double grid_frequency(std::size_t k) const;  // k*pi/N, 0-based k
  double total_power() const;
};

// Reference DFT, evaluated term by term:
//   X_k = sum_i s_i * exp(-j * 2*pi * i * k / (2N)),  k = 0..2N-1.
// O(N^2). Kept as the oracle for the FFT path.
std::vector<std::complex<double>> dft_naive(std::span<const double> samples);

// Full-length FFT (FFTW backed). Same convention and output length as
// dft_naive; the upper half is filled by conjugate symmetry.
std::vector<std::complex<double>> dft_fast(std::span<const double> samples);

// |X_k|^2 for k = 0..N-1 via the FFT path. Requires an even length >= 4.
PowerSpectrum power_spectrum(std::span<const double> samples);
PowerSpectrum power_spectrum(const Signal& signal);

// Same as power_spectrum but through dft_naive.
PowerSpectrum power_spectrum_naive(std::span<const double> samples);

enum class LogBase { natural, two, ten };

// Shannon entropy of the normalized spectrum, p_k = P_k / sum(P).
// Zero bins contribute 0. Natural log by default, so 0 <= H <= ln N.
// Throws NumericError when the total power is zero.
double spectral_entropy(const PowerSpectrum& spectrum, LogBase base = LogBase::natural);
double spectral_entropy(std::span<const double> power, LogBase base = LogBase::natural);

}  // namespace ordspec
