#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "ordspec/descriptors.hpp"

namespace ordspec {

struct MonitorConfig {
  std::size_t window = 1024;  // even, >= 4
  std::size_t step = 128;     // >= 1
  double q = 1.0;             // (0, 1]
  std::optional<std::size_t> le_window;  // defaults to window
  RankDirection direction = RankDirection::descending;

  std::size_t effective_le_window() const { return le_window.value_or(window); }
};

// Throws std::invalid_argument on an invalid configuration.
void validate(const MonitorConfig& cfg);

// floor((T - window) / step) + 1, or 0 when T < window.
std::size_t frame_count(std::size_t signal_length, std::size_t window, std::size_t step);

// Values for an undefined monitoring ratio use nullopt.
inline constexpr double kMonitorGuardEpsilon = 1e-9;

// log10(1 + le) / log10(descriptor), undefined when descriptor <= 1 + 1e-9.
std::optional<double> monitoring_value(double local_energy, double descriptor);

// Population standard deviation of samples[at - le_window + 1 .. at].
double local_energy(std::span<const double> samples, std::size_t at, std::size_t le_window);

struct MonitorFrame {
  std::size_t start_index = 0;
  // nullopt when the window carries no power at all (e.g. digital silence).
  std::optional<DescriptorSet> descriptors;
  double local_energy = 0.0;
  std::optional<double> combined_cid;
  std::optional<double> combined_cod;
};

struct MonitorTrace {
  std::vector<MonitorFrame> frames;

  std::size_t size() const { return frames.size(); }
};

// Frame f covers samples [f*step, f*step + window). Local energy is taken
// over the le_window samples ending at the frame's last sample, so
// le_window must not exceed window.
MonitorTrace sliding_descriptors(std::span<const double> samples, const MonitorConfig& cfg);
// Serial reference; identical output.
MonitorTrace sliding_descriptors_serial(std::span<const double> samples, const MonitorConfig& cfg);

}  // namespace ordspec
