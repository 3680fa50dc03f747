#include "ordspec/monitor.hpp"

#include <cmath>
#include <cstdint>
#include <exception>
#include <stdexcept>
#include <string>

#include "ordspec/error.hpp"

namespace ordspec {

namespace {

MonitorFrame evaluate_frame(std::span<const double> samples, const MonitorConfig& cfg,
                            std::size_t start) {
  MonitorFrame frame;
  frame.start_index = start;
  const auto window = samples.subspan(start, cfg.window);
  const PowerSpectrum ps = power_spectrum(window);
  if (ps.total_power() > 0.0) {
    AnalyzeOptions opts;
    opts.q = cfg.q;
    opts.direction = cfg.direction;
    frame.descriptors = analyze(ps, opts);
  }
  frame.local_energy = local_energy(samples, start + cfg.window - 1, cfg.effective_le_window());
  if (frame.descriptors) {
    frame.combined_cid = monitoring_value(frame.local_energy, frame.descriptors->cid);
    frame.combined_cod = monitoring_value(frame.local_energy, frame.descriptors->cod);
  }
  return frame;
}

void check_inputs(std::span<const double> samples, const MonitorConfig& cfg) {
  validate(cfg);
  validate_signal(samples);
  if (samples.size() < cfg.window) {
    throw DataError("signal length " + std::to_string(samples.size()) +
                    " is shorter than the monitor window " + std::to_string(cfg.window));
  }
}

}  // namespace

void validate(const MonitorConfig& cfg) {
  if (cfg.window < 4 || cfg.window % 2 != 0) {
    throw std::invalid_argument("monitor window must be an even integer >= 4, got " +
                                std::to_string(cfg.window));
  }
  if (cfg.step < 1) throw std::invalid_argument("monitor step must be >= 1");
  if (!(cfg.q > 0.0 && cfg.q <= 1.0)) {
    throw std::invalid_argument("energy quantile q must lie in (0, 1]");
  }
  const std::size_t le = cfg.effective_le_window();
  if (le < 2) throw std::invalid_argument("local-energy window must be >= 2");
  if (le > cfg.window) {
    throw std::invalid_argument("local-energy window (" + std::to_string(le) +
                                ") must not exceed the analysis window (" +
                                std::to_string(cfg.window) + ")");
  }
}

std::size_t frame_count(std::size_t signal_length, std::size_t window, std::size_t step) {
  if (step == 0) throw std::invalid_argument("step must be >= 1");
  if (signal_length < window) return 0;
  return (signal_length - window) / step + 1;
}

std::optional<double> monitoring_value(double le, double descriptor) {
  if (!(descriptor > 1.0 + kMonitorGuardEpsilon)) return std::nullopt;
  return std::log10(1.0 + le) / std::log10(descriptor);
}

double local_energy(std::span<const double> samples, std::size_t at, std::size_t le_window) {
  if (le_window < 1) throw std::invalid_argument("local-energy window must be >= 1");
  if (at >= samples.size()) throw std::invalid_argument("local-energy index past the signal end");
  if (at + 1 < le_window) {
    throw DataError("insufficient history for local energy at index " + std::to_string(at) +
                    " with window " + std::to_string(le_window));
  }
  const auto seg = samples.subspan(at + 1 - le_window, le_window);
  double mean = 0.0;
  for (double v : seg) mean += v;
  mean /= static_cast<double>(le_window);
  double ss = 0.0;
  for (double v : seg) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / static_cast<double>(le_window));
}

MonitorTrace sliding_descriptors_serial(std::span<const double> samples, const MonitorConfig& cfg) {
  check_inputs(samples, cfg);
  const std::size_t frames = frame_count(samples.size(), cfg.window, cfg.step);
  MonitorTrace trace;
  trace.frames.resize(frames);
  for (std::size_t f = 0; f < frames; ++f) {
    trace.frames[f] = evaluate_frame(samples, cfg, f * cfg.step);
  }
  return trace;
}

MonitorTrace sliding_descriptors(std::span<const double> samples, const MonitorConfig& cfg) {
  check_inputs(samples, cfg);
  const auto frames = static_cast<std::int64_t>(frame_count(samples.size(), cfg.window, cfg.step));
  MonitorTrace trace;
  trace.frames.resize(static_cast<std::size_t>(frames));
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t f = 0; f < frames; ++f) {
    const auto idx = static_cast<std::size_t>(f);
    try {
      trace.frames[idx] = evaluate_frame(samples, cfg, idx * cfg.step);
    } catch (...) {
#pragma omp critical(ordspec_monitor_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return trace;
}

}  // namespace ordspec
