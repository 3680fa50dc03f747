#include "ordspec/cli.hpp"

#include <omp.h>

#include <CLI11.hpp>

#include <algorithm>
#include <exception>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>

#include "ordspec/descriptors.hpp"
#include "ordspec/error.hpp"
#include "ordspec/export.hpp"
#include "ordspec/monitor.hpp"
#include "ordspec/signal_io.hpp"

namespace ordspec::cli {

namespace fs = std::filesystem;

namespace {

// Output goes to a file when --output is set, otherwise to `fallback`.
class Sink {
 public:
  Sink(const std::optional<fs::path>& path, std::ostream& fallback) : stream_(&fallback) {
    if (path) {
      file_.open(*path, std::ios::binary);
      if (!file_) throw DataError("cannot write " + path->string());
      stream_ = &file_;
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

void write_json(std::ostream& os, const nlohmann::ordered_json& j) { os << j.dump(2) << '\n'; }

// Library routines reject odd lengths; the CLI drops the last sample instead.
Signal load_signal(const fs::path& path, const RunConfig& cfg, std::ostream& err) {
  Signal s = read_signal(path, cfg.channel);
  if (s.samples.size() % 2 != 0) {
    err << "warning: " << path.string() << " has odd length " << s.samples.size()
        << "; dropping the last sample\n";
    s.samples.pop_back();
  }
  if (cfg.demean && !s.samples.empty()) {
    const double mean = std::accumulate(s.samples.begin(), s.samples.end(), 0.0) /
                        static_cast<double>(s.samples.size());
    for (double& v : s.samples) v -= mean;
  }
  return s;
}

AnalyzeOptions analyze_options(const RunConfig& cfg) {
  AnalyzeOptions opts;
  opts.q = cfg.q;
  opts.direction = cfg.direction;
  opts.entropy_base = cfg.log_base;
  return opts;
}

int run_analyze(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Signal signal = load_signal(cfg.input, cfg, err);
  const PowerSpectrum ps = power_spectrum(signal);
  const DescriptorSet d = analyze(ps, analyze_options(cfg));

  Sink sink(cfg.output, out);
  if (cfg.format == OutputFormat::json) {
    auto j = to_json(d);
    j["N"] = ps.size();
    if (cfg.eigen) {
      const auto perm = rank_spectrum(ps, cfg.direction);
      j["distance_matrix"] = to_json(distance_matrix_eigenvalues(distance_matrix(perm)));
    }
    write_json(sink.get(), j);
  } else {
    write_descriptor_csv(sink.get(), d);
    if (cfg.eigen) {
      const auto perm = rank_spectrum(ps, cfg.direction);
      const auto eig = distance_matrix_eigenvalues(distance_matrix(perm));
      sink.get() << "\nindex,eigenvalue,partial_sum\n";
      for (std::size_t i = 0; i < eig.eigenvalues.size(); ++i) {
        sink.get() << i + 1 << ',' << format_double(eig.eigenvalues[i]) << ','
                   << format_double(eig.partial_sums[i]) << '\n';
      }
    }
  }
  return kExitOk;
}

int run_monitor(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Signal signal = load_signal(cfg.input, cfg, err);
  MonitorConfig mc;
  mc.window = cfg.window;
  mc.step = cfg.step;
  mc.q = cfg.q;
  mc.le_window = cfg.le_window;
  mc.direction = cfg.direction;
  const MonitorTrace trace = sliding_descriptors(signal.samples, mc);

  Sink sink(cfg.output, out);
  if (cfg.format == OutputFormat::json) {
    write_json(sink.get(), to_json(trace));
  } else {
    write_trace_csv(sink.get(), trace);
  }
  return kExitOk;
}

int run_nulldist(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  std::vector<double> values;
  NullDistributionSummary summary;
  if (cfg.exact) {
    values = enumerate_null_values(cfg.n, cfg.descriptor);
    summary.mode = NullMode::exact;
  } else {
    values = sample_null_values(cfg.n, cfg.trials, cfg.seed, cfg.descriptor);
    summary.mode = NullMode::monte_carlo;
    summary.seed = cfg.seed;
  }
  summary.descriptor = cfg.descriptor;
  summary.n = cfg.n;
  summary.trials = values.size();
  summary.moments = compute_moments(values);
  summary.histogram = freedman_diaconis_histogram(values);

  {
    Sink sink(cfg.output, out);
    write_json(sink.get(), to_json(summary));
  }
  if (cfg.histogram_output) {
    Sink sink(cfg.histogram_output, out);
    write_histogram_csv(sink.get(), summary.histogram);
  }
  if (cfg.qq_output) {
    Sink sink(cfg.qq_output, out);
    constexpr std::size_t kQQPoints = 1000;
    const auto qq = qq_points(values, kQQPoints);
    write_qq_csv(sink.get(), qq);
  }
  return kExitOk;
}

int run_compare(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (!fs::is_directory(cfg.input)) {
    throw UsageError("compare expects a directory with one subdirectory per group: " +
                     cfg.input.string());
  }
  struct Job {
    std::string group;
    fs::path file;
  };
  std::vector<Job> jobs;
  std::vector<std::string> group_names;
  for (const auto& entry : fs::directory_iterator(cfg.input)) {
    if (!entry.is_directory()) continue;
    group_names.push_back(entry.path().filename().string());
  }
  std::sort(group_names.begin(), group_names.end());
  if (group_names.size() < 2) {
    throw UsageError("compare needs at least 2 group directories under " + cfg.input.string() +
                     ", found " + std::to_string(group_names.size()));
  }
  for (const auto& g : group_names) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(cfg.input / g)) {
      if (entry.is_regular_file()) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (auto& f : files) jobs.push_back({g, std::move(f)});
  }

  std::vector<DescriptorSet> results(jobs.size());
  std::vector<std::string> warnings(jobs.size());
  std::exception_ptr failure;
  const auto count = static_cast<std::int64_t>(jobs.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < count; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    try {
      std::ostringstream local_err;
      const Signal s = load_signal(jobs[idx].file, cfg, local_err);
      results[idx] = analyze(s, analyze_options(cfg));
      warnings[idx] = local_err.str();
    } catch (const std::exception& e) {
#pragma omp critical(ordspec_compare_failure)
      if (!failure) failure = std::make_exception_ptr(DataError(jobs[idx].file.string() + ": " + e.what()));
    }
  }
  if (failure) std::rethrow_exception(failure);
  for (const auto& w : warnings) err << w;

  std::map<std::string, std::vector<DescriptorSet>> groups;
  for (const auto& g : group_names) groups[g];
  for (std::size_t i = 0; i < jobs.size(); ++i) groups[jobs[i].group].push_back(results[i]);
  for (const auto& [name, sets] : groups) {
    if (sets.size() < 2) {
      throw UsageError("group '" + name + "' needs at least 2 signal files, found " +
                       std::to_string(sets.size()));
    }
  }

  const GroupComparison table = group_compare(groups, cfg.metric);
  Sink sink(cfg.output, out);
  if (cfg.format == OutputFormat::json) {
    write_json(sink.get(), to_json(table, cfg.metric));
  } else {
    write_comparison_csv(sink.get(), table);
  }
  return kExitOk;
}

}  // namespace

void validate(const RunConfig& cfg) {
  if (!(cfg.q > 0.0 && cfg.q <= 1.0)) throw UsageError("--q must lie in (0, 1]");
  if (cfg.threads && *cfg.threads < 1) throw UsageError("--threads must be >= 1");
  switch (cfg.command) {
    case Command::analyze:
      break;
    case Command::monitor:
      if (cfg.window < 4 || cfg.window % 2 != 0) {
        throw UsageError("--window must be an even integer >= 4");
      }
      if (cfg.step < 1) throw UsageError("--step must be >= 1");
      if (cfg.le_window && (*cfg.le_window < 2 || *cfg.le_window > cfg.window)) {
        throw UsageError("--le-window must lie in [2, window]");
      }
      if (cfg.eigen) throw UsageError("--eigen applies to analyze only");
      break;
    case Command::nulldist:
      if (cfg.n < 2) throw UsageError("--n must be >= 2");
      if (cfg.exact && cfg.n > kMaxExactN) {
        throw UsageError("--exact supports n <= " + std::to_string(kMaxExactN));
      }
      if (!cfg.exact && cfg.trials < 1) throw UsageError("--trials must be >= 1");
      if (cfg.qq_output && !cfg.exact && cfg.trials < 100) {
        throw UsageError("--qq needs at least 100 trials");
      }
      if (cfg.format != OutputFormat::json) {
        throw UsageError("nulldist writes a JSON summary; use --histogram for CSV");
      }
      break;
    case Command::compare:
      if (cfg.eigen) throw UsageError("--eigen applies to analyze only");
      break;
  }
}

std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::ostream& out) {
  RunConfig cfg;
  CLI::App app{"Ordinal power-spectrum descriptors: analysis, monitoring, null distributions"};
  app.require_subcommand(1);

  const std::map<std::string, RankDirection> directions{{"desc", RankDirection::descending},
                                                        {"asc", RankDirection::ascending}};
  const std::map<std::string, OutputFormat> formats{{"csv", OutputFormat::csv},
                                                    {"json", OutputFormat::json}};
  const std::map<std::string, LogBase> bases{
      {"e", LogBase::natural}, {"2", LogBase::two}, {"10", LogBase::ten}};
  std::string descriptor_name{to_string(cfg.descriptor)};
  std::string metric_name{to_string(cfg.metric)};

  std::string output;
  std::string histogram;
  std::string qq;
  std::size_t le_window = 0;
  int threads = 0;
  bool format_set = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--output,-o", output, "Output file (default: stdout)");
    sub->add_option("--threads", threads, "OpenMP worker count (default: runtime setting)");
  };
  auto add_analysis = [&](CLI::App* sub) {
    sub->add_option("--q", cfg.q, "Energy quantile for truncation, in (0,1]")
        ->capture_default_str();
    sub->add_option("--rank-direction", cfg.direction, "Ranking direction {desc|asc}")
        ->transform(CLI::CheckedTransformer(directions, CLI::ignore_case));
    sub->add_option("--log-base", cfg.log_base, "Entropy log base {e|2|10}")
        ->transform(CLI::CheckedTransformer(bases));
    sub->add_option("--channel", cfg.channel, "WAV channel index")->capture_default_str();
    sub->add_flag("--demean", cfg.demean, "Subtract the signal mean before the transform");
    sub->add_option_function<OutputFormat>(
           "--format",
           [&](const OutputFormat& f) {
             cfg.format = f;
             format_set = true;
           },
           "Output format {csv|json}")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  };

  auto* analyze_cmd = app.add_subcommand("analyze", "Descriptors of one signal");
  analyze_cmd->add_option("input", cfg.input, "Signal file (.csv or .wav)")->required();
  add_analysis(analyze_cmd);
  analyze_cmd->add_flag("--eigen", cfg.eigen, "Also report distance-matrix eigenvalues");
  add_common(analyze_cmd);

  auto* monitor_cmd = app.add_subcommand("monitor", "Sliding-window descriptor trace");
  monitor_cmd->add_option("input", cfg.input, "Signal file (.csv or .wav)")->required();
  add_analysis(monitor_cmd);
  monitor_cmd->add_option("--window", cfg.window, "Window length in samples (even)")
      ->capture_default_str();
  monitor_cmd->add_option("--step", cfg.step, "Step in samples")->capture_default_str();
  monitor_cmd->add_option("--le-window", le_window,
                          "Local-energy window in samples (default: --window)");
  add_common(monitor_cmd);

  auto* null_cmd = app.add_subcommand("nulldist", "Descriptor distribution over random permutations");
  null_cmd->add_option("--n", cfg.n, "Permutation size")->capture_default_str();
  null_cmd->add_option("--trials", cfg.trials, "Monte-Carlo trials")->capture_default_str();
  null_cmd->add_option("--seed", cfg.seed, "PRNG seed")->capture_default_str();
  null_cmd->add_option("--descriptor", descriptor_name, "{cid|cod}")
      ->check(CLI::IsMember({"cid", "cod"}))
      ->capture_default_str();
  null_cmd->add_flag("--exact", cfg.exact, "Enumerate all n! permutations instead of sampling");
  null_cmd->add_option("--histogram", histogram, "Histogram CSV output path");
  null_cmd->add_option("--qq", qq, "QQ-plot CSV output path");
  null_cmd->add_option_function<OutputFormat>(
              "--format",
              [&](const OutputFormat& f) {
                cfg.format = f;
                format_set = true;
              },
              "Summary format (json)")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  add_common(null_cmd);

  auto* compare_cmd = app.add_subcommand("compare", "Pairwise rank-sum tests between groups");
  compare_cmd->add_option("input", cfg.input, "Root directory, one subdirectory per group")
      ->required();
  compare_cmd->add_option("--metric", metric_name, "{cid|cod|entropy}")
      ->check(CLI::IsMember({"cid", "cod", "entropy"}))
      ->capture_default_str();
  add_analysis(compare_cmd);
  add_common(compare_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw UsageError(std::string(e.what()) + "\n\n" + app.help());
  }

  if (*analyze_cmd) cfg.command = Command::analyze;
  if (*monitor_cmd) cfg.command = Command::monitor;
  if (*null_cmd) cfg.command = Command::nulldist;
  if (*compare_cmd) cfg.command = Command::compare;

  if (!format_set) {
    cfg.format = cfg.command == Command::monitor ? OutputFormat::csv : OutputFormat::json;
  }
  cfg.descriptor = descriptor_from_string(descriptor_name);
  cfg.metric = metric_from_string(metric_name);
  if (!output.empty()) cfg.output = output;
  if (!histogram.empty()) cfg.histogram_output = histogram;
  if (!qq.empty()) cfg.qq_output = qq;
  if (le_window != 0) cfg.le_window = le_window;
  if (threads != 0) cfg.threads = threads;

  validate(cfg);
  return cfg;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    validate(cfg);
    if (cfg.threads) omp_set_num_threads(*cfg.threads);
    switch (cfg.command) {
      case Command::analyze:
        return run_analyze(cfg, out, err);
      case Command::monitor:
        return run_monitor(cfg, out, err);
      case Command::nulldist:
        return run_nulldist(cfg, out, err);
      case Command::compare:
        return run_compare(cfg, out, err);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::optional<RunConfig> cfg;
  try {
    cfg = parse_args(argc, argv, out);
  } catch (const UsageError& e) {
    err << e.what() << '\n';
    return kExitUsage;
  }
  if (!cfg) return kExitOk;
  return run(*cfg, out, err);
}

}  // namespace ordspec::cli
