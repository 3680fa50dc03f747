#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ordspec/nulldist.hpp"
#include "ordspec/ranking.hpp"
#include "ordspec/spectrum.hpp"
#include "ordspec/stats.hpp"

namespace ordspec::cli {

enum class Command { analyze, monitor, nulldist, compare };
enum class OutputFormat { csv, json };

// Exit codes of the ordspec tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitNumeric = 3;

struct RunConfig {
  Command command = Command::analyze;
  std::filesystem::path input;             // analyze/monitor: signal file; compare: root dir
  std::optional<std::filesystem::path> output;  // stdout when absent
  OutputFormat format = OutputFormat::json;

  // analysis
  double q = 1.0;
  RankDirection direction = RankDirection::descending;
  LogBase log_base = LogBase::natural;
  std::size_t channel = 0;
  bool demean = false;
  bool eigen = false;

  // monitor
  std::size_t window = 1024;
  std::size_t step = 128;
  std::optional<std::size_t> le_window;

  // nulldist
  std::size_t n = 64;
  std::uint64_t trials = 640000;
  std::uint64_t seed = 0;
  Descriptor descriptor = Descriptor::cid;
  bool exact = false;
  std::optional<std::filesystem::path> histogram_output;
  std::optional<std::filesystem::path> qq_output;

  // compare
  Metric metric = Metric::cod;

  std::optional<int> threads;
};

// Thrown for malformed command lines and invalid flag combinations.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parses argv into a validated RunConfig. Throws UsageError (message includes
// the usage text). Help requests are signalled by returning nullopt after
// printing to `out`.
std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::ostream& out);

// Flag validation shared by parse_args and programmatic callers.
void validate(const RunConfig& cfg);

// Executes the command. Diagnostics go to `err`, results to cfg.output or `out`.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// parse_args + run with exit-code mapping.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ordspec::cli
