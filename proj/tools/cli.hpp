#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hybridnoise::cli {

enum class Command { pdf, cdf, truncate, entropy, sample, sweep, report };

/// Effective configuration of one invocation after merging defaults,
/// config-file values, and flags (flags win). lambdas/orders hold one entry
/// for scalar commands and the full grid for sweep.
struct RunConfig {
  Command command = Command::pdf;
  std::vector<double> lambdas;
  double mean = 0.0;
  double sd = 1.0;
  std::optional<int> order;  // scalar commands; defaults to the minimal order
  std::vector<int> orders;   // sweep grid
  double epsilon = 1e-12;
  std::optional<double> domain_lo;
  std::optional<double> domain_hi;
  int grid_points = 4096;
  std::uint64_t seed = 1;
  long long count = 100000;
  std::string output_path = "-";
  std::string format;  // "csv" or "json"
  bool override_tail_check = false;
};

/// Carries every validation problem found, joined into one message.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::vector<std::string>& problems);
  std::vector<std::string> problems;
};

/// Raised by parse_args when --help is requested; carries the help text.
class HelpRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses argv (without the program name) into a validated RunConfig.
/// Precedence: flags over --config file values over defaults. Throws
/// ValidationError listing all problems, not just the first.
RunConfig parse_args(const std::vector<std::string>& argv);

/// Executes the command, writing the artifact to output_path ("-" means
/// stdout). Returns 0; numerical and validation failures are reported by
/// exception (main maps them to exit codes 2 and 1).
int run(const RunConfig& config);

}  // namespace hybridnoise::cli
