#pragma once

// Command-line driver: spectrum tables, mixing roots, wavefunction export
// and the validation suites. Kept apart from main() so tests can run it
// in-process against string streams.

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace monopole::cli {

/// Exit codes of every subcommand.
enum ExitCode { kOk = 0, kComputationError = 1, kConfigError = 2 };

/// Invalid flags, files or parameter combinations (exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Everything a run depends on. Unset optionals keep their defaults.
struct RunConfig {
  std::string command;
  std::string geometry = "flat";
  std::string potential = "none";
  std::string k = "0";
  std::optional<std::string> j;  // value or range "a..b"
  std::optional<double> alpha;
  std::optional<double> K_osc;
  double mass = 1;
  double R = 1;
  std::string n = "0";  // value or range "a..b"
  bool no_monopole = false;
  std::optional<std::string> channel;
  std::optional<double> energy;  // continuum or peculiar level
  std::string format = "table";
  std::optional<std::string> output;
  bool include_inadmissible = false;
  std::optional<std::string> grid;  // "r0:r1:n"
  std::string suite = "all";
  std::optional<std::string> report;

  /// One `key = value` line per field in a fixed order; unset optionals are
  /// omitted. The result reads back through --config to the same text.
  std::string serialize() const;
};

/// Inclusive integer range "a..b" or a single value; b < a is empty.
std::vector<int> parse_index_range(const std::string& text);

/// Runs the tool on `args` (program name excluded) and returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace monopole::cli
