#pragma once

#include <limits>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "nsq/report.hpp"
#include "nsq/units.hpp"

namespace nsq::cli {

inline constexpr std::string_view kToolVersion = "nsq 1.0.0";

enum class Subcommand { Solve, Analytic, Compare, Hydrogen, Star, Sweep };
enum class OutputFormat { Json, Csv, Table };

std::string_view to_string(Subcommand s);
std::string_view to_string(OutputFormat f);

enum ExitCode : int { kSuccess = 0, kUsageError = 2, kNotConverged = 3 };

/// Bad flag, bad value or conflicting flags. The message names the flag.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  Subcommand subcommand = Subcommand::Solve;

  // Oscillator problems (solve, analytic, compare).
  std::string potential = "harmonic";
  std::string potential_file;
  double omega = 1.0;
  double mass = 1.0;
  std::string cutting = "identity";
  double a = kInfinity;
  std::string cutting_file;
  int dims = 1;
  std::optional<double> x_min;
  std::optional<double> x_max;
  int points = 2001;
  UnitMode units = UnitMode::Dimensionless;
  double hbar = PhysicalConstants::standard().hbar;
  int levels = 5;
  double rel_tol = 1e-8;
  int max_doublings = 6;

  // Hydrogen.
  std::optional<double> a_cm;
  std::optional<double> delta;
  int n = 1;
  std::optional<int> n_max;
  int z = 1;
  double alpha = PhysicalConstants::standard().fine_structure_alpha;
  std::optional<double> bethe_log_argument;
  double hartree_ev = PhysicalConstants::standard().hartree_energy();

  // Star and sweep; delta above doubles as the override.
  double radius_cm = 3e5;
  double neutrons = 1e57;
  double micro_length_cm = PhysicalConstants::standard().bohr_radius;
  std::string label = "neutron-star";
  std::string vary;
  std::vector<double> values;

  OutputFormat format = OutputFormat::Json;
  std::string output;
  /// Emit the canonical config JSON instead of running.
  bool print_config = false;

  static constexpr double kInfinity = std::numeric_limits<double>::infinity();
};

/// Parses and validates argv (argv[0] is the program name). A `--config`
/// JSON file supplies the same keys as the long flags; flags given on the
/// command line override it. Throws UsageError.
RunConfig parse_args(const std::vector<std::string>& argv);

/// Builds a config from a JSON object with flag-named keys. Throws UsageError.
RunConfig config_from_json(const io::Json& j);

/// Canonical JSON form; feeding it back through --config reproduces the run.
io::Json config_to_json(const RunConfig& config);

/// Runs the workflow, writing the artifact to `out` (or config.output) and
/// diagnostics to `err`. Returns the process exit status.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_args + run with all errors mapped to exit codes.
int main(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace nsq::cli
