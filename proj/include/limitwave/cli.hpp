#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "limitwave/json_io.hpp"

namespace limitwave::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { kPass = 0, kCheckFailed = 1, kInputError = 2 };

struct RunConfig {
  std::string command;
  std::vector<std::string> args;

  std::string filter, bank, matrix, g, vector, basis, preset;
  std::optional<int> level, depth, J, K, radius;
  std::optional<double> box, step, r, probe_radius;
  std::uint64_t seed = 42;
  std::string quadrature = "simpson";
  std::map<std::string, double> tol;

  std::string out;
  std::string format = "json";

  /// Override from --tol.<name>, else the stated default.
  double tolerance(const std::string& name, double fallback) const;
};

struct Check {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct Report {
  std::string command;
  std::vector<std::string> args;
  std::vector<Check> checks;
  Json data = Json::object();
  double wall_time = 0.0;

  /// pass <=> residual <= tolerance (NaN fails).
  void add(std::string name, double residual, double tolerance);
  /// Records a stage that threw.
  void add_failure(std::string name, const std::string& what);
  bool all_pass() const;
  Json to_json(bool with_time = true) const;
  std::string to_csv() const;
};

/// Parses argv-style arguments (without the program name), dispatches, writes
/// the report and returns the exit code. Diagnostics go to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Executes an already parsed configuration.
Report execute(const RunConfig& cfg);

/// Preset directory: $LIMITWAVE_PRESET_DIR, else the bundled fixtures.
std::string preset_dir();

}  // namespace limitwave::cli
