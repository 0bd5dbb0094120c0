#pragma once

// Config-driven front end. run() is a library function so the acceptance
// suite can call it in-process; main.cpp only parses flags.

#include <cohpoly/sequence.hpp>

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cohpoly::cli {

enum class ExitCode { Pass = 0, Fail = 1, ConfigError = 2 };

struct RunConfig {
  SequenceSpec sequence = SequenceSpec::canonical();
  std::optional<std::string> measure;
  std::map<std::string, double> measure_parameters;
  std::string command;
  std::optional<int> n_max;
  std::optional<double> tolerance;
  std::string output_dir = "cohpoly-out";
  std::uint64_t seed = 20240531;
  std::vector<double> x;           // amplitude / evaluation points
  std::optional<std::pair<int, int>> window;
  std::optional<int> order;        // Stieltjes order for cm-check
};

std::vector<std::string> command_names();

/// Parses the YAML config. Throws ConfigError with a readable message.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Flag overrides, applied after the file is read.
struct Overrides {
  std::optional<std::string> command;
  std::optional<int> n_max;
  std::optional<double> tolerance;
  std::optional<std::string> output_dir;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> measure;
};

void apply_overrides(RunConfig& config, const Overrides& o);

/// Checks command-specific requirements. Throws ConfigError.
void validate(const RunConfig& config);

/// Canonical YAML of the effective config; its FNV-1a hash tags every CSV.
std::string canonical_yaml(const RunConfig& config);
std::string config_hash(const RunConfig& config);

/// Executes the pipeline, writes CSV files and summary.json into
/// output_dir and a human-readable summary to out.
ExitCode run(const RunConfig& config, std::ostream& out);

const char* version();

}  // namespace cohpoly::cli
