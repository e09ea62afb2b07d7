#pragma once

// Scenario runner behind the command-line tool. Each scenario writes its
// tables, plots and a JSON summary into one directory plus manifest.json.

#include <exception>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "slowsound/config.hpp"
#include "slowsound/io.hpp"

namespace slowsound::scenarios {

/// spectrum, decay, couplings, susceptibility, dispersion, groupvel,
/// eigenstates, pulse, validate.
const std::vector<std::string>& names();

struct RunRequest {
  std::string scenario;
  config::RunConfig config;
  std::filesystem::path out_dir;
  io::Formats formats;
  unsigned threads = 1;
  std::string config_path;             ///< recorded in the manifest
  std::vector<std::string> overrides;  ///< recorded in the manifest
};

struct RunResult {
  int exit_code = 0;  ///< 0, or 4 when validate finds a failing criterion
  nlohmann::json summary;
  std::vector<std::string> files;
  std::vector<std::string> report_lines;  ///< human-readable table (validate)
};

/// Runs a scenario. Throws ConfigError for an unknown name and propagates
/// library errors; in both cases no files from this run are left behind.
RunResult run(const RunRequest& request);

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitValidation = 4;

/// Exit code for an exception escaping run().
int exit_code_for(const std::exception& e);
/// Structured error document: type, message and error-specific details.
nlohmann::json error_report(const std::exception& e);

}  // namespace slowsound::scenarios
