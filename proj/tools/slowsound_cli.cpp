// Command-line front end: runs one scenario and writes its artifacts.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "slowsound/config.hpp"
#include "slowsound/errors.hpp"
#include "slowsound/io.hpp"
#include "slowsound/parallel.hpp"
#include "slowsound/scenarios.hpp"

namespace ss = slowsound;

int main(int argc, char** argv) {
  CLI::App app{"Slow sound in a dark-soliton gas: scenario runner"};
  app.set_version_flag("--version", std::string(SLOWSOUND_VERSION));

  std::string scenario;
  std::string config_path;
  std::string out_dir;
  std::string formats = "csv,json";
  std::vector<std::string> overrides;
  std::string coupling_mode;
  std::string delta_mode;
  unsigned threads = ss::parallel::default_threads();
  bool print_config = false;

  app.add_option("scenario", scenario, "Scenario to run")
      ->check(CLI::IsMember(ss::scenarios::names()));
  app.add_option("--config", config_path, "Config file (key = value, '#' comments)")
      ->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "Output directory (default out/<scenario>)");
  app.add_option("--format", formats, "Comma-separated subset of csv,json,svg");
  app.add_option("--set", overrides, "Override a config key, key=value (repeatable)");
  app.add_option("--coupling-mode", coupling_mode, "closed | quadrature")
      ->check(CLI::IsMember({"closed", "quadrature"}));
  app.add_option("--delta-mode", delta_mode, "track | fixed")
      ->check(CLI::IsMember({"track", "fixed"}));
  app.add_option("--threads", threads, "Worker threads for sweeps")->check(CLI::PositiveNumber);
  app.add_flag("--print-config", print_config, "Print an annotated config with all defaults");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : ss::scenarios::kExitConfig;
  }
  if (print_config) {
    std::cout << ss::config::annotated_defaults();
    return 0;
  }
  if (scenario.empty()) {
    std::cerr << app.help() << "\nerror: a scenario name is required\n";
    return ss::scenarios::kExitConfig;
  }

  try {
    ss::config::KeyValues kv;
    if (!config_path.empty()) kv = ss::config::parse_file(config_path);
    for (const auto& o : overrides) ss::config::apply_override(kv, o);
    if (!coupling_mode.empty()) kv["coupling_mode"] = coupling_mode;
    if (!delta_mode.empty()) kv["delta_mode"] = delta_mode;

    ss::scenarios::RunRequest rq;
    rq.scenario = scenario;
    rq.config = ss::config::resolve(kv);
    rq.out_dir = out_dir.empty() ? "out/" + scenario : out_dir;
    rq.formats = ss::io::parse_formats(formats);
    rq.threads = threads;
    rq.config_path = config_path;
    rq.overrides = overrides;

    const auto result = ss::scenarios::run(rq);
    for (const auto& line : result.report_lines) std::cout << line << '\n';
    if (scenario != "validate") std::cout << result.summary.dump(2) << '\n';
    std::cout << "wrote " << result.files.size() << " file(s) to " << rq.out_dir.string() << '\n';
    return result.exit_code;
  } catch (const std::exception& e) {
    std::cerr << ss::scenarios::error_report(e).dump(2) << '\n';
    return ss::scenarios::exit_code_for(e);
  }
}
