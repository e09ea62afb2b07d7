#pragma once

// Run configuration: "key = value" files with '#' comments, plus
// command-line overrides. Every key has a default; unknown keys are errors.

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "slowsound/bloch.hpp"
#include "slowsound/coupling.hpp"
#include "slowsound/decay.hpp"
#include "slowsound/gpe.hpp"
#include "slowsound/params.hpp"

namespace slowsound::config {

using KeyValues = std::map<std::string, std::string>;

/// Parses config text; `source` names the input in error messages.
KeyValues parse_text(std::string_view text, std::string_view source = "<config>");
KeyValues parse_file(const std::filesystem::path& path);
/// Applies one "key=value" override.
void apply_override(KeyValues& kv, std::string_view assignment);

struct RunConfig {
  params::ReducedParams params;
  std::optional<params::PhysicalConfig> physical;  ///< set when given in SI units
  params::UnitScales units;  ///< scales for physical output (reference when unset)

  coupling::CouplingMode coupling_mode = coupling::CouplingMode::closed;
  bloch::DeltaMode delta_mode = bloch::DeltaMode::track;

  // Drive and detuning sweep, in units of gamma0.
  double control_rabi = 2.0;
  std::vector<double> control_list{0.2, 1.0, 2.0, 3.0};
  std::vector<double> compare_coupling_ratios{1.1, 1.85};
  double sweep_half_width = 10.0;
  double sweep_steps_per_gamma = 50.0;

  // g12/g11 sweeps (spectrum, decay).
  double ratio_min = 0.9;
  double ratio_max = 1.9;
  std::size_t ratio_points = 201;

  // Coupling figure.
  double k_min = 0.02;
  double k_max = 3.0;
  std::size_t k_points = 300;

  decay::DecayConfig decay;
  decay::GridOptions cascade;
  std::vector<double> cascade_times{0.5, 1.0, 3.0};  ///< units of 1/gamma1

  // Probe pulse; bandwidth as a fraction of the transparency width.
  double pulse_medium_length = 100.0;
  double pulse_bandwidth_fraction = 0.1;
  std::size_t pulse_points = 8192;

  gpe::SolverOptions gpe{.allow_partial = true};
  int gpe_states = 3;

  nlohmann::json to_json() const;
};

/// Resolves key/value pairs into a validated configuration. Bad keys or
/// values raise ConfigError; physically invalid parameters ValidationError.
RunConfig resolve(const KeyValues& kv);

struct KeyInfo {
  std::string key;
  std::string default_value;
  std::string help;
};
/// Every accepted key with its default, in documentation order.
const std::vector<KeyInfo>& schema();
/// A complete annotated config file holding the defaults.
std::string annotated_defaults();

}  // namespace slowsound::config
