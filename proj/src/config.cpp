#include "slowsound/config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "slowsound/errors.hpp"

namespace slowsound::config {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double to_double(const std::string& key, const std::string& v) {
  errno = 0;
  char* end = nullptr;
  const double x = std::strtod(v.c_str(), &end);
  if (v.empty() || end != v.c_str() + v.size() || errno == ERANGE || !std::isfinite(x)) {
    throw ConfigError(key + ": '" + v + "' is not a finite number");
  }
  return x;
}

double positive(const std::string& key, const std::string& v) {
  const double x = to_double(key, v);
  if (!(x > 0.0)) throw ConfigError(key + ": must be positive, got " + v);
  return x;
}

std::size_t count(const std::string& key, const std::string& v, std::size_t min) {
  const double x = to_double(key, v);
  if (x != std::floor(x) || x < static_cast<double>(min) || x > 1e9) {
    throw ConfigError(key + ": must be an integer >= " + std::to_string(min) + ", got " + v);
  }
  return static_cast<std::size_t>(x);
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError(key + ": expected true or false, got '" + v + "'");
}

std::vector<double> to_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_double(key, trim(item)));
  if (out.empty()) throw ConfigError(key + ": empty list");
  return out;
}

using Setter = std::function<void(RunConfig&, const std::string& key, const std::string& value)>;

struct Entry {
  KeyInfo info;
  Setter set;  ///< empty for keys handled as a group (physical.*)
};

const std::vector<Entry>& entries() {
  static const std::vector<Entry> table = [] {
    std::vector<Entry> t;
    auto add = [&](std::string key, std::string def, std::string help, Setter s) {
      t.push_back({{std::move(key), std::move(def), std::move(help)}, std::move(s)});
    };
    using C = RunConfig;
    using S = const std::string&;
    add("mass_ratio", "1.56", "impurity to condensate mass ratio m2/m1",
        [](C& c, S k, S v) { c.params.mass_ratio = positive(k, v); });
    add("coupling_ratio", "1.85", "interspecies coupling ratio g12/g11",
        [](C& c, S k, S v) { c.params.coupling_ratio = to_double(k, v); });
    add("soliton_concentration", "0.2", "solitons per healing length, must lie in (0, 1)",
        [](C& c, S k, S v) { c.params.soliton_concentration = to_double(k, v); });
    add("depletion_number", "50", "condensate atoms per healing length n0 xi",
        [](C& c, S k, S v) { c.params.depletion_number = to_double(k, v); });
    add("box_length", "142.85714285714286", "box length in healing lengths (100 um at xi = 0.7 um)",
        [](C& c, S k, S v) { c.params.box_length = to_double(k, v); });
    for (const char* key :
         {"physical.m1_kg", "physical.m2_kg", "physical.g11_J_m", "physical.g12_J_m",
          "physical.n0_per_m", "physical.box_length_m", "physical.soliton_count"}) {
      add(key, "", "SI input; all seven required once one is set; reduced keys given too take precedence", {});
    }
    for (const char* key : {"physical.scattering_length_m", "physical.longitudinal_size_m",
                            "physical.transverse_size_m"}) {
      add(key, "", "optional, enables the quasi-1D diagnostic 2 a_s l_z / l_r^2", {});
    }
    add("units.healing_length_m", "7e-07", "healing length for SI output (reduced inputs only)",
        [](C& c, S k, S v) { c.units.healing_length_m = positive(k, v); });
    add("units.sound_speed_m_s", "0.001", "sound speed for SI output (reduced inputs only)",
        [](C& c, S k, S v) { c.units.sound_speed_m_s = positive(k, v); });
    add("coupling_mode", "closed", "closed | quadrature: source of the phonon couplings",
        [](C& c, S, S v) { c.coupling_mode = coupling::parse_coupling_mode(v); });
    add("delta_mode", "track", "track: control on resonance, two-photon detuning follows the probe; fixed: two-photon detuning held at 0",
        [](C& c, S, S v) { c.delta_mode = bloch::parse_delta_mode(v); });
    add("drive.control_rabi", "2", "control Rabi frequency for groupvel, dispersion, pulse [gamma0]",
        [](C& c, S k, S v) { c.control_rabi = positive(k, v); });
    add("drive.control_list", "0.2,1,2,3", "control Rabi frequencies for susceptibility [gamma0]",
        [](C& c, S k, S v) {
          c.control_list = to_list(k, v);
          for (double x : c.control_list) {
            if (!(x >= 0.0)) throw ConfigError(k + ": entries must be >= 0");
          }
        });
    add("drive.compare_coupling_ratios", "1.1,1.85", "g12/g11 values overlaid in susceptibility",
        [](C& c, S k, S v) { c.compare_coupling_ratios = to_list(k, v); });
    add("sweep.half_width", "10", "probe detuning sweep half width [gamma0]",
        [](C& c, S k, S v) { c.sweep_half_width = positive(k, v); });
    add("sweep.steps_per_gamma", "50", "sweep points per gamma0",
        [](C& c, S k, S v) { c.sweep_steps_per_gamma = positive(k, v); });
    add("ratio.min", "0.9", "lower end of g12/g11 sweeps",
        [](C& c, S k, S v) { c.ratio_min = to_double(k, v); });
    add("ratio.max", "1.9", "upper end of g12/g11 sweeps",
        [](C& c, S k, S v) { c.ratio_max = to_double(k, v); });
    add("ratio.points", "201", "points in g12/g11 sweeps",
        [](C& c, S k, S v) { c.ratio_points = count(k, v, 2); });
    add("couplings.k_min", "0.02", "smallest phonon wavevector [1/xi]",
        [](C& c, S k, S v) { c.k_min = positive(k, v); });
    add("couplings.k_max", "3", "largest phonon wavevector [1/xi]",
        [](C& c, S k, S v) { c.k_max = positive(k, v); });
    add("couplings.k_points", "300", "wavevector samples",
        [](C& c, S k, S v) { c.k_points = count(k, v, 2); });
    add("decay.n0_density", "", "density in the closed-form rates; empty means sqrt(2) n0 xi",
        [](C& c, S k, S v) { c.decay.n0_density = positive(k, v); });
    add("decay.gamma1_denominator", "24084480", "denominator of the closed-form gamma1",
        [](C& c, S k, S v) { c.decay.gamma1_denominator = positive(k, v); });
    add("cascade.half_width_factor", "40", "phonon grid half width [gamma0 + gamma1]",
        [](C& c, S k, S v) { c.cascade.half_width_factor = positive(k, v); });
    add("cascade.spacing_factor", "6", "phonon grid spacing is min(gamma)/factor (> 5)",
        [](C& c, S k, S v) { c.cascade.spacing_factor = positive(k, v); });
    add("cascade.times", "0.5,1,3", "cascade snapshot times [1/gamma1]",
        [](C& c, S k, S v) {
          c.cascade_times = to_list(k, v);
          for (double x : c.cascade_times) {
            if (!(x >= 0.0)) throw ConfigError(k + ": times must be >= 0");
          }
        });
    add("pulse.medium_length", "100", "medium length [xi]",
        [](C& c, S k, S v) { c.pulse_medium_length = positive(k, v); });
    add("pulse.bandwidth_fraction", "0.1", "pulse bandwidth as a fraction of the window width",
        [](C& c, S k, S v) { c.pulse_bandwidth_fraction = positive(k, v); });
    add("pulse.points", "8192", "time samples of the pulse",
        [](C& c, S k, S v) { c.pulse_points = count(k, v, 16); });
    add("gpe.length", "80", "periodic box for the field solvers [xi]",
        [](C& c, S k, S v) { c.gpe.length = positive(k, v); });
    add("gpe.points", "2048", "grid points (power of two)",
        [](C& c, S k, S v) { c.gpe.points = count(k, v, 16); });
    add("gpe.dtau", "0.02", "imaginary-time step of the eigensolver",
        [](C& c, S k, S v) { c.gpe.dtau = positive(k, v); });
    add("gpe.coupled_dtau", "0.2", "relaxation step of the coupled ground state",
        [](C& c, S k, S v) { c.gpe.coupled_dtau = positive(k, v); });
    add("gpe.max_steps", "60000", "iteration budget per solve",
        [](C& c, S k, S v) { c.gpe.max_steps = count(k, v, 1); });
    add("gpe.tolerance", "1e-10", "convergence threshold per step",
        [](C& c, S k, S v) { c.gpe.tolerance = positive(k, v); });
    add("gpe.allow_partial", "true", "report unconverged eigenstates instead of failing",
        [](C& c, S k, S v) { c.gpe.allow_partial = to_bool(k, v); });
    add("gpe.states", "3", "number of eigenstates to relax",
        [](C& c, S k, S v) { c.gpe_states = static_cast<int>(count(k, v, 1)); });
    return t;
  }();
  return table;
}

const std::set<std::string> kReducedKeys{"mass_ratio", "coupling_ratio", "soliton_concentration",
                                         "depletion_number", "box_length"};

}  // namespace

KeyValues parse_text(std::string_view text, std::string_view source) {
  KeyValues kv;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    const std::string where = std::string(source) + ":" + std::to_string(line_no);
    if (eq == std::string::npos) throw ConfigError(where + ": expected 'key = value'");
    const std::string key = trim(std::string_view(body).substr(0, eq));
    if (key.empty()) throw ConfigError(where + ": empty key");
    if (kv.count(key)) throw ConfigError(where + ": duplicate key '" + key + "'");
    kv[key] = trim(std::string_view(body).substr(eq + 1));
  }
  return kv;
}

KeyValues parse_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot read config file '" + path.string() + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_text(ss.str(), path.string());
}

void apply_override(KeyValues& kv, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw ConfigError("override '" + std::string(assignment) + "' must look like key=value");
  }
  const std::string key = trim(assignment.substr(0, eq));
  if (key.empty()) throw ConfigError("override '" + std::string(assignment) + "' has no key");
  kv[key] = trim(assignment.substr(eq + 1));
}

RunConfig resolve(const KeyValues& kv) {
  RunConfig c;
  c.units = params::reference_units();
  std::vector<std::string> unknown;
  bool any_physical = false;
  bool any_reduced = false;
  for (const auto& [key, value] : kv) {
    const Entry* e = nullptr;
    for (const auto& cand : entries()) {
      if (cand.info.key == key) e = &cand;
    }
    if (!e) {
      unknown.push_back(key);
      continue;
    }
    if (key.rfind("physical.", 0) == 0) {
      any_physical = true;
      continue;
    }
    if (kReducedKeys.count(key)) any_reduced = true;
    if (value.empty()) continue;  // empty value keeps the default
    e->set(c, key, value);
  }
  if (!unknown.empty()) {
    std::string msg = "unknown config key(s):";
    for (const auto& k : unknown) msg += " " + k;
    throw ConfigError(msg);
  }
  if (c.ratio_min >= c.ratio_max) throw ConfigError("ratio.min must be below ratio.max");
  if (c.k_min >= c.k_max) throw ConfigError("couplings.k_min must be below couplings.k_max");
  if (c.cascade.spacing_factor <= 5.0) {
    throw ConfigError("cascade.spacing_factor must exceed 5 to resolve the Lorentzians");
  }
  if (c.gpe.points & (c.gpe.points - 1)) throw ConfigError("gpe.points must be a power of two");

  if (any_physical) {
    auto get = [&](const std::string& key, bool required) -> std::optional<double> {
      const auto it = kv.find(key);
      if (it == kv.end() || it->second.empty()) {
        if (required) throw ConfigError(key + " is required when physical.* keys are used");
        return std::nullopt;
      }
      return to_double(key, it->second);
    };
    params::PhysicalConfig pc;
    pc.m1_kg = *get("physical.m1_kg", true);
    pc.m2_kg = *get("physical.m2_kg", true);
    pc.g11_J_m = *get("physical.g11_J_m", true);
    pc.g12_J_m = *get("physical.g12_J_m", true);
    pc.n0_per_m = *get("physical.n0_per_m", true);
    pc.box_length_m = *get("physical.box_length_m", true);
    pc.soliton_count = *get("physical.soliton_count", true);
    pc.scattering_length_m = get("physical.scattering_length_m", false);
    pc.longitudinal_size_m = get("physical.longitudinal_size_m", false);
    pc.transverse_size_m = get("physical.transverse_size_m", false);
    const auto given = c.params;
    c.params = params::reduce(pc);
    c.physical = pc;
    c.units = *c.params.units;
    if (any_reduced) {
      // Explicit reduced keys take precedence over the converted values.
      auto pick = [&](const char* key, double from_key, double converted) {
        const auto it = kv.find(key);
        return it != kv.end() && !it->second.empty() ? from_key : converted;
      };
      const auto& q = c.params;
      auto merged = params::make_reduced(
          pick("mass_ratio", given.mass_ratio, q.mass_ratio),
          pick("coupling_ratio", given.coupling_ratio, q.coupling_ratio),
          pick("soliton_concentration", given.soliton_concentration, q.soliton_concentration),
          pick("depletion_number", given.depletion_number, q.depletion_number),
          pick("box_length", given.box_length, q.box_length));
      merged.units = q.units;
      merged.quasi1d_alpha = q.quasi1d_alpha;
      merged.quasi1d_warning = q.quasi1d_warning;
      c.params = merged;
    }
  } else {
    const auto& q = c.params;
    c.params = params::make_reduced(q.mass_ratio, q.coupling_ratio, q.soliton_concentration,
                                    q.depletion_number, q.box_length);
    c.params.units = c.units;
  }
  return c;
}

nlohmann::json RunConfig::to_json() const {
  nlohmann::json j;
  j["mass_ratio"] = params.mass_ratio;
  j["coupling_ratio"] = params.coupling_ratio;
  j["soliton_concentration"] = params.soliton_concentration;
  j["depletion_number"] = params.depletion_number;
  j["box_length"] = params.box_length;
  j["derived"] = {{"nu", params.nu}, {"exponent_alpha", params.exponent_alpha}};
  if (params.quasi1d_alpha) {
    j["derived"]["quasi1d_alpha"] = *params.quasi1d_alpha;
    j["derived"]["quasi1d_warning"] = params.quasi1d_warning;
  }
  if (physical) {
    j["physical"] = {{"m1_kg", physical->m1_kg},
                     {"m2_kg", physical->m2_kg},
                     {"g11_J_m", physical->g11_J_m},
                     {"g12_J_m", physical->g12_J_m},
                     {"n0_per_m", physical->n0_per_m},
                     {"box_length_m", physical->box_length_m},
                     {"soliton_count", physical->soliton_count}};
  }
  j["units"] = {{"healing_length_m", units.healing_length_m},
                {"sound_speed_m_s", units.sound_speed_m_s},
                {"chemical_potential_J", units.chemical_potential_J}};
  j["coupling_mode"] = std::string(coupling::to_string(coupling_mode));
  j["delta_mode"] = std::string(bloch::to_string(delta_mode));
  j["drive"] = {{"control_rabi", control_rabi},
                {"control_list", control_list},
                {"compare_coupling_ratios", compare_coupling_ratios}};
  j["sweep"] = {{"half_width", sweep_half_width}, {"steps_per_gamma", sweep_steps_per_gamma}};
  j["ratio"] = {{"min", ratio_min}, {"max", ratio_max}, {"points", ratio_points}};
  j["couplings"] = {{"k_min", k_min}, {"k_max", k_max}, {"k_points", k_points}};
  j["decay"] = {{"n0_density", decay.resolved_n0(params)},
                {"gamma1_denominator", decay.gamma1_denominator}};
  j["cascade"] = {{"half_width_factor", cascade.half_width_factor},
                  {"spacing_factor", cascade.spacing_factor},
                  {"times", cascade_times}};
  j["pulse"] = {{"medium_length", pulse_medium_length},
                {"bandwidth_fraction", pulse_bandwidth_fraction},
                {"points", pulse_points}};
  j["gpe"] = {{"length", gpe.length},         {"points", gpe.points},
              {"dtau", gpe.dtau},             {"coupled_dtau", gpe.coupled_dtau},
              {"max_steps", gpe.max_steps},   {"tolerance", gpe.tolerance},
              {"allow_partial", gpe.allow_partial}, {"states", gpe_states}};
  return j;
}

const std::vector<KeyInfo>& schema() {
  static const std::vector<KeyInfo> out = [] {
    std::vector<KeyInfo> v;
    for (const auto& e : entries()) v.push_back(e.info);
    return v;
  }();
  return out;
}

std::string annotated_defaults() {
  std::string out;
  for (const auto& k : schema()) {
    out += "# " + k.help + "\n";
    if (k.default_value.empty()) {
      out += "# " + k.key + " =\n";
    } else {
      out += k.key + " = " + k.default_value + "\n";
    }
  }
  return out;
}

}  // namespace slowsound::config
