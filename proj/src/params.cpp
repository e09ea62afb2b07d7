#include "slowsound/params.hpp"

#include <cmath>

#include "slowsound/errors.hpp"

namespace slowsound::params {

namespace {
constexpr double kHbar = 1.054571817e-34;
}

double nu_of_coupling(double coupling_ratio, double mass_ratio) {
  if (coupling_ratio < 0.0 || mass_ratio < 0.0) {
    throw DomainError("nu_of_coupling: ratios must be non-negative");
  }
  return 0.5 * (-1.0 + std::sqrt(1.0 + 4.0 * coupling_ratio * mass_ratio));
}

double coupling_of_nu(double nu, double mass_ratio) {
  if (nu < 0.0) throw DomainError("coupling_of_nu: nu must be non-negative");
  if (!(mass_ratio > 0.0)) throw DomainError("coupling_of_nu: mass ratio must be positive");
  return nu * (nu + 1.0) / mass_ratio;
}

double exponent_alpha(double coupling_ratio, double mass_ratio) {
  if (coupling_ratio < 0.0 || mass_ratio < 0.0) {
    throw DomainError("exponent_alpha: ratios must be non-negative");
  }
  return std::sqrt(2.0 * coupling_ratio * mass_ratio);
}

std::vector<std::string> check(const ReducedParams& p) {
  std::vector<std::string> out;
  if (!(p.mass_ratio > 0.0)) out.emplace_back("mass ratio m2/m1 must be positive");
  if (!(p.coupling_ratio >= 0.0)) out.emplace_back("coupling ratio g12/g11 must be >= 0");
  if (!(p.soliton_concentration > 0.0 && p.soliton_concentration < 1.0)) {
    out.emplace_back("soliton concentration N xi must lie in (0, 1) (dilute soliton gas)");
  }
  if (!(p.depletion_number > 0.0)) out.emplace_back("depletion number n0 xi must be positive");
  if (!(p.box_length > 0.0)) out.emplace_back("box length L/xi must be positive");
  return out;
}

ReducedParams make_reduced(double mass_ratio, double coupling_ratio, double soliton_concentration,
                           double depletion_number, double box_length) {
  ReducedParams p;
  p.mass_ratio = mass_ratio;
  p.coupling_ratio = coupling_ratio;
  p.soliton_concentration = soliton_concentration;
  p.depletion_number = depletion_number;
  p.box_length = box_length;
  if (auto failures = check(p); !failures.empty()) throw ValidationError(std::move(failures));
  p.nu = nu_of_coupling(coupling_ratio, mass_ratio);
  p.exponent_alpha = exponent_alpha(coupling_ratio, mass_ratio);
  return p;
}

std::vector<std::string> check(const PhysicalConfig& cfg) {
  std::vector<std::string> out;
  if (!(cfg.g11_J_m > 0.0)) out.emplace_back("g11 must be positive (repulsive condensate)");
  if (!(cfg.m1_kg > 0.0)) out.emplace_back("m1 must be positive");
  if (!(cfg.m2_kg > 0.0)) out.emplace_back("m2 must be positive");
  if (!(cfg.n0_per_m > 0.0)) out.emplace_back("n0 must be positive");
  if (!(cfg.box_length_m > 0.0)) out.emplace_back("box length must be positive");
  if (!(cfg.g12_J_m >= 0.0)) out.emplace_back("g12 must be non-negative");
  if (!(cfg.soliton_count >= 0.0)) out.emplace_back("soliton count must be non-negative");
  return out;
}

ReducedParams reduce(const PhysicalConfig& cfg) {
  auto failures = check(cfg);
  if (!failures.empty()) throw ValidationError(std::move(failures));

  UnitScales units;
  units.healing_length_m = kHbar / std::sqrt(cfg.m1_kg * cfg.n0_per_m * cfg.g11_J_m);
  units.chemical_potential_J = cfg.g11_J_m * cfg.n0_per_m;
  units.sound_speed_m_s = std::sqrt(cfg.n0_per_m * cfg.g11_J_m / cfg.m1_kg);

  const double xi = units.healing_length_m;
  ReducedParams p;
  p.mass_ratio = cfg.m2_kg / cfg.m1_kg;
  p.coupling_ratio = cfg.g12_J_m / cfg.g11_J_m;
  p.soliton_concentration = cfg.soliton_count * xi / cfg.box_length_m;
  p.depletion_number = cfg.n0_per_m * xi;
  p.box_length = cfg.box_length_m / xi;
  if (auto reduced_failures = check(p); !reduced_failures.empty()) {
    throw ValidationError(std::move(reduced_failures));
  }
  p.nu = nu_of_coupling(p.coupling_ratio, p.mass_ratio);
  p.exponent_alpha = exponent_alpha(p.coupling_ratio, p.mass_ratio);
  p.units = units;

  if (cfg.scattering_length_m && cfg.longitudinal_size_m && cfg.transverse_size_m) {
    const double lr = *cfg.transverse_size_m;
    p.quasi1d_alpha = 2.0 * *cfg.scattering_length_m * *cfg.longitudinal_size_m / (lr * lr);
    p.quasi1d_warning = *p.quasi1d_alpha >= 0.1;
  }
  return p;
}

UnitScales reference_units() {
  UnitScales u;
  u.healing_length_m = 0.7e-6;
  u.sound_speed_m_s = 1e-3;
  // mu = m1 c_s^2 with m1 fixed by xi c_s = hbar / m1.
  const double m1 = kHbar / (u.healing_length_m * u.sound_speed_m_s);
  u.chemical_potential_J = m1 * u.sound_speed_m_s * u.sound_speed_m_s;
  return u;
}

ReducedParams reference_params() {
  ReducedParams p = make_reduced(1.56, 1.85, 0.2, 50.0, 100.0 / 0.7);
  p.units = reference_units();
  return p;
}

}  // namespace slowsound::params
