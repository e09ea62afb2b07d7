#pragma once

// System parameters and the reduced unit system.
//
// Reduced units: hbar = m1 = xi = mu = 1, with xi = hbar / sqrt(m1 n0 g11)
// and mu = g11 n0. Then
//   time    unit  hbar/mu  = xi / c_s
//   speed   unit  c_s      = sqrt(n0 g11 / m1)   (so c_s = 1)
//   density unit  1/xi     (n0 -> n0 xi, the depletion number)
//   g11 = 1/(n0 xi),  g12 = coupling_ratio / (n0 xi).
// The Bogoliubov branch used throughout, eps_k = sqrt(k^2 (k^2 + 2)), has
// low-k slope sqrt(2) in these units: it is the textbook
// sqrt(e0 (e0 + 2 mu)) with e0 = k^2/(2 m) evaluated at m = m1/2. Ratios
// such as v_g/c_s are quoted against c_s = 1.

#include <optional>
#include <string>
#include <vector>

namespace slowsound::params {

/// Physical (SI) description of the condensate, impurity species and box.
struct PhysicalConfig {
  double m1_kg = 0.0;           ///< BEC particle mass
  double m2_kg = 0.0;           ///< impurity mass
  double g11_J_m = 0.0;         ///< 1D BEC-BEC coupling
  double g12_J_m = 0.0;         ///< 1D BEC-impurity coupling (g21 = g12)
  double n0_per_m = 0.0;        ///< linear density
  double box_length_m = 0.0;
  double soliton_count = 0.0;
  // Optional scattering data for the quasi-1D diagnostic 2 a_s l_z / l_r^2.
  std::optional<double> scattering_length_m;
  std::optional<double> longitudinal_size_m;
  std::optional<double> transverse_size_m;
};

/// Physical scales attached to a reduced parameter set (absent when the set
/// was given directly in reduced form without a physical anchor).
struct UnitScales {
  double healing_length_m = 0.0;
  double chemical_potential_J = 0.0;
  double sound_speed_m_s = 0.0;
  double time_unit_s() const { return healing_length_m / sound_speed_m_s; }
};

struct ReducedParams {
  double mass_ratio = 1.56;             ///< m2/m1
  double coupling_ratio = 1.85;         ///< g12/g11
  double soliton_concentration = 0.2;   ///< N xi, N = 1/d
  double depletion_number = 50.0;       ///< n0 xi
  double box_length = 100.0 / 0.7;      ///< L/xi
  double nu = 0.0;                      ///< Poschl-Teller index
  double exponent_alpha = 0.0;          ///< wavefunction exponent sqrt(2 r_g r_m)
  std::optional<UnitScales> units;
  std::optional<double> quasi1d_alpha;  ///< 2 a_s l_z / l_r^2 when known
  bool quasi1d_warning = false;         ///< quasi1d_alpha >= 0.1
};

/// 2 nu = -1 + sqrt(1 + 4 r_g r_m).
double nu_of_coupling(double coupling_ratio, double mass_ratio);
/// Inverse of nu_of_coupling: r_g = nu (nu + 1) / r_m.
double coupling_of_nu(double nu, double mass_ratio);
/// sqrt(2 r_g r_m) (mass ratio included; see README).
double exponent_alpha(double coupling_ratio, double mass_ratio);

/// Builds a validated parameter set from dimensionless inputs.
ReducedParams make_reduced(double mass_ratio, double coupling_ratio,
                           double soliton_concentration = 0.2, double depletion_number = 50.0,
                           double box_length = 100.0 / 0.7);

/// Converts physical inputs; throws ValidationError listing every failure.
ReducedParams reduce(const PhysicalConfig& cfg);

/// Returns the list of violated invariants (empty when valid).
std::vector<std::string> check(const PhysicalConfig& cfg);
std::vector<std::string> check(const ReducedParams& p);

/// Reference set used by the figure scenarios: r_m = 1.56, g12 = 1.85 g11,
/// N xi = 0.2, n0 xi = 50, L = 100 um at xi = 0.7 um, c_s = 1 mm/s.
ReducedParams reference_params();

/// Physical anchor of the box-potential estimate (xi = 0.7 um, c_s = 1 mm/s).
UnitScales reference_units();

}  // namespace slowsound::params
