#pragma once

// Driven three-level dynamics, susceptibility and group velocity.
//
// Basis (|g>, |e1>, |e2>) = indices (0, 1, 2). rho_21 in the usual
// one-based notation is rho(1, 0) here, the probe coherence rho_{e1,g}.

#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "slowsound/coupling.hpp"
#include "slowsound/decay.hpp"
#include "slowsound/params.hpp"

namespace slowsound::bloch {

using cplx = std::complex<double>;
using DensityMatrix3 = Eigen::Matrix3cd;

/// track: control on resonance, delta = Delta_p + Delta_c.
/// fixed: control follows the probe, delta = 0.
enum class DeltaMode { track, fixed };

std::string_view to_string(DeltaMode m);
DeltaMode parse_delta_mode(std::string_view s);

struct DriveConfig {
  double omega_p = 0.0;  ///< probe Rabi frequency
  double omega_c = 0.0;  ///< control Rabi frequency
  double delta_p = 0.0;  ///< probe detuning
  double delta_c = 0.0;  ///< control detuning (track mode)
  DeltaMode mode = DeltaMode::track;

  double two_photon() const { return mode == DeltaMode::track ? delta_p + delta_c : 0.0; }
  bool weak_probe() const { return omega_p <= 0.01 * omega_c; }
};

struct Rates {
  double gamma0 = 0.0;  ///< |e1> -> |g>
  double gamma1 = 0.0;  ///< |e2> -> |e1>
};

struct Coherences {
  cplx rho21;  ///< rho_{e1,g}
  cplx rho31;  ///< rho_{e2,g}
};

/// Weak-probe coherences. The product form keeps the gamma1 = delta = 0
/// limit finite.
Coherences steady_state_analytic(const DriveConfig& d, const Rates& r);

/// Row-major vectorised generator: d vec(rho)/dt = L vec(rho).
Eigen::Matrix<cplx, 9, 9> liouvillian(const DriveConfig& d, const Rates& r);

struct SteadyState {
  DensityMatrix3 rho;
  double residual = 0.0;
  bool degenerate = false;  ///< undriven or singular: ground projector returned
};

SteadyState steady_state_lindblad(const DriveConfig& d, const Rates& r);

/// Time evolution of rho with the same generator (RK4).
DensityMatrix3 evolve_density(const DensityMatrix3& rho0, const DriveConfig& d, const Rates& r,
                              double t, double dt);

double trace_distance(const DensityMatrix3& a, const DensityMatrix3& b);
/// Hermiticity error, trace error and most negative eigenvalue.
struct PhysicalityReport {
  double hermiticity = 0.0;
  double trace_error = 0.0;
  double min_eigenvalue = 0.0;
};
PhysicalityReport physicality(const DensityMatrix3& rho);

// ---------------------------------------------------------------------------

/// chi(Delta_p) = -i N xi g0^2 / (eps [(gamma0 - 2i Delta_p) + Omega_c^2/(gamma1 - 2i delta)]).
struct SusceptibilityModel {
  double soliton_concentration = 0.2;
  cplx g0;             ///< coupling at the resonant wavevector
  double k_res = 0.0;  ///< resonant wavevector of the probe transition
  double omega0 = 0.0; ///< probe transition; also eps_k at resonance
  Rates rates;

  static SusceptibilityModel from_params(const params::ReducedParams& p,
                                         const decay::DecayRates& rates,
                                         coupling::CouplingMode mode = coupling::CouplingMode::closed,
                                         const qutrit::ImpurityStates* states = nullptr);

  cplx chi(double delta_p, double omega_c, DeltaMode mode = DeltaMode::track,
           double delta_c = 0.0) const;
};

struct SweepSpec {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t points = 0;
  std::vector<double> grid() const;
  double spacing() const;
  /// [-10 gamma0, 10 gamma0] at gamma0/50.
  static SweepSpec around_resonance(double gamma0, double half_width_factor = 10.0,
                                    double steps_per_gamma = 50.0);
};

struct ResponseSpectrum {
  std::vector<double> delta_p;
  std::vector<cplx> chi;
  std::vector<cplx> refractive_index;  ///< sqrt(1 + chi)
  /// v_g / c_s; NaN where masked (v_g <= 0, outside the model's validity).
  std::vector<double> group_velocity;
  std::vector<bool> masked;
  double omega_c = 0.0;
  DeltaMode mode = DeltaMode::track;
};

ResponseSpectrum susceptibility(const SusceptibilityModel& m, const SweepSpec& sweep,
                                double omega_c, DeltaMode mode = DeltaMode::track);

/// Fills group_velocity from Re chi by central differences on the sweep grid.
void fill_group_velocity(ResponseSpectrum& s, double omega0);

ResponseSpectrum group_velocity_curve(const SusceptibilityModel& m, const SweepSpec& sweep,
                                      double omega_c, DeltaMode mode = DeltaMode::track);

/// Index of the sweep point closest to two-photon resonance.
std::size_t resonance_index(const ResponseSpectrum& s);

struct GroupVelocitySummary {
  double at_resonance = 0.0;     ///< v_g / c_s at two-photon resonance
  double window_minimum = 0.0;   ///< smallest unmasked v_g / c_s on the sweep
  double window_minimum_at = 0.0;
  std::size_t masked_points = 0;
};
GroupVelocitySummary summarize_group_velocity(const ResponseSpectrum& s);

struct NoTransparency {
  std::string reason;
};
using TransparencyResult = std::variant<double, NoTransparency>;

/// Full width at half depth of the absorption dip at resonance.
TransparencyResult transparency_width(const ResponseSpectrum& s);

/// Local maxima of Im chi, as detunings, in ascending order.
std::vector<double> absorption_peaks(const ResponseSpectrum& s);

/// Curvature of Im chi at Delta_p = 0 (positive once a dip has formed).
double dip_curvature(const SusceptibilityModel& m, double omega_c, DeltaMode mode = DeltaMode::track);
/// Control strength at which the single peak turns into a dip.
double dip_threshold(const SusceptibilityModel& m, DeltaMode mode = DeltaMode::track);

/// Re chi reconstructed from Im chi of the model by a principal-value
/// Hilbert transform over the whole line.
std::vector<double> kramers_kronig_real(const SusceptibilityModel& m, double omega_c,
                                        const std::vector<double>& delta_p,
                                        DeltaMode mode = DeltaMode::track);
/// sqrt(mean (a - b)^2) / sqrt(mean b^2).
double relative_rms(const std::vector<double>& a, const std::vector<double>& b);

/// Dressed probe branch q(omega) = k_bare(omega) Re n(omega).
struct DispersionCurve {
  std::vector<double> omega;
  std::vector<double> q_dressed;
  std::vector<double> k_bare;
  /// (d omega/dq) / (d eps/dk) at two-photon resonance.
  double slope_ratio_at_resonance = 0.0;
};
DispersionCurve dispersion_curve(const SusceptibilityModel& m, const SweepSpec& sweep,
                                 double omega_c, DeltaMode mode = DeltaMode::track);

// ---------------------------------------------------------------------------

struct PulseConfig {
  double medium_length = 100.0;
  double bandwidth = 0.0;  ///< spectral intensity FWHM of the Gaussian probe
  std::size_t points = 4096;
  double omega_c = 0.0;
  DeltaMode mode = DeltaMode::track;
  /// Number of snapshots along the medium written to `profiles`.
  std::size_t snapshots = 5;
};

struct PulseResult {
  std::vector<double> time;           ///< retarded time (vacuum transit removed)
  std::vector<double> input;          ///< |Omega_p| at the entrance
  std::vector<double> output;         ///< |Omega_p| at the exit
  std::vector<double> snapshot_x;     ///< positions of the snapshots
  std::vector<std::vector<double>> profiles;
  double delay = 0.0;                 ///< peak arrival delay relative to vacuum
  double measured_group_velocity = 0.0;
  double analytic_group_velocity = 0.0;
  double transmitted_energy = 0.0;    ///< fraction of the input energy
  bool bandwidth_warning = false;     ///< pulse wider than the transparency window
};

PulseResult propagate_envelope(const SusceptibilityModel& m, const PulseConfig& cfg);

}  // namespace slowsound::bloch
