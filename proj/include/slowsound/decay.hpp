#pragma once

// Spontaneous phonon emission: decay rates and the two-phonon cascade.

#include <optional>
#include <vector>

#include "slowsound/coupling.hpp"
#include "slowsound/numerics.hpp"
#include "slowsound/params.hpp"
#include "slowsound/qutrit.hpp"

namespace slowsound::decay {

using numerics::cplx;

/// Knobs of the closed-form rates.
struct DecayConfig {
  /// Density N0 in the closed forms. Unset means sqrt(2) n0 xi, the value
  /// for which the closed forms coincide with the density-of-states route.
  std::optional<double> n0_density;
  /// Denominator of the gamma_1 closed form (2 * 896^2 * 15).
  double gamma1_denominator = 24084480.0;
  coupling::CouplingMode mode = coupling::CouplingMode::closed;

  double resolved_n0(const params::ReducedParams& p) const;
};

struct DecayRates {
  double gamma0 = 0.0;
  double gamma1 = 0.0;
  double omega0 = 0.0;
  double omega1 = 0.0;
  double eta0 = 0.0;  ///< sqrt(1 + omega0^2)
  double eta1 = 0.0;
  bool degenerate = false;  ///< some omega_i was at the eta -> 1 limit
  bool rwa_valid() const { return gamma0 / omega0 < 0.1 && gamma1 / omega1 < 0.1; }
};

struct RateValue {
  double value = 0.0;
  bool degenerate = false;
};

/// Closed-form rate for transition `which` (0 or 1) at frequency omega.
/// At omega = 0 the continuous limit is returned with the degeneracy flag set.
RateValue gamma_closed(const params::ReducedParams& p, double omega, int which,
                       const DecayConfig& cfg = {});

/// Density-of-states route: sqrt(1 + eta)/(sqrt(2) eta) |g(k_res)|^2.
double gamma_integral(const params::ReducedParams& p, double omega, int which,
                      coupling::CouplingMode mode = coupling::CouplingMode::closed,
                      const qutrit::ImpurityStates* states = nullptr);

/// Phonon modes per unit frequency in a box of length L (both directions,
/// same sqrt(2) convention as the rates).
double mode_density(double omega, double box_length);

DecayRates compute_rates(const params::ReducedParams& p, const DecayConfig& cfg = {});

// ---------------------------------------------------------------------------
// Cascade |e2> -> |e1> + k -> |g> + k + p.

/// Frequency grids for the two emitted phonons; index j of the first grid
/// has frequency omega1 + detuning[j], and likewise around omega0.
struct CascadeGrid {
  std::vector<double> detuning_k;  ///< first phonon, around omega1
  std::vector<double> detuning_p;  ///< second phonon, around omega0
  std::vector<cplx> coupling_k;    ///< discrete coupling per mode (g1 transition)
  std::vector<cplx> coupling_p;    ///< discrete coupling per mode (g0 transition)
  std::vector<double> wavevector_k;
  std::vector<double> wavevector_p;
  double spacing = 0.0;  ///< frequency spacing of both grids
};

struct GridOptions {
  double half_width_factor = 40.0;  ///< half width = factor * (gamma0 + gamma1)
  double spacing_factor = 6.0;      ///< spacing = min(gamma) / factor
};

/// Builds the grids; throws ResolutionError when spacing >= min(gamma)/5.
CascadeGrid make_cascade_grid(const params::ReducedParams& p, const DecayRates& rates,
                              const GridOptions& opt = {});
/// Grid with an explicit spacing (validated against the Lorentzian widths).
CascadeGrid make_cascade_grid(const params::ReducedParams& p, const DecayRates& rates,
                              double half_width, double spacing);

struct CascadeAmplitudes {
  double t = 0.0;
  cplx a;
  std::vector<cplx> b_k;
  /// Row-major b_{k,p}; only filled on request.
  std::vector<cplx> b_kp;
};

struct CascadePopulations {
  double t = 0.0;
  double upper = 0.0;       ///< |a|^2
  double one_phonon = 0.0;  ///< sum |b_k|^2
  double two_phonon = 0.0;  ///< sum |b_kp|^2
  double total() const { return upper + one_phonon + two_phonon; }
};

/// Long-time amplitudes in the Wigner-Weisskopf solution.
class Cascade {
 public:
  Cascade(DecayRates rates, CascadeGrid grid);

  const CascadeGrid& grid() const noexcept { return grid_; }
  const DecayRates& rates() const noexcept { return rates_; }

  CascadeAmplitudes amplitudes(double t, bool with_two_phonon = false) const;
  CascadePopulations populations(double t) const;

  /// Spectrum of the first phonon, sum_p |b_kp(t -> inf)|^2 per grid k.
  std::vector<double> first_phonon_spectrum() const;
  /// |b_k(t)|^2 per grid k.
  std::vector<double> one_phonon_distribution(double t) const;

 private:
  cplx b_k(std::size_t j, double t) const;
  cplx b_kp(std::size_t j, std::size_t l, double t) const;

  DecayRates rates_;
  CascadeGrid grid_;
};

/// Direct integration of the amplitude equations: exact coupling between
/// |e2> and the one-phonon states, the second emission treated as a
/// Markovian loss at gamma0 feeding the two-phonon population.
std::vector<CascadePopulations> cascade_ode_populations(const Cascade& c,
                                                        const std::vector<double>& times,
                                                        double dt_target = 0.5);

/// Full width at half maximum of a sampled peak (linear interpolation).
double full_width_half_max(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace slowsound::decay
