#pragma once

// Split-step solver for the condensate / impurity pair of equations.
//
// Condensate units: |psi|^2 -> n0 xi far from the soliton, mu = 1 removed,
//   i psi_t = -psi''/2 + (g11 |psi|^2 - 1) psi + g12 |phi|^2 psi.
// Impurity, energies measured from g21 n0:
//   i phi_t = -phi''/(2 r_m) + g21 (|psi|^2 - n0 xi) phi.
// g21 n0 xi is set to the well depth nu (nu + 1)/(2 r_m) = r_g/2 so that the
// frozen well is exactly the Poschl-Teller well with index nu.

#include <cstddef>
#include <vector>

#include "slowsound/numerics.hpp"
#include "slowsound/params.hpp"

namespace slowsound::gpe {

using numerics::cplx;
using numerics::Grid1D;

struct Field1D {
  Grid1D grid;
  std::vector<cplx> psi;

  Field1D(Grid1D g, std::vector<cplx> samples);
  /// Rectangle-rule integral of |psi|^2, spectrally accurate on a periodic grid.
  double norm() const;
  std::vector<double> density() const;
};

struct Fields {
  Field1D condensate;
  Field1D impurity;
};

/// Couplings in the units above.
struct Couplings {
  double g11 = 0.0;
  double g12 = 0.0;       ///< impurity -> condensate
  double g21 = 0.0;       ///< condensate -> impurity
  double well_depth = 0.0;  ///< g21 n0 xi
  double impurity_mass = 1.0;
  double depletion_number = 50.0;
  static Couplings from_params(const params::ReducedParams& p);
};

/// Soliton at the origin paired with an antisoliton at the box edge so the
/// field is smooth on the periodic grid: sqrt(n0) tanh(x) tanh(L/2 - |x|).
/// This is the +-L/4 pair shifted by L/4.
Field1D imprint_soliton(const Grid1D& grid, const params::ReducedParams& p);

enum class Backreaction { off, on };

/// Strang split-step in real time. Throws DomainError if dt > 0.1 dx^2 and
/// DivergenceError if either norm drifts by more than 1e-4.
Fields evolve_real(Fields fields, const params::ReducedParams& p, double dt, std::size_t steps,
                   Backreaction backreaction);

/// Energy of the coupled system (mu-subtracted condensate plus impurity,
/// E' convention). Conserved by evolve_real with backreaction on.
double energy(const Fields& fields, const params::ReducedParams& p);

struct SolverOptions {
  double length = 80.0;
  std::size_t points = 2048;
  double dtau = 0.02;           ///< split-step imaginary-time step (eigenstates)
  double coupled_dtau = 0.2;    ///< gradient-flow step (coupled ground state)
  std::size_t max_steps = 60000;
  double tolerance = 1e-10;  ///< Rayleigh drift per step, or field residual when coupled
  bool allow_partial = false;  ///< return unconverged states instead of throwing
};

struct EigenResult {
  int n = 0;
  double energy = 0.0;
  double analytic_energy = 0.0;  ///< -(nu - n)^2 / (2 r_m)
  Field1D state;
  double overlap_trial = 0.0;    ///< |<phi_num|phi_n>|^2, trial forms with exponent alpha
  double overlap_exact = 0.0;    ///< same against the exact Poschl-Teller state (0 if unbound)
  double residual = 0.0;         ///< ||H phi - E phi||
  bool converged = false;
  std::size_t steps = 0;
};

/// Lowest n_states eigenstates of the frozen-soliton well by imaginary-time
/// relaxation with Gram-Schmidt after every step.
std::vector<EigenResult> imaginary_time_eigenstates(const params::ReducedParams& p,
                                                    int n_states = 3,
                                                    const SolverOptions& opt = {});

struct CoupledResult {
  Fields fields;
  double deformation = 0.0;   ///< relative L2 change of the density dip
  bool condensation = false;  ///< deformation above 20%
  double impurity_energy = 0.0;
  std::size_t steps = 0;
};

/// Self-consistent ground state with backreaction: condensate relaxed at
/// mu = 1 with odd symmetry, impurity at fixed norm.
CoupledResult coupled_ground_state(const params::ReducedParams& p, double impurity_norm,
                                   const SolverOptions& opt = {});

/// Energies of the dominant lines in the autocorrelation <phi(0)|phi(t)>,
/// sampled every `sample_dt`; returns peak energies sorted ascending.
std::vector<double> autocorrelation_lines(const std::vector<cplx>& autocorrelation,
                                          double sample_dt, std::size_t max_lines);

}  // namespace slowsound::gpe
