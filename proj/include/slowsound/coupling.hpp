#pragma once

// Qutrit-phonon coupling constants.
//
// Closed forms are per unit box length. Inside a box of length L the mode
// coupling is g / sqrt(L); the sqrt(L) is carried by the density of states
// in the decay module so that L cancels from every rate.

#include <complex>
#include <string_view>

#include "slowsound/params.hpp"
#include "slowsound/qutrit.hpp"

namespace slowsound::coupling {

using cplx = std::complex<double>;

enum class CouplingMode { closed, quadrature };

std::string_view to_string(CouplingMode m);
CouplingMode parse_coupling_mode(std::string_view s);

/// |g> <-> |e1> coupling.
cplx g0_closed(double k, const params::ReducedParams& p);
/// |e1> <-> |e2> coupling.
cplx g1_closed(double k, const params::ReducedParams& p);

/// g12 sqrt(n0) \int phi_l phi_l' tanh(x) (u_k + v_k) dx.
cplx g_quadrature(int l, int lp, double k, const params::ReducedParams& p,
                  const qutrit::ImpurityStates& states);

/// Interband coupling for transition i (0: g-e1, 1: e1-e2) in either mode.
cplx interband(int i, double k, const params::ReducedParams& p, CouplingMode mode,
               const qutrit::ImpurityStates* states = nullptr);

struct CouplingSet {
  double k = 0.0;
  cplx g0_closed;
  cplx g1_closed;
  cplx g01_quadrature;  ///< same transition as g0
  cplx g12_quadrature;  ///< same transition as g1
  cplx g00_quadrature;
  cplx g11_quadrature;
  cplx g22_quadrature;
};

CouplingSet coupling_set(double k, const params::ReducedParams& p,
                         const qutrit::ImpurityStates& states);

}  // namespace slowsound::coupling
