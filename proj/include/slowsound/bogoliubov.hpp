#pragma once

// Bogoliubov phonons on top of a dark soliton, reduced units.
//
// eps_k = sqrt(k^2 (k^2 + 2)). With e0 = k^2/(2m) this is the textbook
// sqrt(e0 (e0 + 2 mu)) for m = m1/2, i.e. the branch carries a sqrt(2)
// relative to the usual xi = hbar/sqrt(m1 n0 g11) convention. Kept as is.

#include <complex>

namespace slowsound::bogoliubov {

using cplx = std::complex<double>;

double dispersion(double k);
/// d eps / dk.
double dispersion_slope(double k);

/// Mode functions for wavevector k. The bracketed amplitudes multiply a
/// travelling factor exp(i k x); without it the profiles carry no momentum.
class BogoliubovMode {
 public:
  explicit BogoliubovMode(double k);

  double k() const noexcept { return k_; }
  double energy() const noexcept { return energy_; }

  /// Bracketed amplitudes without the travelling factor.
  cplx u_envelope(double x) const;
  cplx v_envelope(double x) const;

  cplx u(double x) const;
  cplx v(double x) const;
  /// u + v, the combination entering the linear density coupling.
  cplx u_plus_v(double x) const;

  /// |u|^2 - |v|^2 at |x| -> infinity for these amplitudes.
  double asymptotic_norm() const;

 private:
  double k_;
  double energy_;
  double prefactor_;
};

BogoliubovMode mode_profiles(double k);

/// Positive root of eps_k = omega found numerically.
double resonant_wavevector(double omega);
/// k^2 = -1 + sqrt(1 + omega^2).
double closed_form_resonant_wavevector(double omega);

}  // namespace slowsound::bogoliubov
