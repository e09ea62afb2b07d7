#include "slowsound/bogoliubov.hpp"

#include <algorithm>
#include <cmath>

#include "slowsound/errors.hpp"
#include "slowsound/numerics.hpp"

namespace slowsound::bogoliubov {

double dispersion(double k) {
  const double ak = std::abs(k);
  return ak * std::sqrt(ak * ak + 2.0);
}

double dispersion_slope(double k) {
  const double ak = std::abs(k);
  return (2.0 * ak * ak + 2.0) / std::sqrt(ak * ak + 2.0);
}

BogoliubovMode::BogoliubovMode(double k) : k_(k), energy_(dispersion(k)) {
  if (k == 0.0) throw DomainError("mode_profiles: k = 0 is a singular mode");
  prefactor_ = 1.0 / (std::sqrt(4.0 * numerics::kPi) * energy_);
}

cplx BogoliubovMode::u_envelope(double x) const {
  const double t = std::tanh(x);
  const double c = std::cosh(x);
  const cplx phase(0.5 * k_, t);
  return prefactor_ * ((k_ * k_ + 2.0 * energy_) * phase + k_ / (c * c));
}

cplx BogoliubovMode::v_envelope(double x) const {
  const double t = std::tanh(x);
  const double c = std::cosh(x);
  const cplx phase(0.5 * k_, t);
  return prefactor_ * ((k_ * k_ - 2.0 * energy_) * phase + k_ / (c * c));
}

cplx BogoliubovMode::u(double x) const { return std::polar(1.0, k_ * x) * u_envelope(x); }
cplx BogoliubovMode::v(double x) const { return std::polar(1.0, k_ * x) * v_envelope(x); }

cplx BogoliubovMode::u_plus_v(double x) const {
  const double t = std::tanh(x);
  const double c = std::cosh(x);
  const cplx bracket = 2.0 * k_ * k_ * cplx(0.5 * k_, t) + 2.0 * k_ / (c * c);
  return std::polar(1.0, k_ * x) * prefactor_ * bracket;
}

double BogoliubovMode::asymptotic_norm() const {
  // |u|^2 - |v|^2 -> pref^2 * 8 k^2 eps (k^2/4 + 1).
  return prefactor_ * prefactor_ * 8.0 * k_ * k_ * energy_ * (0.25 * k_ * k_ + 1.0);
}

BogoliubovMode mode_profiles(double k) { return BogoliubovMode(k); }

double closed_form_resonant_wavevector(double omega) {
  if (!(omega > 0.0)) throw DomainError("resonant_wavevector: omega must be positive");
  const double w2 = omega * omega;
  return std::sqrt(w2 / (1.0 + std::sqrt(1.0 + w2)));
}

double resonant_wavevector(double omega) {
  if (!(omega > 0.0)) throw DomainError("resonant_wavevector: omega must be positive");
  // eps_k >= sqrt(2) k and eps_k >= k^2 bound the root from above.
  const double hi = std::min(omega / std::sqrt(2.0), std::sqrt(omega)) * (1.0 + 1e-9) + 1e-300;
  return numerics::find_root([omega](double k) { return dispersion(k) - omega; }, 0.0, hi,
                             1e-15 * std::max(hi, 1e-300));
}

}  // namespace slowsound::bogoliubov
