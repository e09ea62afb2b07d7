#include <algorithm>
#include <cmath>
#include <variant>

#include "slowsound/bloch.hpp"
#include "slowsound/errors.hpp"
#include "slowsound/numerics.hpp"

namespace slowsound::bloch {

using numerics::kPi;

namespace {

// Group velocity from a fine central difference of the model, independent of any sweep.
double group_velocity_at(const SusceptibilityModel& m, double delta, double omega_c,
                         DeltaMode mode) {
  const double h = 1e-4 * m.rates.gamma0;
  const double slope =
      (m.chi(delta + h, omega_c, mode).real() - m.chi(delta - h, omega_c, mode).real()) / (2.0 * h);
  const double omega_p = m.omega0 + delta;
  return 1.0 / (1.0 + 0.5 * m.chi(delta, omega_c, mode).real() + 0.5 * omega_p * slope);
}

// Peak position of |samples| refined by a parabola through the top three points.
double peak_time(const std::vector<double>& t, const std::vector<double>& y) {
  const auto it = std::max_element(y.begin(), y.end());
  const auto j = static_cast<std::size_t>(it - y.begin());
  if (j == 0 || j + 1 == y.size()) return t[j];
  const double a = y[j - 1];
  const double b = y[j];
  const double c = y[j + 1];
  const double den = a - 2.0 * b + c;
  const double shift = den != 0.0 ? 0.5 * (a - c) / den : 0.0;
  return t[j] + shift * (t[j + 1] - t[j]);
}

}  // namespace

PulseResult propagate_envelope(const SusceptibilityModel& m, const PulseConfig& cfg) {
  if (!(cfg.medium_length >= 0.0)) throw DomainError("propagate_envelope: negative medium length");
  if (!(cfg.bandwidth > 0.0)) throw DomainError("propagate_envelope: bandwidth must be positive");
  if (!numerics::is_power_of_two(cfg.points) || cfg.points < 16) {
    throw ShapeError("propagate_envelope: point count must be a power of two >= 16");
  }

  PulseResult r;
  r.analytic_group_velocity = group_velocity_at(m, 0.0, cfg.omega_c, cfg.mode);

  const auto window = transparency_width(
      susceptibility(m, SweepSpec::around_resonance(m.rates.gamma0), cfg.omega_c, cfg.mode));
  r.bandwidth_warning = !std::holds_alternative<double>(window) ||
                        cfg.bandwidth > std::get<double>(window);

  // Intensity spectrum FWHM = 2 sqrt(ln 2) / sigma_t for exp(-t^2 / 2 sigma_t^2).
  const double sigma_t = 2.0 * std::sqrt(std::log(2.0)) / cfg.bandwidth;
  const double tau_est = cfg.medium_length * std::abs(1.0 / r.analytic_group_velocity - 1.0);
  const double span = 16.0 * sigma_t + 2.0 * tau_est;
  const std::size_t n = cfg.points;
  const double dt = span / static_cast<double>(n);
  const double t_in = -0.5 * tau_est;

  r.time.resize(n);
  numerics::ComplexSeries field(n);
  for (std::size_t j = 0; j < n; ++j) {
    r.time[j] = -0.5 * span + static_cast<double>(j) * dt;
    const double u = (r.time[j] - t_in) / sigma_t;
    field[j] = std::exp(-0.5 * u * u);
  }
  numerics::FftPlan plan(n);
  numerics::ComplexSeries spectrum = field;
  plan.forward(spectrum);

  // Bin k carries exp(+i w_k t); the envelope convention exp(-i Delta t)
  // puts it at detuning Delta = -w_k.
  std::vector<cplx> chi(n);
  for (std::size_t k = 0; k < n; ++k) {
    const long signed_k = k < n / 2 ? static_cast<long>(k) : static_cast<long>(k) - static_cast<long>(n);
    const double delta = -2.0 * kPi * static_cast<double>(signed_k) / span;
    chi[k] = (m.omega0 + delta) * m.chi(delta, cfg.omega_c, cfg.mode);
  }
  auto propagate = [&](double x) {
    numerics::ComplexSeries s = spectrum;
    for (std::size_t k = 0; k < n; ++k) s[k] *= std::exp(cplx(0.0, 0.5 * x) * chi[k]);
    plan.inverse(s);
    std::vector<double> mag(n);
    for (std::size_t j = 0; j < n; ++j) mag[j] = std::abs(s[j]);
    return mag;
  };

  r.input.resize(n);
  for (std::size_t j = 0; j < n; ++j) r.input[j] = std::abs(field[j]);
  r.output = propagate(cfg.medium_length);
  const std::size_t snaps = std::max<std::size_t>(cfg.snapshots, 2);
  for (std::size_t s = 0; s < snaps; ++s) {
    const double x = cfg.medium_length * static_cast<double>(s) / static_cast<double>(snaps - 1);
    r.snapshot_x.push_back(x);
    r.profiles.push_back(s + 1 == snaps ? r.output : propagate(x));
  }

  r.delay = peak_time(r.time, r.output) - peak_time(r.time, r.input);
  r.measured_group_velocity = cfg.medium_length / (cfg.medium_length + r.delay);
  double e_in = 0.0;
  double e_out = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    e_in += r.input[j] * r.input[j];
    e_out += r.output[j] * r.output[j];
  }
  r.transmitted_energy = e_out / e_in;
  return r;
}

}  // namespace slowsound::bloch
