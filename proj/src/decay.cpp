#include "slowsound/decay.hpp"

#include <algorithm>
#include <cmath>

#include "slowsound/bogoliubov.hpp"
#include "slowsound/errors.hpp"

namespace slowsound::decay {

using numerics::kPi;

double DecayConfig::resolved_n0(const params::ReducedParams& p) const {
  if (n0_density) return *n0_density;
  return std::sqrt(2.0) * p.depletion_number;
}

namespace {

// y / sinh(y), continuous at 0.
double y_over_sinh(double y) {
  if (std::abs(y) < 1e-4) return 1.0 - y * y / 6.0;
  if (y > 700.0) return 0.0;
  return y / std::sinh(y);
}

// (exp(z) - 1) / z.
cplx phi1(cplx z) {
  if (std::abs(z) < 1e-5) return 1.0 + z * (0.5 + z / 6.0);
  return (std::exp(z) - 1.0) / z;
}

// d/dz phi1(z).
cplx phi1_prime(cplx z) {
  if (std::abs(z) < 1e-3) return 0.5 + z * (1.0 / 3.0 + z / 8.0);
  return (std::exp(z) * (z - 1.0) + 1.0) / (z * z);
}

void check_which(int which) {
  if (which != 0 && which != 1) throw DomainError("decay: transition index must be 0 or 1");
}

}  // namespace

RateValue gamma_closed(const params::ReducedParams& p, double omega, int which,
                       const DecayConfig& cfg) {
  check_which(which);
  if (!(omega >= 0.0)) throw DomainError("gamma_closed: omega must be non-negative");
  const double w = omega;
  const double eta = std::sqrt(1.0 + w * w);
  const double eta_m1 = w * w / (1.0 + eta);
  // (eta - 1) csch^2(pi sqrt(eta - 1)/2) = (4/pi^2) (y/sinh y)^2.
  const double y = 0.5 * kPi * std::sqrt(eta_m1);
  const double ys = y_over_sinh(y);
  const double envelope = 4.0 / (kPi * kPi) * ys * ys;

  const double g12 = p.coupling_ratio / p.depletion_number;
  const double pref = kPi * cfg.resolved_n0(p) * g12 * g12 / (eta * std::sqrt(1.0 + eta));

  RateValue r;
  r.degenerate = eta_m1 <= 1e-12;
  if (which == 0) {
    const double b = 8.0 * eta + 3.0 * (-2.0 + 5.0 * w);
    r.value = pref / 76800.0 * (eta - 5.0) * (eta - 5.0) * b * b * envelope;
  } else {
    const double s = std::sqrt(eta_m1 * (eta + 1.0));  // sqrt(eta^2 - 1)
    const double bracket = -1956.0 + w * w * (-591.0 + 56.0 * s + 29.0 * eta) +
                           4.0 * (505.0 * eta + 7.0 * s * (107.0 - 39.0 * eta));
    r.value = pref / cfg.gamma1_denominator * bracket * bracket * envelope;
  }
  return r;
}

double mode_density(double omega, double box_length) {
  const double eta = std::sqrt(1.0 + omega * omega);
  return box_length / (2.0 * kPi * std::sqrt(2.0)) * std::sqrt(1.0 + eta) / eta;
}

double gamma_integral(const params::ReducedParams& p, double omega, int which,
                      coupling::CouplingMode mode, const qutrit::ImpurityStates* states) {
  check_which(which);
  if (!(omega > 0.0)) throw DomainError("gamma_integral: no resonant phonon for omega <= 0");
  const double k = bogoliubov::resonant_wavevector(omega);
  const cplx g = coupling::interband(which, k, p, mode, states);
  // 2 pi rho(omega) |g|^2 / L: the box length cancels.
  return 2.0 * kPi * mode_density(omega, 1.0) * std::norm(g);
}

DecayRates compute_rates(const params::ReducedParams& p, const DecayConfig& cfg) {
  const auto s = qutrit::require_spectrum(p);
  DecayRates r;
  r.omega0 = s.omega0;
  r.omega1 = s.omega1;
  r.eta0 = std::sqrt(1.0 + s.omega0 * s.omega0);
  r.eta1 = std::sqrt(1.0 + s.omega1 * s.omega1);
  if (cfg.mode == coupling::CouplingMode::closed) {
    const auto g0 = gamma_closed(p, s.omega0, 0, cfg);
    const auto g1 = gamma_closed(p, s.omega1, 1, cfg);
    r.gamma0 = g0.value;
    r.gamma1 = g1.value;
    r.degenerate = g0.degenerate || g1.degenerate;
  } else {
    const auto states = qutrit::ImpurityStates::from_params(p);
    r.gamma0 = gamma_integral(p, s.omega0, 0, cfg.mode, &states);
    r.gamma1 = gamma_integral(p, s.omega1, 1, cfg.mode, &states);
  }
  return r;
}

// ---------------------------------------------------------------------------

CascadeGrid make_cascade_grid(const params::ReducedParams& p, const DecayRates& rates,
                              double half_width, double spacing) {
  const double gmin = std::min(rates.gamma0, rates.gamma1);
  if (!(gmin > 0.0)) throw DomainError("cascade grid: rates must be positive");
  if (!(spacing > 0.0) || spacing >= gmin / 5.0) {
    throw ResolutionError("cascade grid: frequency spacing must stay below min(gamma)/5",
                          gmin / 6.0);
  }
  const double lowest = std::min(rates.omega0, rates.omega1);
  if (!(half_width > 0.0) || half_width >= lowest) {
    throw DomainError("cascade grid: half width must be positive and below the lower transition");
  }
  const auto half = static_cast<long>(std::floor(half_width / spacing));
  CascadeGrid g;
  g.spacing = spacing;
  auto fill = [&](double omega_c, int which, std::vector<double>& det, std::vector<cplx>& cpl,
                  std::vector<double>& kv) {
    for (long j = -half; j <= half; ++j) {
      const double d = static_cast<double>(j) * spacing;
      const double w = omega_c + d;
      const double k = bogoliubov::resonant_wavevector(w);
      const cplx gk = which == 0 ? coupling::g0_closed(k, p) : coupling::g1_closed(k, p);
      // Box mode coupling g/sqrt(L) times sqrt(rho dw); L cancels.
      const double weight = std::sqrt(mode_density(w, 1.0) * spacing);
      det.push_back(d);
      cpl.push_back(gk * weight);
      kv.push_back(k);
    }
  };
  fill(rates.omega1, 1, g.detuning_k, g.coupling_k, g.wavevector_k);
  fill(rates.omega0, 0, g.detuning_p, g.coupling_p, g.wavevector_p);
  return g;
}

CascadeGrid make_cascade_grid(const params::ReducedParams& p, const DecayRates& rates,
                              const GridOptions& opt) {
  const double gsum = rates.gamma0 + rates.gamma1;
  double half_width = opt.half_width_factor * gsum;
  const double lowest = std::min(rates.omega0, rates.omega1);
  half_width = std::min(half_width, 0.9 * lowest);
  const double spacing = std::min(rates.gamma0, rates.gamma1) / opt.spacing_factor;
  return make_cascade_grid(p, rates, half_width, spacing);
}

Cascade::Cascade(DecayRates rates, CascadeGrid grid)
    : rates_(rates), grid_(std::move(grid)) {}

cplx Cascade::b_k(std::size_t j, double t) const {
  const cplx d(-(rates_.gamma1 - rates_.gamma0) / 2.0, grid_.detuning_k[j]);
  return cplx(0.0, -1.0) * std::conj(grid_.coupling_k[j]) * std::exp(-rates_.gamma0 * t / 2.0) *
         t * phi1(d * t);
}

cplx Cascade::b_kp(std::size_t j, std::size_t l, double t) const {
  const cplx d(-(rates_.gamma1 - rates_.gamma0) / 2.0, grid_.detuning_k[j]);
  const cplx s(-rates_.gamma0 / 2.0, grid_.detuning_p[l]);
  const cplx g = -std::conj(grid_.coupling_p[l]) * std::conj(grid_.coupling_k[j]);
  if (std::abs(d) * t < 1e-6) return g * t * t * phi1_prime(s * t);
  return g / d * (t * phi1((s + d) * t) - t * phi1(s * t));
}

CascadeAmplitudes Cascade::amplitudes(double t, bool with_two_phonon) const {
  if (t < 0.0) throw DomainError("cascade: t must be non-negative");
  CascadeAmplitudes out;
  out.t = t;
  out.a = std::exp(-rates_.gamma1 * t / 2.0);
  const std::size_t nk = grid_.detuning_k.size();
  const std::size_t np = grid_.detuning_p.size();
  out.b_k.resize(nk);
  for (std::size_t j = 0; j < nk; ++j) out.b_k[j] = b_k(j, t);
  if (with_two_phonon) {
    out.b_kp.resize(nk * np);
    for (std::size_t j = 0; j < nk; ++j) {
      for (std::size_t l = 0; l < np; ++l) out.b_kp[j * np + l] = b_kp(j, l, t);
    }
  }
  return out;
}

CascadePopulations Cascade::populations(double t) const {
  if (t < 0.0) throw DomainError("cascade: t must be non-negative");
  CascadePopulations pop;
  pop.t = t;
  pop.upper = std::exp(-rates_.gamma1 * t);
  const std::size_t nk = grid_.detuning_k.size();
  const std::size_t np = grid_.detuning_p.size();
  for (std::size_t j = 0; j < nk; ++j) pop.one_phonon += std::norm(b_k(j, t));
  double two = 0.0;
  for (std::size_t j = 0; j < nk; ++j) {
    double row = 0.0;
    for (std::size_t l = 0; l < np; ++l) row += std::norm(b_kp(j, l, t));
    two += row;
  }
  pop.two_phonon = two;
  return pop;
}

std::vector<double> Cascade::first_phonon_spectrum() const {
  const std::size_t nk = grid_.detuning_k.size();
  const std::size_t np = grid_.detuning_p.size();
  std::vector<double> out(nk, 0.0);
  for (std::size_t j = 0; j < nk; ++j) {
    const cplx d(-(rates_.gamma1 - rates_.gamma0) / 2.0, grid_.detuning_k[j]);
    for (std::size_t l = 0; l < np; ++l) {
      const cplx s(-rates_.gamma0 / 2.0, grid_.detuning_p[l]);
      const cplx b = -std::conj(grid_.coupling_p[l]) * std::conj(grid_.coupling_k[j]) /
                     (s * (s + d));
      out[j] += std::norm(b);
    }
  }
  return out;
}

std::vector<double> Cascade::one_phonon_distribution(double t) const {
  std::vector<double> out(grid_.detuning_k.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = std::norm(b_k(j, t));
  return out;
}

std::vector<CascadePopulations> cascade_ode_populations(const Cascade& c,
                                                        const std::vector<double>& times,
                                                        double dt_target) {
  const auto& g = c.grid();
  const double g0 = c.rates().gamma0;
  const std::size_t n = g.detuning_k.size();
  // State: a, C_j = B_j exp(-i Delta_j t) (rotating frame), two-phonon population.
  numerics::ComplexSeries y(n + 2, cplx(0.0));
  y[0] = 1.0;
  const cplx mi(0.0, -1.0);
  numerics::OdeRhs rhs = [&](double, std::span<const cplx> s, std::span<cplx> ds) {
    cplx da = 0.0;
    double pop = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const cplx cj = s[j + 1];
      da += g.coupling_k[j] * cj;
      ds[j + 1] = cplx(-0.5 * g0, -g.detuning_k[j]) * cj + mi * std::conj(g.coupling_k[j]) * s[0];
      pop += std::norm(cj);
    }
    ds[0] = mi * da;
    ds[n + 1] = g0 * pop;
  };

  std::vector<double> sorted = times;
  std::sort(sorted.begin(), sorted.end());
  std::vector<CascadePopulations> out;
  double t = 0.0;
  for (double target : sorted) {
    const double span = target - t;
    if (span > 0.0) {
      const double steps = std::ceil(span / dt_target);
      y = numerics::rk4_evolve(std::move(y), rhs, t, target, span / steps);
      t = target;
    }
    CascadePopulations pop;
    pop.t = target;
    pop.upper = std::norm(y[0]);
    for (std::size_t j = 0; j < n; ++j) pop.one_phonon += std::norm(y[j + 1]);
    pop.two_phonon = y[n + 1].real();
    out.push_back(pop);
  }
  return out;
}

double full_width_half_max(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 3) throw ShapeError("fwhm: mismatched samples");
  const auto it = std::max_element(y.begin(), y.end());
  const auto im = static_cast<std::size_t>(it - y.begin());
  const double half = 0.5 * *it;
  std::size_t lo = im;
  while (lo > 0 && y[lo] > half) --lo;
  std::size_t hi = im;
  while (hi + 1 < y.size() && y[hi] > half) ++hi;
  if (y[lo] > half || y[hi] > half) throw DomainError("fwhm: peak not resolved inside the sweep");
  auto cross = [&](std::size_t a, std::size_t b) {
    return x[a] + (half - y[a]) * (x[b] - x[a]) / (y[b] - y[a]);
  };
  return cross(hi - 1, hi) - cross(lo, lo + 1);
}

}  // namespace slowsound::decay
