#include "slowsound/gpe.hpp"

#include <algorithm>
#include <cmath>

#include "slowsound/errors.hpp"
#include "slowsound/qutrit.hpp"

namespace slowsound::gpe {

using numerics::FftPlan;
using numerics::kPi;

Field1D::Field1D(Grid1D g, std::vector<cplx> samples) : grid(g), psi(std::move(samples)) {
  if (psi.size() != grid.size()) throw ShapeError("Field1D: sample count does not match grid");
}

double Field1D::norm() const {
  double s = 0.0;
  for (const auto& v : psi) s += std::norm(v);
  return s * grid.spacing();
}

std::vector<double> Field1D::density() const {
  std::vector<double> d(psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i) d[i] = std::norm(psi[i]);
  return d;
}

Couplings Couplings::from_params(const params::ReducedParams& p) {
  Couplings c;
  c.depletion_number = p.depletion_number;
  c.g11 = 1.0 / p.depletion_number;
  c.well_depth = p.nu * (p.nu + 1.0) / (2.0 * p.mass_ratio);
  c.g21 = c.well_depth / p.depletion_number;
  c.g12 = c.g21;
  c.impurity_mass = p.mass_ratio;
  return c;
}

Field1D imprint_soliton(const Grid1D& grid, const params::ReducedParams& p) {
  if (grid.length() < 40.0) throw DomainError("imprint_soliton: box shorter than 40 healing lengths");
  const double amp = std::sqrt(p.depletion_number);
  const double half = 0.5 * grid.length();
  std::vector<cplx> s(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid.x(i);
    s[i] = amp * std::tanh(x) * std::tanh(half - std::abs(x));
  }
  return Field1D(grid, std::move(s));
}

namespace {

std::vector<double> kinetic_symbol(const Grid1D& g, double mass) {
  auto k = g.wavenumbers();
  for (auto& v : k) v = 0.5 * v * v / mass;
  return k;
}

void check_finite(const std::vector<cplx>& v, const char* what) {
  for (const auto& z : v) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw DivergenceError(std::string(what) + ": non-finite field");
    }
  }
}

// <a| T |b> type helper: applies -1/(2m) d^2/dx^2 spectrally.
std::vector<cplx> apply_kinetic(const FftPlan& plan, const std::vector<double>& t_symbol,
                                const std::vector<cplx>& f) {
  std::vector<cplx> w = f;
  plan.forward(w);
  for (std::size_t i = 0; i < w.size(); ++i) w[i] *= t_symbol[i];
  plan.inverse(w);
  return w;
}

double inner_real(const std::vector<cplx>& a, const std::vector<cplx>& b, double dx) {
  cplx s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s.real() * dx;
}

}  // namespace

Fields evolve_real(Fields f, const params::ReducedParams& p, double dt, std::size_t steps,
                   Backreaction backreaction) {
  const Grid1D& g = f.condensate.grid;
  if (f.impurity.grid.size() != g.size()) throw ShapeError("evolve_real: grids differ");
  const double dx = g.spacing();
  if (!(dt > 0.0) || dt > 0.1 * dx * dx * (1.0 + 1e-12)) {
    throw DomainError("evolve_real: dt must satisfy 0 < dt <= 0.1 dx^2");
  }
  const auto c = Couplings::from_params(p);
  const FftPlan plan(g.size());
  const auto tc = kinetic_symbol(g, 1.0);
  const auto ti = kinetic_symbol(g, c.impurity_mass);
  std::vector<cplx> kc(g.size()), ki(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    kc[i] = std::polar(1.0, -tc[i] * dt);
    ki[i] = std::polar(1.0, -ti[i] * dt);
  }
  const double n_c0 = f.condensate.norm();
  const double n_i0 = f.impurity.norm();
  const double g12 = backreaction == Backreaction::on ? c.g12 : 0.0;

  auto& psi = f.condensate.psi;
  auto& phi = f.impurity.psi;
  auto potential_half = [&] {
    for (std::size_t i = 0; i < psi.size(); ++i) {
      const double nc = std::norm(psi[i]);
      const double ni = std::norm(phi[i]);
      const double vc = c.g11 * nc - 1.0 + g12 * ni;
      const double vi = c.g21 * (nc - c.depletion_number);
      psi[i] *= std::polar(1.0, -0.5 * dt * vc);
      phi[i] *= std::polar(1.0, -0.5 * dt * vi);
    }
  };
  for (std::size_t s = 0; s < steps; ++s) {
    potential_half();
    plan.forward(psi);
    plan.forward(phi);
    for (std::size_t i = 0; i < psi.size(); ++i) {
      psi[i] *= kc[i];
      phi[i] *= ki[i];
    }
    plan.inverse(psi);
    plan.inverse(phi);
    potential_half();
    if ((s + 1) % 1000 == 0 || s + 1 == steps) {
      check_finite(psi, "evolve_real");
      check_finite(phi, "evolve_real");
      const double dc = std::abs(f.condensate.norm() - n_c0) / std::max(n_c0, 1e-300);
      const double di = n_i0 > 0.0 ? std::abs(f.impurity.norm() - n_i0) / n_i0 : 0.0;
      if (dc > 1e-4 || di > 1e-4) {
        throw DivergenceError("evolve_real: norm drift " + std::to_string(std::max(dc, di)) +
                              " after " + std::to_string(s + 1) + " steps");
      }
    }
  }
  return f;
}

double energy(const Fields& f, const params::ReducedParams& p) {
  const Grid1D& g = f.condensate.grid;
  const auto c = Couplings::from_params(p);
  const FftPlan plan(g.size());
  const double dx = g.spacing();
  const auto& psi = f.condensate.psi;
  const auto& phi = f.impurity.psi;
  double e = inner_real(psi, apply_kinetic(plan, kinetic_symbol(g, 1.0), psi), dx);
  e += inner_real(phi, apply_kinetic(plan, kinetic_symbol(g, c.impurity_mass), phi), dx);
  double local = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    const double nc = std::norm(psi[i]);
    const double ni = std::norm(phi[i]);
    local += 0.5 * c.g11 * nc * nc - nc + c.g21 * (nc - c.depletion_number) * ni;
  }
  return e + local * dx;
}

// ---------------------------------------------------------------------------

namespace {

double exact_state(int n, double nu, double x) {
  // Exact Poschl-Teller bound states: sech^nu and tanh sech^(nu-1).
  const double ls = qutrit::log_sech(x);
  if (n == 0) return std::exp(nu * ls);
  if (n == 1) return std::tanh(x) * std::exp((nu - 1.0) * ls);
  // Third state: (nu - 1) tanh^2 ... form for index nu - 2 Gegenbauer.
  const double t = std::tanh(x);
  return (1.0 - (2.0 * nu - 1.0) * t * t) * std::exp((nu - 2.0) * ls);
}

double squared_overlap(const std::vector<cplx>& num, const std::vector<double>& ref) {
  double s = 0.0;
  double nn = 0.0;
  double nr = 0.0;
  for (std::size_t i = 0; i < num.size(); ++i) {
    s += num[i].real() * ref[i];
    nn += std::norm(num[i]);
    nr += ref[i] * ref[i];
  }
  return s * s / (nn * nr);
}

}  // namespace

std::vector<EigenResult> imaginary_time_eigenstates(const params::ReducedParams& p, int n_states,
                                                    const SolverOptions& opt) {
  if (n_states < 1) throw DomainError("imaginary_time_eigenstates: need at least one state");
  const Grid1D g(opt.length, opt.points, true);
  const double dx = g.spacing();
  const auto c = Couplings::from_params(p);
  const FftPlan plan(g.size());
  const auto t_sym = kinetic_symbol(g, c.impurity_mass);
  const std::size_t n = g.size();

  // Frozen well g21 (|psi_sol|^2 - n0) = -depth sech^2(x).
  std::vector<double> v(n), half_v(n), kin(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double s = std::exp(qutrit::log_sech(g.x(i)));
    v[i] = -c.well_depth * s * s;
    half_v[i] = std::exp(-0.5 * opt.dtau * v[i]);
    kin[i] = std::exp(-t_sym[i] * opt.dtau);
  }

  std::vector<std::vector<cplx>> states(static_cast<std::size_t>(n_states),
                                        std::vector<cplx>(n));
  for (int s = 0; s < n_states; ++s) {
    for (std::size_t i = 0; i < n; ++i) {
      const double x = g.x(i);
      states[s][i] = std::pow(x, s) * std::exp(-0.25 * x * x);
    }
  }
  auto orthonormalize = [&] {
    for (int s = 0; s < n_states; ++s) {
      auto& f = states[s];
      for (int q = 0; q < s; ++q) {
        const double proj = inner_real(states[q], f, dx);
        for (std::size_t i = 0; i < n; ++i) f[i] -= proj * states[q][i];
      }
      const double nrm = std::sqrt(inner_real(f, f, dx));
      for (auto& z : f) z /= nrm;
    }
  };
  auto rayleigh = [&](const std::vector<cplx>& f, double* residual) {
    auto hf = apply_kinetic(plan, t_sym, f);
    for (std::size_t i = 0; i < n; ++i) hf[i] += v[i] * f[i];
    const double e = inner_real(f, hf, dx);
    if (residual) {
      double r = 0.0;
      for (std::size_t i = 0; i < n; ++i) r += std::norm(hf[i] - e * f[i]);
      *residual = std::sqrt(r * dx);
    }
    return e;
  };
  orthonormalize();

  std::vector<double> energies(n_states), prev(n_states);
  std::vector<bool> converged(n_states, false);
  std::vector<std::size_t> conv_step(n_states, 0);
  for (int s = 0; s < n_states; ++s) prev[s] = rayleigh(states[s], nullptr);
  const std::size_t check_every = 20;
  std::size_t step = 0;
  bool all = false;
  while (step < opt.max_steps && !all) {
    for (auto& f : states) {
      for (std::size_t i = 0; i < n; ++i) f[i] *= half_v[i];
      plan.forward(f);
      for (std::size_t i = 0; i < n; ++i) f[i] *= kin[i];
      plan.inverse(f);
      // The frozen Hamiltonian is real; dropping round-off imaginary parts
      // keeps i*phi_0 from sneaking in as an "orthogonal" state.
      for (std::size_t i = 0; i < n; ++i) f[i] = f[i].real() * half_v[i];
    }
    orthonormalize();
    ++step;
    if (step % check_every == 0) {
      all = true;
      for (int s = 0; s < n_states; ++s) {
        energies[s] = rayleigh(states[s], nullptr);
        const double drift = std::abs(energies[s] - prev[s]) / static_cast<double>(check_every);
        prev[s] = energies[s];
        // A state only counts once every state below it has settled.
        const bool ok = drift < opt.tolerance && (s == 0 || converged[s - 1]);
        if (ok && !converged[s]) conv_step[s] = step;
        converged[s] = ok;
        all = all && ok;
      }
    }
  }

  std::vector<EigenResult> out;
  const qutrit::ImpurityStates trial(p.exponent_alpha);
  for (int s = 0; s < n_states; ++s) {
    EigenResult r{.n = s, .state = Field1D(g, states[s])};
    r.energy = rayleigh(states[s], &r.residual);
    r.analytic_energy = -(p.nu - s) * (p.nu - s) / (2.0 * p.mass_ratio);
    r.converged = converged[s];
    r.steps = converged[s] ? conv_step[s] : step;
    std::vector<double> ref(n);
    if (s < 3) {
      for (std::size_t i = 0; i < n; ++i) ref[i] = trial(s, g.x(i));
      r.overlap_trial = squared_overlap(states[s], ref);
    }
    if (s < 3 && p.nu > s) {
      for (std::size_t i = 0; i < n; ++i) ref[i] = exact_state(s, p.nu, g.x(i));
      r.overlap_exact = squared_overlap(states[s], ref);
    }
    out.push_back(std::move(r));
  }
  if (!opt.allow_partial) {
    for (const auto& r : out) {
      if (!r.converged) {
        throw ConvergenceError("imaginary_time_eigenstates: state " + std::to_string(r.n) +
                                   " not converged within the step budget",
                               r.residual);
      }
    }
  }
  return out;
}

CoupledResult coupled_ground_state(const params::ReducedParams& p, double impurity_norm,
                                   const SolverOptions& opt) {
  if (impurity_norm < 0.0) throw DomainError("coupled_ground_state: negative impurity norm");
  const Grid1D g(opt.length, opt.points, true);
  const double dx = g.spacing();
  const auto c = Couplings::from_params(p);
  const FftPlan plan(g.size());
  const std::size_t n = g.size();
  const double h = opt.coupled_dtau;
  const auto tc = kinetic_symbol(g, 1.0);
  const auto ti = kinetic_symbol(g, c.impurity_mass);

  Field1D psi0 = imprint_soliton(g, p);
  std::vector<cplx> psi = psi0.psi;
  std::vector<cplx> phi(n);
  for (std::size_t i = 0; i < n; ++i) phi[i] = std::exp(p.nu * qutrit::log_sech(g.x(i)));
  auto renorm_impurity = [&] {
    double s = 0.0;
    for (const auto& z : phi) s += std::norm(z);
    s *= dx;
    const double scale = s > 0.0 ? std::sqrt(impurity_norm / s) : 0.0;
    for (auto& z : phi) z *= scale;
  };
  auto enforce_odd = [&] {
    // x_i -> -x_i maps index i to n - i (index 0 is its own image).
    psi[0] = 0.0;
    psi[n / 2] = 0.0;
    for (std::size_t i = 1; i < n / 2; ++i) {
      const double a = 0.5 * (psi[i].real() - psi[n - i].real());
      psi[i] = a;
      psi[n - i] = -a;
    }
  };
  renorm_impurity();

  // Gradient flow with the kinetic term taken implicitly:
  //   f <- (1 + h T)^-1 (f - h (V - E) f).
  // Its fixed point is the discrete stationary state for any step h.
  std::vector<cplx> wc(n), wi(n), hphi(n);
  std::size_t step = 0;
  double change = 0.0;
  double e_imp = 0.0;
  bool done = false;
  while (step < opt.max_steps && !done) {
    // Rayleigh quotient of the impurity for the eigenvalue shift.
    if (impurity_norm > 0.0) {
      hphi = apply_kinetic(plan, ti, phi);
      double num = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        num += (std::conj(phi[i]) *
                (hphi[i] + c.g21 * (std::norm(psi[i]) - c.depletion_number) * phi[i]))
                   .real();
      }
      e_imp = num * dx / impurity_norm;
    }
    for (std::size_t i = 0; i < n; ++i) {
      const double nc = std::norm(psi[i]);
      const double ni = std::norm(phi[i]);
      wc[i] = psi[i] - h * (c.g11 * nc - 1.0 + c.g12 * ni) * psi[i];
      wi[i] = phi[i] - h * (c.g21 * (nc - c.depletion_number) - e_imp) * phi[i];
    }
    plan.forward(wc);
    plan.forward(wi);
    for (std::size_t i = 0; i < n; ++i) {
      wc[i] /= 1.0 + h * tc[i];
      wi[i] /= 1.0 + h * ti[i];
    }
    plan.inverse(wc);
    plan.inverse(wi);
    change = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      change = std::max(change, std::abs(wc[i].real() - psi[i].real()));
      psi[i] = wc[i].real();
      phi[i] = wi[i].real();
    }
    change /= h * std::sqrt(c.depletion_number);
    enforce_odd();
    renorm_impurity();
    ++step;
    done = change < opt.tolerance;
  }
  if (!done && !opt.allow_partial) {
    throw ConvergenceError("coupled_ground_state: not converged within the step budget", change);
  }
  check_finite(psi, "coupled_ground_state");

  CoupledResult r{.fields = {Field1D(g, psi), Field1D(g, phi)}};
  r.steps = step;
  // Dip profile n0 - |psi|^2 over the half box around the soliton.
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(g.x(i)) > 0.25 * g.length()) continue;
    const double dip0 = c.depletion_number - std::norm(psi0.psi[i]);
    const double dip = c.depletion_number - std::norm(psi[i]);
    num += (dip - dip0) * (dip - dip0);
    den += dip0 * dip0;
  }
  r.deformation = std::sqrt(num / den);
  r.condensation = r.deformation > 0.2;
  r.impurity_energy = e_imp;
  return r;
}

std::vector<double> autocorrelation_lines(const std::vector<cplx>& ac, double sample_dt,
                                          std::size_t max_lines) {
  if (ac.size() < 8) throw ShapeError("autocorrelation_lines: series too short");
  std::size_t n = 1;
  while (n < 4 * ac.size()) n <<= 1;
  std::vector<cplx> w(n, 0.0);
  const double m = static_cast<double>(ac.size() - 1);
  for (std::size_t i = 0; i < ac.size(); ++i) {
    const double hann = 0.5 - 0.5 * std::cos(2.0 * kPi * static_cast<double>(i) / m);
    // conj turns exp(-i E t) into a line at +E in the forward transform.
    w[i] = std::conj(ac[i]) * hann;
  }
  const FftPlan plan(n);
  plan.forward(w);
  std::vector<double> mag(n);
  for (std::size_t i = 0; i < n; ++i) mag[i] = std::abs(w[i]);
  const double dw = 2.0 * kPi / (static_cast<double>(n) * sample_dt);
  struct Line {
    double energy;
    double height;
  };
  std::vector<Line> lines;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = mag[(i + n - 1) % n];
    const double b = mag[i];
    const double c = mag[(i + 1) % n];
    if (b > a && b >= c) {
      const double den = a - 2.0 * b + c;
      const double shift = den != 0.0 ? 0.5 * (a - c) / den : 0.0;
      const double bin = (i < n / 2 ? static_cast<double>(i) : static_cast<double>(i) - n) + shift;
      // Forward transform of exp(+i E t) peaks at bin E / dw.
      lines.push_back({bin * dw, b});
    }
  }
  std::sort(lines.begin(), lines.end(), [](const Line& x, const Line& y) { return x.height > y.height; });
  if (lines.size() > max_lines) lines.resize(max_lines);
  std::vector<double> out;
  for (const auto& l : lines) out.push_back(l.energy);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace slowsound::gpe
