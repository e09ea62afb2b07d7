#include "slowsound/bloch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "slowsound/bogoliubov.hpp"
#include "slowsound/errors.hpp"
#include "slowsound/numerics.hpp"

namespace slowsound::bloch {

using numerics::kPi;
using Mat9 = Eigen::Matrix<cplx, 9, 9>;
using Vec9 = Eigen::Matrix<cplx, 9, 1>;

std::string_view to_string(DeltaMode m) { return m == DeltaMode::track ? "track" : "fixed"; }

DeltaMode parse_delta_mode(std::string_view s) {
  if (s == "track") return DeltaMode::track;
  if (s == "fixed") return DeltaMode::fixed;
  throw ConfigError("unknown delta mode '" + std::string(s) + "' (track|fixed)");
}

Coherences steady_state_analytic(const DriveConfig& d, const Rates& r) {
  const cplx i(0.0, 1.0);
  const cplx probe_arm = r.gamma0 - 2.0 * i * d.delta_p;
  const cplx control_arm = r.gamma1 - 2.0 * i * d.two_photon();
  Coherences c;
  if (d.omega_c == 0.0) {
    // Two-level limit; also covers gamma1 = delta = 0, where the product form is 0/0.
    if (std::abs(probe_arm) == 0.0) {
      throw DomainError("steady_state_analytic: undamped resonance, coherences diverge");
    }
    c.rho21 = i * d.omega_p / probe_arm;
    c.rho31 = 0.0;
    return c;
  }
  const cplx den = probe_arm * control_arm + d.omega_c * d.omega_c;
  if (std::abs(den) == 0.0) {
    throw DomainError("steady_state_analytic: undamped resonance, coherences diverge");
  }
  c.rho21 = i * d.omega_p * control_arm / den;
  c.rho31 = d.omega_c * d.omega_p / den;
  return c;
}

namespace {

Eigen::Matrix3cd hamiltonian(const DriveConfig& d) {
  Eigen::Matrix3cd h = Eigen::Matrix3cd::Zero();
  h(1, 1) = -d.delta_p;
  h(2, 2) = -d.two_photon();
  h(1, 0) = h(0, 1) = -0.5 * d.omega_p;
  h(2, 1) = h(1, 2) = 0.5 * d.omega_c;
  return h;
}

Eigen::Matrix3cd apply_generator(const Eigen::Matrix3cd& h, const Rates& r,
                                 const Eigen::Matrix3cd& rho) {
  const cplx i(0.0, 1.0);
  Eigen::Matrix3cd out = -i * (h * rho - rho * h);
  auto dissipate = [&](int lo, int hi, double gamma) {
    Eigen::Matrix3cd l = Eigen::Matrix3cd::Zero();
    l(lo, hi) = 1.0;
    const Eigen::Matrix3cd ldl = l.adjoint() * l;
    out += gamma * (l * rho * l.adjoint() - 0.5 * (ldl * rho + rho * ldl));
  };
  dissipate(0, 1, r.gamma0);
  dissipate(1, 2, r.gamma1);
  return out;
}

Vec9 vec(const Eigen::Matrix3cd& m) {
  Vec9 v;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) v(3 * a + b) = m(a, b);
  return v;
}

Eigen::Matrix3cd unvec(const Eigen::Ref<const Vec9>& v) {
  Eigen::Matrix3cd m;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) m(a, b) = v(3 * a + b);
  return m;
}

Eigen::Matrix3cd ground_projector() {
  Eigen::Matrix3cd m = Eigen::Matrix3cd::Zero();
  m(0, 0) = 1.0;
  return m;
}

}  // namespace

Mat9 liouvillian(const DriveConfig& d, const Rates& r) {
  const auto h = hamiltonian(d);
  Mat9 l;
  for (int col = 0; col < 9; ++col) {
    Eigen::Matrix3cd basis = Eigen::Matrix3cd::Zero();
    basis(col / 3, col % 3) = 1.0;
    l.col(col) = vec(apply_generator(h, r, basis));
  }
  return l;
}

SteadyState steady_state_lindblad(const DriveConfig& d, const Rates& r) {
  const Mat9 l = liouvillian(d, r);
  Eigen::MatrixXcd a = l;
  Eigen::VectorXcd b = Eigen::VectorXcd::Zero(9);
  a.row(0).setZero();
  a(0, 0) = a(0, 4) = a(0, 8) = 1.0;
  b(0) = 1.0;
  SteadyState s;
  if (d.omega_p == 0.0 && d.omega_c == 0.0) {
    // Without drives every populated level only decays: the ground projector.
    s.rho = ground_projector();
    s.degenerate = true;
    s.residual = (l * vec(s.rho)).cwiseAbs().maxCoeff();
    return s;
  }
  try {
    const Eigen::VectorXcd x = numerics::solve_dense(a, b);
    s.rho = unvec(x);
  } catch (const SingularMatrixError&) {
    s.rho = ground_projector();
    s.degenerate = true;
  }
  s.residual = (l * vec(s.rho)).cwiseAbs().maxCoeff();
  if (!s.degenerate && s.residual > numerics::kSteadyStateTol) {
    throw ConvergenceError("steady_state_lindblad: residual above tolerance", s.residual);
  }
  return s;
}

DensityMatrix3 evolve_density(const DensityMatrix3& rho0, const DriveConfig& d, const Rates& r,
                              double t, double dt) {
  if (!(t >= 0.0) || !(dt > 0.0)) throw DomainError("evolve_density: need t >= 0 and dt > 0");
  const Mat9 l = liouvillian(d, r);
  const Vec9 v0 = vec(rho0);
  numerics::ComplexSeries y(v0.data(), v0.data() + 9);
  if (t == 0.0) return rho0;
  const double steps = std::ceil(t / dt);
  numerics::OdeRhs rhs = [&l](double, std::span<const cplx> s, std::span<cplx> ds) {
    Eigen::Map<const Vec9> in(s.data());
    Eigen::Map<Vec9> out(ds.data());
    out.noalias() = l * in;
  };
  y = numerics::rk4_evolve(std::move(y), rhs, 0.0, t, t / steps);
  return unvec(Eigen::Map<const Vec9>(y.data()));
}

double trace_distance(const DensityMatrix3& a, const DensityMatrix3& b) {
  const Eigen::Matrix3cd diff = a - b;
  const Eigen::Matrix3cd herm = 0.5 * (diff + diff.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> es(herm, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

PhysicalityReport physicality(const DensityMatrix3& rho) {
  PhysicalityReport p;
  p.hermiticity = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  p.trace_error = std::abs(rho.trace() - 1.0);
  const Eigen::Matrix3cd herm = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> es(herm, Eigen::EigenvaluesOnly);
  p.min_eigenvalue = es.eigenvalues().minCoeff();
  return p;
}

// ---------------------------------------------------------------------------

SusceptibilityModel SusceptibilityModel::from_params(const params::ReducedParams& p,
                                                     const decay::DecayRates& rates,
                                                     coupling::CouplingMode mode,
                                                     const qutrit::ImpurityStates* states) {
  SusceptibilityModel m;
  m.soliton_concentration = p.soliton_concentration;
  m.omega0 = rates.omega0;
  m.k_res = bogoliubov::resonant_wavevector(rates.omega0);
  m.g0 = coupling::interband(0, m.k_res, p, mode, states);
  m.rates = {rates.gamma0, rates.gamma1};
  return m;
}

cplx SusceptibilityModel::chi(double delta_p, double omega_c, DeltaMode mode,
                              double delta_c) const {
  const cplx i(0.0, 1.0);
  const double delta = mode == DeltaMode::track ? delta_p + delta_c : 0.0;
  const cplx control_arm = rates.gamma1 - 2.0 * i * delta;
  const cplx den = (rates.gamma0 - 2.0 * i * delta_p) * control_arm + omega_c * omega_c;
  return -i * soliton_concentration * g0 * g0 * control_arm / (omega0 * den);
}

std::vector<double> SweepSpec::grid() const {
  if (points < 2 || !(hi > lo)) throw DomainError("sweep: need at least two points and hi > lo");
  std::vector<double> g(points);
  for (std::size_t j = 0; j < points; ++j) {
    g[j] = lo + (hi - lo) * static_cast<double>(j) / static_cast<double>(points - 1);
  }
  return g;
}

double SweepSpec::spacing() const { return (hi - lo) / static_cast<double>(points - 1); }

SweepSpec SweepSpec::around_resonance(double gamma0, double half_width_factor,
                                      double steps_per_gamma) {
  SweepSpec s;
  s.lo = -half_width_factor * gamma0;
  s.hi = half_width_factor * gamma0;
  s.points = static_cast<std::size_t>(std::llround(2.0 * half_width_factor * steps_per_gamma)) + 1;
  return s;
}

ResponseSpectrum susceptibility(const SusceptibilityModel& m, const SweepSpec& sweep,
                                double omega_c, DeltaMode mode) {
  ResponseSpectrum s;
  s.delta_p = sweep.grid();
  s.omega_c = omega_c;
  s.mode = mode;
  s.chi.reserve(s.delta_p.size());
  s.refractive_index.reserve(s.delta_p.size());
  for (double d : s.delta_p) {
    const cplx c = m.chi(d, omega_c, mode);
    s.chi.push_back(c);
    s.refractive_index.push_back(std::sqrt(1.0 + c));
  }
  return s;
}

void fill_group_velocity(ResponseSpectrum& s, double omega0) {
  const std::size_t n = s.delta_p.size();
  if (n < 3) throw ShapeError("group velocity: need at least three sweep points");
  s.group_velocity.assign(n, 0.0);
  s.masked.assign(n, false);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t a = j == 0 ? 0 : j - 1;
    const std::size_t b = j + 1 == n ? n - 1 : j + 1;
    const double slope = (s.chi[b].real() - s.chi[a].real()) / (s.delta_p[b] - s.delta_p[a]);
    const double omega_p = omega0 + s.delta_p[j];
    const double vg = 1.0 / (1.0 + 0.5 * s.chi[j].real() + 0.5 * omega_p * slope);
    if (!(vg > 0.0) || !std::isfinite(vg)) {
      s.group_velocity[j] = std::numeric_limits<double>::quiet_NaN();
      s.masked[j] = true;
    } else {
      s.group_velocity[j] = vg;
    }
  }
}

ResponseSpectrum group_velocity_curve(const SusceptibilityModel& m, const SweepSpec& sweep,
                                      double omega_c, DeltaMode mode) {
  auto s = susceptibility(m, sweep, omega_c, mode);
  fill_group_velocity(s, m.omega0);
  return s;
}

std::size_t resonance_index(const ResponseSpectrum& s) {
  std::size_t best = 0;
  for (std::size_t j = 1; j < s.delta_p.size(); ++j) {
    if (std::abs(s.delta_p[j]) < std::abs(s.delta_p[best])) best = j;
  }
  return best;
}

GroupVelocitySummary summarize_group_velocity(const ResponseSpectrum& s) {
  if (s.group_velocity.size() != s.delta_p.size()) {
    throw ShapeError("summarize_group_velocity: group velocity not filled");
  }
  GroupVelocitySummary out;
  out.at_resonance = s.group_velocity[resonance_index(s)];
  out.window_minimum = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < s.delta_p.size(); ++j) {
    if (s.masked[j]) {
      ++out.masked_points;
      continue;
    }
    if (s.group_velocity[j] < out.window_minimum) {
      out.window_minimum = s.group_velocity[j];
      out.window_minimum_at = s.delta_p[j];
    }
  }
  return out;
}

TransparencyResult transparency_width(const ResponseSpectrum& s) {
  const std::size_t n = s.delta_p.size();
  const std::size_t i0 = resonance_index(s);
  double peak = -std::numeric_limits<double>::infinity();
  for (const auto& c : s.chi) peak = std::max(peak, c.imag());
  const double centre = s.chi[i0].imag();
  if (!(centre < peak * (1.0 - 1e-9))) return NoTransparency{"no absorption dip at resonance"};
  const double level = 0.5 * (centre + peak);
  auto crossing = [&](std::size_t a, std::size_t b) {
    const double ya = s.chi[a].imag();
    const double yb = s.chi[b].imag();
    return s.delta_p[a] + (level - ya) * (s.delta_p[b] - s.delta_p[a]) / (yb - ya);
  };
  std::size_t hi = i0;
  while (hi + 1 < n && s.chi[hi].imag() < level) ++hi;
  std::size_t lo = i0;
  while (lo > 0 && s.chi[lo].imag() < level) --lo;
  if (s.chi[hi].imag() < level || s.chi[lo].imag() < level) {
    return NoTransparency{"dip edges outside the sweep"};
  }
  return crossing(hi - 1, hi) - crossing(lo + 1, lo);
}

std::vector<double> absorption_peaks(const ResponseSpectrum& s) {
  std::vector<double> out;
  for (std::size_t j = 1; j + 1 < s.delta_p.size(); ++j) {
    const double a = s.chi[j - 1].imag();
    const double b = s.chi[j].imag();
    const double c = s.chi[j + 1].imag();
    if (b > a && b >= c) {
      const double den = a - 2.0 * b + c;
      const double shift = den != 0.0 ? 0.5 * (a - c) / den : 0.0;
      const double h = s.delta_p[j + 1] - s.delta_p[j];
      out.push_back(s.delta_p[j] + shift * h);
    }
  }
  return out;
}

double dip_curvature(const SusceptibilityModel& m, double omega_c, DeltaMode mode) {
  const double h = 1e-3 * m.rates.gamma0;
  const double f0 = m.chi(0.0, omega_c, mode).imag();
  const double fp = m.chi(h, omega_c, mode).imag();
  const double fm = m.chi(-h, omega_c, mode).imag();
  return (fp - 2.0 * f0 + fm) / (h * h);
}

double dip_threshold(const SusceptibilityModel& m, DeltaMode mode) {
  const double g0 = m.rates.gamma0;
  auto f = [&](double oc) { return dip_curvature(m, oc, mode); };
  double lo = 1e-6 * g0;
  double hi = g0;
  if (f(lo) >= 0.0) return 0.0;
  while (f(hi) <= 0.0) {
    hi *= 2.0;
    if (hi > 1e6 * g0) throw BracketError("dip_threshold: no dip formed");
  }
  return numerics::find_root(f, lo, hi, 1e-10 * g0);
}

std::vector<double> kramers_kronig_real(const SusceptibilityModel& m, double omega_c,
                                        const std::vector<double>& delta_p, DeltaMode mode) {
  const double a = m.rates.gamma0;
  const double tol = 1e-7 * std::abs(m.chi(0.0, 0.0, mode));
  std::vector<double> out;
  out.reserve(delta_p.size());
  for (double d : delta_p) {
    const double f0 = m.chi(d, omega_c, mode).imag();
    // The even window 1/(1 + s^2) removes the pole without changing the
    // principal value.
    const double h = 1e-4;
    const double limit =
        (m.chi(d + a * h, omega_c, mode).imag() - m.chi(d - a * h, omega_c, mode).imag()) /
        (2.0 * h);
    auto integrand = [&](double s) {
      if (std::abs(s) < 1e-4) return limit;
      return (m.chi(d + a * s, omega_c, mode).imag() - f0 / (1.0 + s * s)) / s;
    };
    out.push_back(numerics::integrate_line(integrand, tol) / kPi);
  }
  return out;
}

double relative_rms(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size() || a.empty()) throw ShapeError("relative_rms: size mismatch");
  double num = 0.0;
  double den = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    num += (a[j] - b[j]) * (a[j] - b[j]);
    den += b[j] * b[j];
  }
  return std::sqrt(num / den);
}

DispersionCurve dispersion_curve(const SusceptibilityModel& m, const SweepSpec& sweep,
                                 double omega_c, DeltaMode mode) {
  DispersionCurve c;
  for (double d : sweep.grid()) {
    const double w = m.omega0 + d;
    if (!(w > 0.0)) continue;
    const double k = bogoliubov::resonant_wavevector(w);
    const cplx n = std::sqrt(1.0 + m.chi(d, omega_c, mode));
    c.omega.push_back(w);
    c.k_bare.push_back(k);
    c.q_dressed.push_back(k * n.real());
  }
  std::size_t i0 = 0;
  for (std::size_t j = 1; j < c.omega.size(); ++j) {
    if (std::abs(c.omega[j] - m.omega0) < std::abs(c.omega[i0] - m.omega0)) i0 = j;
  }
  if (i0 == 0 || i0 + 1 >= c.omega.size()) throw ShapeError("dispersion_curve: resonance on sweep edge");
  const double dwdq = (c.omega[i0 + 1] - c.omega[i0 - 1]) / (c.q_dressed[i0 + 1] - c.q_dressed[i0 - 1]);
  c.slope_ratio_at_resonance = dwdq / bogoliubov::dispersion_slope(c.k_bare[i0]);
  return c;
}

}  // namespace slowsound::bloch
