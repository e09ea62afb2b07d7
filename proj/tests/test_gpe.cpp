#include <cmath>

#include "doctest.h"
#include "oracle_values.hpp"
#include "slowsound/errors.hpp"
#include "slowsound/gpe.hpp"
#include "slowsound/qutrit.hpp"

using namespace slowsound;
using namespace slowsound::gpe;

namespace {
const params::ReducedParams& ref() {
  static const auto p = params::reference_params();
  return p;
}

// Soliton plus a localised impurity of the given norm on a small grid.
Fields soliton_with_impurity(double impurity_norm, std::size_t points = 512, double length = 40.0) {
  const Grid1D g(length, points);
  auto c = imprint_soliton(g, ref());
  std::vector<cplx> phi(points);
  for (std::size_t i = 0; i < points; ++i) {
    const double x = g.x(i);
    phi[i] = std::exp(-x * x) * cplx(1.0, 0.3 * x);
  }
  Field1D imp(g, phi);
  const double scale = std::sqrt(impurity_norm / imp.norm());
  for (auto& z : imp.psi) z *= scale;
  return {std::move(c), std::move(imp)};
}

double max_relative_energy_drift(double dt, std::size_t steps, std::size_t chunks) {
  auto f = soliton_with_impurity(1.0);
  const double e0 = energy(f, ref());
  double worst = 0.0;
  for (std::size_t c = 0; c < chunks; ++c) {
    f = evolve_real(std::move(f), ref(), dt, steps / chunks, Backreaction::on);
    worst = std::max(worst, std::abs(energy(f, ref()) - e0) / std::abs(e0));
  }
  return worst;
}
}  // namespace

TEST_CASE("couplings in solver units") {
  const auto c = Couplings::from_params(ref());
  CHECK(c.g11 == doctest::Approx(1.0 / 50.0));
  CHECK(c.well_depth == doctest::Approx(1.85 / 2.0).epsilon(1e-12));
  CHECK(c.g21 * c.depletion_number == doctest::Approx(c.well_depth));
  CHECK(c.impurity_mass == 1.56);
}

TEST_CASE("imprinted soliton") {
  const Grid1D g(80.0, 2048);
  const auto f = imprint_soliton(g, ref());
  const auto d = f.density();
  CHECK(d[1024] == 0.0);  // x = 0
  for (std::size_t i = 1; i < 1024; ++i) CHECK(f.psi[1024 + i] == -f.psi[1024 - i]);
  // Half depth at x = asinh(1).
  const auto i_half = static_cast<std::size_t>(1024 + std::lround(oracle::dip_half_density_x / g.spacing()));
  CHECK(std::abs(g.x(i_half) - oracle::dip_half_density_x) < g.spacing());
  const double n0 = 50.0;
  const double x = g.x(i_half);
  CHECK(d[i_half] == doctest::Approx(n0 * std::pow(std::tanh(x) * std::tanh(40.0 - x), 2)));
  CHECK(d[1024 + 512] == doctest::Approx(n0).epsilon(1e-12));  // far from both dips
  CHECK_THROWS_AS(imprint_soliton(Grid1D(20.0, 256), ref()), DomainError);
  CHECK_THROWS_AS(Field1D(g, std::vector<cplx>(16)), ShapeError);
}

TEST_CASE("real-time step size guard") {
  auto f = soliton_with_impurity(0.5);
  const double dx = f.condensate.grid.spacing();
  CHECK_THROWS_AS(evolve_real(f, ref(), 0.11 * dx * dx, 1, Backreaction::off), DomainError);
  CHECK_NOTHROW(evolve_real(f, ref(), 0.1 * dx * dx, 1, Backreaction::off));
  auto mismatched = f;
  mismatched.impurity = Field1D(Grid1D(40.0, 256), std::vector<cplx>(256));
  CHECK_THROWS_AS(evolve_real(mismatched, ref(), 1e-4, 1, Backreaction::off), ShapeError);
}

TEST_CASE("norms conserved in real time") {
  auto f = soliton_with_impurity(0.5);
  const double dx = f.condensate.grid.spacing();
  const double nc = f.condensate.norm(), ni = f.impurity.norm();
  for (auto br : {Backreaction::off, Backreaction::on}) {
    const auto out = evolve_real(f, ref(), 0.1 * dx * dx, 1000, br);
    CHECK(std::abs(out.condensate.norm() - nc) / nc < 1e-8);
    CHECK(std::abs(out.impurity.norm() - ni) / ni < 1e-8);
  }
}

TEST_CASE("the dark soliton is stationary") {
  auto f = soliton_with_impurity(1e-12);
  const double dx = f.condensate.grid.spacing();
  const auto out = evolve_real(f, ref(), 0.1 * dx * dx, 2000, Backreaction::off);
  double worst = 0.0;
  for (std::size_t i = 0; i < out.condensate.psi.size(); ++i) {
    worst = std::max(worst, std::abs(std::norm(out.condensate.psi[i]) - std::norm(f.condensate.psi[i])));
  }
  CHECK(worst < 1e-6 * 50.0);
}

TEST_CASE("coupled energy conservation and second-order splitting") {
  const double dx = 40.0 / 512.0;
  const double dt = 0.1 * dx * dx;
  const double drift = max_relative_energy_drift(dt, 10000, 10);
  CHECK(drift < 1e-6);
  // Same physical time at half the step: the error falls by about 4.
  const double finer = max_relative_energy_drift(0.5 * dt, 20000, 10);
  CHECK(drift / finer > 3.0);
  CHECK(drift / finer < 5.0);
}

TEST_CASE("frozen-well eigenstates at the reference point") {
  SolverOptions opt;
  const auto r = imaginary_time_eigenstates(ref(), 2, opt);
  const auto spectrum = qutrit::require_spectrum(ref());
  REQUIRE(r.size() == 2);
  CHECK(r[0].analytic_energy == doctest::Approx(oracle::pt_e0).epsilon(1e-12));
  for (const auto& e : r) {
    CHECK(e.converged);
    CHECK(std::abs(e.energy / e.analytic_energy - 1.0) < 1e-3);
    CHECK(std::abs(e.energy / spectrum.energies[e.n] - 1.0) < 0.05);
    CHECK(e.overlap_exact > 0.9999);
    CHECK(e.state.norm() == doctest::Approx(1.0).epsilon(1e-10));
  }
  CHECK(r[0].energy < r[1].energy);
  double dot = 0.0;
  for (std::size_t i = 0; i < r[0].state.psi.size(); ++i) {
    dot += (std::conj(r[0].state.psi[i]) * r[1].state.psi[i]).real();
  }
  CHECK(std::abs(dot * r[0].state.grid.spacing()) < 1e-6);
  // Parity of the numerical states.
  const auto& psi1 = r[1].state.psi;
  const std::size_t n = psi1.size();
  for (std::size_t i = 1; i < n / 2; i += 97) CHECK(std::abs(psi1[n / 2 + i] + psi1[n / 2 - i]) < 1e-8);
}

TEST_CASE("ground-state energy across the window") {
  SolverOptions opt;
  for (double nu : {0.85, 0.95, 1.05, 1.15, 1.25}) {
    const auto p = params::make_reduced(1.56, params::coupling_of_nu(nu, 1.56));
    const int states = nu > 1.0 ? 2 : 1;
    const auto r = imaginary_time_eigenstates(p, states, opt);
    for (const auto& e : r) {
      // A level with nu - n = 0.05 has a 20 xi tail; in the 80 xi box only
      // its absolute energy is meaningful.
      if (nu - e.n < 0.1) {
        CHECK_MESSAGE(std::abs(e.energy - e.analytic_energy) < 1e-4, "nu = " << nu << ", n = " << e.n);
      } else {
        CHECK_MESSAGE(std::abs(e.energy / e.analytic_energy - 1.0) < 1e-3, "nu = " << nu << ", n = " << e.n);
      }
    }
  }
}

TEST_CASE("ground-state energy is resolved on the default grid") {
  SolverOptions coarse;
  coarse.points = 1024;
  SolverOptions fine;
  fine.points = 2048;
  const double e1 = imaginary_time_eigenstates(ref(), 1, coarse)[0].energy;
  const double e2 = imaginary_time_eigenstates(ref(), 1, fine)[0].energy;
  CHECK(std::abs(e1 - e2) < 1e-6);
}

TEST_CASE("eigen solver budget") {
  SolverOptions opt;
  opt.max_steps = 40;
  CHECK_THROWS_AS(imaginary_time_eigenstates(ref(), 1, opt), ConvergenceError);
  opt.allow_partial = true;
  const auto r = imaginary_time_eigenstates(ref(), 1, opt);
  CHECK_FALSE(r[0].converged);
  CHECK(r[0].steps == 40);
  CHECK_THROWS_AS(imaginary_time_eigenstates(ref(), 0, opt), DomainError);
}

TEST_CASE("self-consistent soliton with impurities") {
  SolverOptions opt;
  const double n0 = ref().depletion_number;
  const auto empty = coupled_ground_state(ref(), 0.0, opt);
  CHECK(empty.deformation < 1e-8);
  CHECK_FALSE(empty.condensation);

  double prev = empty.deformation;
  for (double load : {0.005, 0.01, 0.02}) {
    const auto r = coupled_ground_state(ref(), load * n0, opt);
    CHECK(r.deformation > prev);
    CHECK(r.fields.impurity.norm() == doctest::Approx(load * n0).epsilon(1e-10));
    if (load == 0.01) CHECK(r.deformation < 0.01);
    prev = r.deformation;
  }
  CHECK_THROWS_AS(coupled_ground_state(ref(), -1.0, opt), DomainError);
}

TEST_CASE("autocorrelation lines") {
  const double dt = 0.5;
  std::vector<cplx> ac(4096);
  for (std::size_t i = 0; i < ac.size(); ++i) {
    const double t = dt * static_cast<double>(i);
    ac[i] = 0.7 * std::polar(1.0, 0.52 * t) + 0.3 * std::polar(1.0, 0.21 * t);
  }
  const auto lines = autocorrelation_lines(ac, dt, 2);
  REQUIRE(lines.size() == 2);
  const double dw = 2.0 * numerics::kPi / (dt * 4.0 * 4096.0);
  CHECK(std::abs(lines[0] - (-0.52)) < dw);
  CHECK(std::abs(lines[1] - (-0.21)) < dw);
  CHECK_THROWS_AS(autocorrelation_lines(std::vector<cplx>(4), dt, 1), ShapeError);
}

TEST_CASE("revivals in the soliton well match the qutrit transition") {
  // Off-centre packet: populates the even and odd bound states plus some continuum.
  const auto p = ref();
  const Grid1D grid(40.0, 256);
  std::vector<cplx> packet(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid.x(i);
    packet[i] = std::exp(-(x - 0.7) * (x - 0.7));
  }
  Field1D phi(grid, packet);
  const double scale = 1.0 / std::sqrt(phi.norm());
  for (auto& v : phi.psi) v *= scale;
  Fields f{imprint_soliton(grid, p), phi};
  const auto initial = f.impurity.psi;

  const double dx = grid.spacing();
  const double dt = 0.1 * dx * dx;
  const double sample_dt = 0.5;
  const auto per_sample = static_cast<std::size_t>(std::lround(sample_dt / dt));
  const double actual_dt = sample_dt / static_cast<double>(per_sample);
  std::vector<cplx> ac;
  for (int s = 0; s < 300; ++s) {
    cplx overlap = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) overlap += std::conj(initial[i]) * f.impurity.psi[i];
    ac.push_back(overlap * dx);
    f = evolve_real(f, p, actual_dt, per_sample, Backreaction::off);
  }
  const auto lines = autocorrelation_lines(ac, sample_dt, 3);
  const auto spec = qutrit::require_spectrum(p);
  auto nearest = [&](double e) {
    double best = lines.front();
    for (double l : lines) {
      if (std::abs(l - e) < std::abs(best - e)) best = l;
    }
    return best;
  };
  const double e0 = nearest(spec.energies[0]);
  const double e1 = nearest(spec.energies[1]);
  CHECK(std::abs(e0 - spec.energies[0]) < 0.03 * spec.omega0);
  CHECK((e1 - e0) == doctest::Approx(spec.omega0).epsilon(0.03));
}
