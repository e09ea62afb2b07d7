#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "oracle_values.hpp"
#include "slowsound/bogoliubov.hpp"
#include "slowsound/decay.hpp"
#include "slowsound/errors.hpp"

using namespace slowsound;
using namespace slowsound::decay;

namespace {
const params::ReducedParams& ref() {
  static const auto p = params::reference_params();
  return p;
}
const DecayRates& ref_rates() {
  static const auto r = compute_rates(ref());
  return r;
}
// A cheap grid for the structural checks.
Cascade small_cascade() {
  GridOptions opt;
  opt.half_width_factor = 12.0;
  opt.spacing_factor = 6.0;
  return Cascade(ref_rates(), make_cascade_grid(ref(), ref_rates(), opt));
}
}  // namespace

TEST_CASE("reference decay rates") {
  const auto& r = ref_rates();
  CHECK(r.gamma0 == doctest::Approx(oracle::gamma0).epsilon(1e-10));
  CHECK(r.gamma1 == doctest::Approx(oracle::gamma1).epsilon(1e-10));
  CHECK(r.omega0 == doctest::Approx(oracle::omega0).epsilon(1e-13));
  CHECK(r.eta0 == doctest::Approx(std::sqrt(1.0 + oracle::omega0 * oracle::omega0)));
  CHECK(r.rwa_valid());
  CHECK_FALSE(r.degenerate);
}

TEST_CASE("closed rates agree with the density-of-states route") {
  for (double rg : {0.95, 1.2, 1.5, 1.85}) {
    const auto p = params::make_reduced(1.56, rg);
    const auto r = compute_rates(p);
    CHECK(r.gamma0 == doctest::Approx(gamma_integral(p, r.omega0, 0)).epsilon(1e-10));
    CHECK(r.gamma1 == doctest::Approx(gamma_integral(p, r.omega1, 1)).epsilon(1e-10));
  }
}

TEST_CASE("rates are positive and the RWA holds across the window") {
  const double lo = params::coupling_of_nu(0.8, 1.56);
  const double hi = params::coupling_of_nu(9.0 / 7.0, 1.56);
  double prev = 0.0;
  for (int i = 1; i < 60; ++i) {
    const double rg = lo + (hi - lo) * i / 60.0;
    const auto r = compute_rates(params::make_reduced(1.56, rg));
    CHECK(r.gamma0 > 0.0);
    CHECK(r.gamma1 > 0.0);
    CHECK(r.gamma0 / r.omega0 < 0.1);
    CHECK(r.gamma1 / r.omega1 < 0.1);
    CHECK(r.gamma0 > prev);  // gamma0 grows with g12
    prev = r.gamma0;
  }
}

TEST_CASE("rate edge cases") {
  const auto at_zero = gamma_closed(ref(), 0.0, 0);
  CHECK(at_zero.degenerate);
  CHECK(std::isfinite(at_zero.value));
  // The zero-frequency value is the limit of the nearby ones.
  CHECK(gamma_closed(ref(), 1e-5, 0).value == doctest::Approx(at_zero.value).epsilon(1e-6));
  CHECK_FALSE(gamma_closed(ref(), 0.3, 1).degenerate);
  CHECK_THROWS_AS(gamma_closed(ref(), -0.1, 0), DomainError);
  CHECK_THROWS_AS(gamma_closed(ref(), 0.3, 2), DomainError);
  CHECK_THROWS_AS(gamma_integral(ref(), 0.0, 0), DomainError);
  CHECK_THROWS_AS(compute_rates(params::make_reduced(1.56, 0.5)), DomainError);

  // The closed-form density scales the rates linearly.
  DecayConfig cfg;
  cfg.n0_density = 2.0 * cfg.resolved_n0(ref());
  CHECK(gamma_closed(ref(), oracle::omega0, 0, cfg).value == doctest::Approx(2.0 * oracle::gamma0).epsilon(1e-10));
  CHECK(DecayConfig{}.resolved_n0(ref()) == doctest::Approx(std::sqrt(2.0) * 50.0));
}

TEST_CASE("mode density") {
  // Mode counting, both directions: 2 (L / 2 pi) dk/domega, carrying the
  // 1/sqrt(2) of the rate prefactor.
  CHECK(mode_density(1e-8, 10.0) == doctest::Approx(10.0 / (2.0 * numerics::kPi)).epsilon(1e-12));
  for (double w : {0.1, 0.5, 2.0}) {
    const double k = bogoliubov::resonant_wavevector(w);
    const double expected =
        2.0 * 10.0 / (2.0 * numerics::kPi) / bogoliubov::dispersion_slope(k) / std::sqrt(2.0);
    CHECK(mode_density(w, 10.0) == doctest::Approx(expected).epsilon(1e-10));
  }
}

TEST_CASE("cascade grid resolution guard") {
  const auto& r = ref_rates();
  const double gmin = std::min(r.gamma0, r.gamma1);
  CHECK_THROWS_AS(make_cascade_grid(ref(), r, 0.01, gmin / 5.0), ResolutionError);
  try {
    make_cascade_grid(ref(), r, 0.01, gmin);
  } catch (const ResolutionError& e) {
    CHECK(e.suggested() < gmin / 5.0);
  }
  CHECK_THROWS_AS(make_cascade_grid(ref(), r, 1.0, gmin / 6.0), DomainError);
  GridOptions coarse;
  coarse.spacing_factor = 4.0;
  CHECK_THROWS_AS(make_cascade_grid(ref(), r, coarse), ResolutionError);

  const auto g = make_cascade_grid(ref(), r);
  CHECK(g.detuning_k.size() == g.detuning_p.size());
  CHECK(g.detuning_k.size() % 2 == 1);
  CHECK(g.detuning_k[g.detuning_k.size() / 2] == 0.0);
  CHECK(g.spacing == doctest::Approx(gmin / 6.0));
  // Discrete couplings reproduce the golden-rule rates.
  double s0 = 0.0, s1 = 0.0;
  for (std::size_t j = 0; j < g.detuning_k.size(); ++j) {
    s1 += std::norm(g.coupling_k[j]);
    s0 += std::norm(g.coupling_p[j]);
  }
  const double band = g.spacing * static_cast<double>(g.detuning_k.size());
  CHECK(2.0 * numerics::kPi * s1 / band == doctest::Approx(r.gamma1).epsilon(0.05));
  CHECK(2.0 * numerics::kPi * s0 / band == doctest::Approx(r.gamma0).epsilon(0.05));
}

TEST_CASE("cascade initial state and norm bound") {
  const auto c = small_cascade();
  const auto p0 = c.populations(0.0);
  CHECK(p0.upper == 1.0);
  CHECK(p0.one_phonon == 0.0);
  CHECK(p0.two_phonon == 0.0);
  const auto a0 = c.amplitudes(0.0, true);
  CHECK(std::abs(a0.a) == 1.0);
  for (const auto& b : a0.b_k) CHECK(b == numerics::cplx(0.0));
  for (double t : {0.5, 1.0, 3.0}) {
    const auto pop = c.populations(t / oracle::gamma1);
    CHECK(pop.total() <= 1.0 + 5e-3);
    CHECK(pop.upper == doctest::Approx(std::exp(-t)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(c.populations(-1.0), DomainError);
}

TEST_CASE("cascade populations against direct integration") {
  const auto c = small_cascade();
  const double g1 = c.rates().gamma1;
  const std::vector<double> times{0.25 / g1, 0.5 / g1};
  const auto ode = cascade_ode_populations(c, times);
  for (std::size_t i = 0; i < times.size(); ++i) {
    const auto ww = c.populations(times[i]);
    CHECK(std::abs(ww.upper - ode[i].upper) < 0.02);
    CHECK(std::abs(ww.one_phonon - ode[i].one_phonon) < 0.02);
    CHECK(std::abs(ww.two_phonon - ode[i].two_phonon) < 0.02);
  }
}

TEST_CASE("first emitted phonon sits on the upper resonance") {
  const auto c = small_cascade();
  const auto dist = c.one_phonon_distribution(2.0 / c.rates().gamma1);
  const auto j = static_cast<std::size_t>(std::max_element(dist.begin(), dist.end()) - dist.begin());
  const auto& kv = c.grid().wavevector_k;
  const double dk = std::abs(kv[j + 1] - kv[j]);
  CHECK(std::abs(kv[j] - oracle::k_res1) <= dk);
}

TEST_CASE("first phonon line width is gamma0 + gamma1") {
  const Cascade c(ref_rates(), make_cascade_grid(ref(), ref_rates()));
  const auto spec = c.first_phonon_spectrum();
  const double w = full_width_half_max(c.grid().detuning_k, spec);
  CHECK(w == doctest::Approx(ref_rates().gamma0 + ref_rates().gamma1).epsilon(0.05));
}

TEST_CASE("width of a sampled Lorentzian") {
  std::vector<double> x, y;
  for (int i = -400; i <= 400; ++i) {
    x.push_back(0.01 * i);
    y.push_back(1.0 / (1.0 + std::pow(x.back() / 0.25, 2)));
  }
  CHECK(full_width_half_max(x, y) == doctest::Approx(0.5).epsilon(1e-3));
  std::vector<double> edge(x.size(), 1.0);
  CHECK_THROWS_AS(full_width_half_max(x, edge), DomainError);
  CHECK_THROWS_AS(full_width_half_max({0.0, 1.0}, {0.0, 1.0}), ShapeError);
}
