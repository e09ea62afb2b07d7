#include <cmath>

#include "doctest.h"
#include "oracle_values.hpp"
#include "slowsound/errors.hpp"
#include "slowsound/params.hpp"

using namespace slowsound;
using namespace slowsound::params;

namespace {
PhysicalConfig rubidium() {
  PhysicalConfig c;
  c.m1_kg = oracle::rb87_mass;
  c.m2_kg = 1.56 * oracle::rb87_mass;
  c.g11_J_m = oracle::rb87_g11;
  c.g12_J_m = 1.85 * oracle::rb87_g11;
  c.n0_per_m = 50.0 / 0.7e-6;
  c.box_length_m = 100e-6;
  c.soliton_count = 100e-6 * 0.2 / 0.7e-6;
  return c;
}
}  // namespace

TEST_CASE("Poschl-Teller index and exponent") {
  CHECK(nu_of_coupling(0.0, 1.56) == 0.0);
  CHECK(coupling_of_nu(0.8, 1.56) == doctest::Approx(oracle::rg_at_nu_4_5).epsilon(1e-14));
  CHECK(coupling_of_nu(9.0 / 7.0, 1.56) == doctest::Approx(oracle::rg_at_nu_9_7).epsilon(1e-14));
  CHECK(nu_of_coupling(1.85, 1.56) == doctest::Approx(oracle::nu_ref).epsilon(1e-14));
  CHECK(exponent_alpha(1.85, 1.56) == doctest::Approx(oracle::alpha_ref).epsilon(1e-14));
  for (double nu : {0.0, 0.8, 1.1, 9.0 / 7.0, 3.0}) {
    CHECK(nu_of_coupling(coupling_of_nu(nu, 1.56), 1.56) == doctest::Approx(nu).epsilon(1e-13));
  }
  CHECK_THROWS_AS(nu_of_coupling(-0.1, 1.0), DomainError);
  CHECK_THROWS_AS(coupling_of_nu(1.0, 0.0), DomainError);
}

TEST_CASE("nu increases with both ratios") {
  double prev = -1.0;
  for (double rg = 0.0; rg <= 3.0; rg += 0.05) {
    const double nu = nu_of_coupling(rg, 1.56);
    CHECK(nu > prev);
    prev = nu;
  }
  prev = -1.0;
  for (double rm = 0.1; rm <= 5.0; rm += 0.1) {
    const double nu = nu_of_coupling(1.85, rm);
    CHECK(nu > prev);
    prev = nu;
  }
}

TEST_CASE("reference parameter set") {
  const auto p = reference_params();
  CHECK(p.nu == doctest::Approx(oracle::nu_ref).epsilon(1e-14));
  CHECK(p.exponent_alpha == doctest::Approx(oracle::alpha_ref).epsilon(1e-14));
  CHECK(p.box_length == doctest::Approx(100.0 / 0.7));
  REQUIRE(p.units.has_value());
  CHECK(p.units->healing_length_m == doctest::Approx(0.7e-6));
  CHECK(p.units->sound_speed_m_s == doctest::Approx(1e-3));
  CHECK(p.units->time_unit_s() == doctest::Approx(0.7e-3));
  CHECK(check(p).empty());
}

TEST_CASE("reduced validation lists each failure") {
  CHECK_THROWS_AS(make_reduced(1.56, 1.85, 1.5), ValidationError);
  try {
    make_reduced(-1.0, -2.0, 0.0, 0.0, -5.0);
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(e.failures().size() == 5);
  }
}

TEST_CASE("physical inputs reduce to the healing-length units") {
  const auto p = reduce(rubidium());
  REQUIRE(p.units.has_value());
  CHECK(p.units->healing_length_m == doctest::Approx(0.7e-6).epsilon(1e-12));
  CHECK(p.units->sound_speed_m_s == doctest::Approx(oracle::rb87_sound_speed).epsilon(1e-12));
  CHECK(p.units->chemical_potential_J == doctest::Approx(oracle::rb87_mu).epsilon(1e-12));
  CHECK(p.mass_ratio == doctest::Approx(1.56));
  CHECK(p.coupling_ratio == doctest::Approx(1.85));
  CHECK(p.depletion_number == doctest::Approx(50.0));
  CHECK(p.soliton_concentration == doctest::Approx(0.2));
  CHECK(p.box_length == doctest::Approx(100.0 / 0.7));
  CHECK(p.nu == doctest::Approx(oracle::nu_ref).epsilon(1e-12));
  CHECK_FALSE(p.quasi1d_alpha.has_value());
}

TEST_CASE("physical validation") {
  auto bad = rubidium();
  bad.g11_J_m = -1e-39;
  bad.m2_kg = 0.0;
  bad.g12_J_m = -1.0;
  try {
    reduce(bad);
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(e.failures().size() == 3);
  }
  CHECK(check(rubidium()).empty());

  // Too many solitons for a dilute gas.
  auto dense = rubidium();
  dense.soliton_count = 1000.0;
  CHECK_THROWS_AS(reduce(dense), ValidationError);
}

TEST_CASE("quasi-1D advisory flag") {
  auto cfg = rubidium();
  cfg.scattering_length_m = 5.3e-9;
  cfg.longitudinal_size_m = 1e-6;
  cfg.transverse_size_m = 1e-6;
  auto p = reduce(cfg);
  REQUIRE(p.quasi1d_alpha.has_value());
  CHECK(*p.quasi1d_alpha == doctest::Approx(2.0 * 5.3e-9 * 1e-6 / 1e-12));
  CHECK_FALSE(p.quasi1d_warning);

  cfg.transverse_size_m = 0.2e-6;
  p = reduce(cfg);
  CHECK(*p.quasi1d_alpha > 0.1);
  CHECK(p.quasi1d_warning);
}
