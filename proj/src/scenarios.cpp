#include "slowsound/scenarios.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <cstdio>
#include <limits>
#include <map>
#include <optional>

#include "slowsound/acceptance.hpp"
#include "slowsound/bloch.hpp"
#include "slowsound/bogoliubov.hpp"
#include "slowsound/coupling.hpp"
#include "slowsound/decay.hpp"
#include "slowsound/errors.hpp"
#include "slowsound/gpe.hpp"
#include "slowsound/parallel.hpp"
#include "slowsound/qutrit.hpp"

#ifndef SLOWSOUND_VERSION
#define SLOWSOUND_VERSION "unknown"
#endif

namespace slowsound::scenarios {

namespace {

using nlohmann::json;
using io::number;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string tag(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return v;
}

params::ReducedParams with_ratio(const params::ReducedParams& base, double ratio) {
  auto p = params::make_reduced(base.mass_ratio, ratio, base.soliton_concentration,
                                base.depletion_number, base.box_length);
  p.units = base.units;
  return p;
}

// Everything the transparency scenarios need for one parameter set.
struct Medium {
  params::ReducedParams p;
  std::optional<qutrit::ImpurityStates> states;
  decay::DecayRates rates;
  bloch::SusceptibilityModel model;
  bloch::SweepSpec sweep;
};

Medium make_medium(const config::RunConfig& cfg, const params::ReducedParams& p) {
  Medium m;
  m.p = p;
  auto dc = cfg.decay;
  dc.mode = cfg.coupling_mode;
  m.rates = decay::compute_rates(p, dc);
  if (cfg.coupling_mode == coupling::CouplingMode::quadrature) {
    m.states.emplace(qutrit::ImpurityStates::from_params(p));
  }
  m.model = bloch::SusceptibilityModel::from_params(p, m.rates, cfg.coupling_mode,
                                                    m.states ? &*m.states : nullptr);
  m.sweep = bloch::SweepSpec::around_resonance(m.rates.gamma0, cfg.sweep_half_width,
                                               cfg.sweep_steps_per_gamma);
  return m;
}

std::vector<double> scaled(const std::vector<double>& v, double f) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] * f;
  return out;
}

json width_json(const bloch::TransparencyResult& w, double gamma0) {
  if (const auto* d = std::get_if<double>(&w)) return *d / gamma0;
  return {{"none", std::get<bloch::NoTransparency>(w).reason}};
}

// ---------------------------------------------------------------------------

json run_spectrum(const RunRequest& rq, io::OutputSet& out) {
  const auto& cfg = rq.config;
  const auto& base = cfg.params;
  const auto ratios = linspace(cfg.ratio_min, cfg.ratio_max, cfg.ratio_points);
  const std::size_t n = ratios.size();
  std::vector<double> nu(n), nb(n), flag(n), e0(n), e1(n), e2(n), w0(n), w1(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double v = params::nu_of_coupling(ratios[i], base.mass_ratio);
    nu[i] = v;
    nb[i] = qutrit::bound_state_count(v);
    flag[i] = nb[i] == 3 ? 1.0 : 0.0;
    // Levels beyond the bound-state count are left blank.
    auto level = [&](int l) {
      return l < nb[i] ? -(v - l) * (v - l) / (2.0 * base.mass_ratio) : kNaN;
    };
    e0[i] = level(0);
    e1[i] = level(1);
    e2[i] = level(2);
    w0[i] = flag[i] ? (2.0 * v - 1.0) / (2.0 * base.mass_ratio) : kNaN;
    w1[i] = flag[i] ? std::abs(2.0 * v - 3.0) / (2.0 * base.mass_ratio) : kNaN;
  }
  const double lo = params::coupling_of_nu(0.8, base.mass_ratio);
  const double hi = params::coupling_of_nu(9.0 / 7.0, base.mass_ratio);
  io::Table t;
  t.add("coupling_ratio", "g11", ratios)
      .add("nu", "", nu)
      .add("bound_states", "", nb)
      .add("qutrit", "", flag)
      .add("E0", "mu", e0)
      .add("E1", "mu", e1)
      .add("E2", "mu", e2)
      .add("omega0", "mu/hbar", w0)
      .add("omega1", "mu/hbar", w1)
      .add("window_lo_ratio", "g11", std::vector<double>(n, lo))
      .add("window_hi_ratio", "g11", std::vector<double>(n, hi))
      .add("window_lo_nu", "", std::vector<double>(n, 0.8))
      .add("window_hi_nu", "", std::vector<double>(n, 9.0 / 7.0));
  out.csv("spectrum", t);
  out.svg("spectrum_levels", {"Impurity levels", "g12 / g11", "E' [mu]",
                              {{"E0", ratios, e0}, {"E1", ratios, e1}, {"E2", ratios, e2}},
                              {lo, hi}});
  out.svg("spectrum_transitions", {"Qutrit transitions", "g12 / g11", "omega [mu/hbar]",
                                   {{"omega0", ratios, w0}, {"omega1", ratios, w1, true}},
                                   {lo, hi}});
  json s;
  s["window"] = {{"nu_lo", 0.8}, {"nu_hi", 9.0 / 7.0}, {"ratio_lo", lo}, {"ratio_hi", hi}};
  const auto ref = qutrit::spectrum(base);
  if (const auto* q = std::get_if<qutrit::QutritSpectrum>(&ref)) {
    s["configured"] = {{"nu", q->nu},
                       {"bound_states", q->n_bound},
                       {"energies_mu", q->energies},
                       {"omega0", q->omega0},
                       {"omega1", q->omega1}};
  } else {
    const auto& bad = std::get<qutrit::NotAQutrit>(ref);
    s["configured"] = {{"nu", bad.nu}, {"bound_states", bad.n_bound}, {"qutrit", false}};
  }
  s["qutrit_points"] = std::count(flag.begin(), flag.end(), 1.0);
  return s;
}

json run_decay(const RunRequest& rq, io::OutputSet& out) {
  const auto& cfg = rq.config;
  const auto& base = cfg.params;
  auto dc = cfg.decay;
  dc.mode = cfg.coupling_mode;

  // Rates across the qutrit part of the ratio sweep.
  std::vector<double> ratios;
  for (double r : linspace(cfg.ratio_min, cfg.ratio_max, cfg.ratio_points)) {
    if (qutrit::is_qutrit(params::nu_of_coupling(r, base.mass_ratio))) ratios.push_back(r);
  }
  const std::size_t n = ratios.size();
  std::vector<double> nu(n), g0(n), g1(n), q0(n), q1(n), i0(n), i1(n);
  parallel::for_each_index(n, rq.threads, [&](std::size_t i) {
    const auto p = with_ratio(base, ratios[i]);
    const auto r = decay::compute_rates(p, dc);
    nu[i] = p.nu;
    g0[i] = r.gamma0;
    g1[i] = r.gamma1;
    q0[i] = r.gamma0 / r.omega0;
    q1[i] = r.gamma1 / r.omega1;
    i0[i] = decay::gamma_integral(p, r.omega0, 0);
    i1[i] = decay::gamma_integral(p, r.omega1, 1);
  });
  io::Table t;
  t.add("coupling_ratio", "g11", ratios)
      .add("nu", "", nu)
      .add("gamma0", "mu/hbar", g0)
      .add("gamma1", "mu/hbar", g1)
      .add("gamma0_over_omega0", "", q0)
      .add("gamma1_over_omega1", "", q1)
      .add("gamma0_integral", "mu/hbar", i0)
      .add("gamma1_integral", "mu/hbar", i1);
  out.csv("decay_rates", t);
  out.svg("decay_ratios", {"Linewidth over transition frequency", "g12 / g11", "gamma / omega",
                           {{"gamma0/omega0", ratios, q0}, {"gamma1/omega1", ratios, q1, true}},
                           {}});

  // Cascade at the configured parameters.
  const auto rates = decay::compute_rates(base, dc);
  decay::Cascade cascade(rates, decay::make_cascade_grid(base, rates, cfg.cascade));
  std::vector<double> times = linspace(0.0, 5.0 / rates.gamma1, 26);
  std::vector<decay::CascadePopulations> pops(times.size());
  parallel::for_each_index(times.size(), rq.threads,
                           [&](std::size_t i) { pops[i] = cascade.populations(times[i]); });
  std::vector<double> tg(times.size()), up(times.size()), one(times.size()), two(times.size()),
      tot(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    tg[i] = times[i] * rates.gamma1;
    up[i] = pops[i].upper;
    one[i] = pops[i].one_phonon;
    two[i] = pops[i].two_phonon;
    tot[i] = pops[i].total();
  }
  io::Table tp;
  tp.add("t", "1/gamma1", tg)
      .add("upper", "", up)
      .add("one_phonon", "", one)
      .add("two_phonon", "", two)
      .add("total", "", tot);
  out.csv("cascade_populations", tp);
  out.svg("cascade_populations", {"Cascade populations", "t [1/gamma1]", "population",
                                  {{"|e2>", tg, up}, {"|e1> + k", tg, one}, {"|g> + k + p", tg, two},
                                   {"total", tg, tot, true}},
                                  {}});

  std::vector<double> snap_t;
  for (double f : cfg.cascade_times) snap_t.push_back(f / rates.gamma1);
  const auto ode = decay::cascade_ode_populations(cascade, snap_t);
  json snaps = json::array();
  double worst = 0.0;
  for (std::size_t i = 0; i < snap_t.size(); ++i) {
    const auto a = cascade.populations(snap_t[i]);
    worst = std::max({worst, std::abs(a.upper - ode[i].upper),
                      std::abs(a.one_phonon - ode[i].one_phonon),
                      std::abs(a.two_phonon - ode[i].two_phonon)});
    snaps.push_back({{"t_gamma1", cfg.cascade_times[i]},
                     {"total", a.total()},
                     {"upper", a.upper},
                     {"one_phonon", a.one_phonon},
                     {"two_phonon", a.two_phonon},
                     {"ode_total", ode[i].total()}});
  }

  const auto spec = cascade.first_phonon_spectrum();
  const auto& grid = cascade.grid();
  io::Table ts;
  ts.add("detuning", "gamma0", scaled(grid.detuning_k, 1.0 / rates.gamma0))
      .add("wavevector", "1/xi", grid.wavevector_k)
      .add("first_phonon_population", "", spec);
  out.csv("first_phonon_spectrum", ts);
  const double fwhm = decay::full_width_half_max(grid.detuning_k, spec);

  json s;
  s["gamma0"] = rates.gamma0;
  s["gamma1"] = rates.gamma1;
  s["omega0"] = rates.omega0;
  s["omega1"] = rates.omega1;
  s["gamma0_over_omega0"] = rates.gamma0 / rates.omega0;
  s["gamma1_over_omega1"] = rates.gamma1 / rates.omega1;
  s["rwa_valid"] = rates.rwa_valid();
  s["degenerate"] = rates.degenerate;
  if (n > 0) {
    s["sweep_max_gamma0_over_omega0"] = *std::max_element(q0.begin(), q0.end());
    s["sweep_max_gamma1_over_omega1"] = *std::max_element(q1.begin(), q1.end());
  }
  s["cascade"] = {{"grid_points", grid.detuning_k.size()},
                  {"spacing_gamma0", grid.spacing / rates.gamma0},
                  {"snapshots", snaps},
                  {"max_ode_difference", worst},
                  {"first_phonon_fwhm", fwhm},
                  {"gamma0_plus_gamma1", rates.gamma0 + rates.gamma1}};
  return s;
}

json run_couplings(const RunRequest& rq, io::OutputSet& out) {
  const auto& cfg = rq.config;
  const auto& p = cfg.params;
  const auto states = qutrit::ImpurityStates::from_params(p);
  const auto ks = linspace(cfg.k_min, cfg.k_max, cfg.k_points);
  std::vector<coupling::CouplingSet> sets(ks.size());
  parallel::for_each_index(ks.size(), rq.threads,
                           [&](std::size_t i) { sets[i] = coupling::coupling_set(ks[i], p, states); });
  auto col = [&](auto member) {
    std::vector<double> v(sets.size());
    for (std::size_t i = 0; i < sets.size(); ++i) v[i] = std::abs(sets[i].*member);
    return v;
  };
  using CS = coupling::CouplingSet;
  const bool quad = cfg.coupling_mode == coupling::CouplingMode::quadrature;
  const auto c0 = col(&CS::g0_closed);
  const auto c1 = col(&CS::g1_closed);
  const auto q01 = col(&CS::g01_quadrature);
  const auto q12 = col(&CS::g12_quadrature);
  const auto q00 = col(&CS::g00_quadrature);
  const auto q11 = col(&CS::g11_quadrature);
  const auto q22 = col(&CS::g22_quadrature);
  std::vector<double> eps(ks.size());
  for (std::size_t i = 0; i < ks.size(); ++i) eps[i] = bogoliubov::dispersion(ks[i]);
  io::Table t;
  t.add("k", "1/xi", ks)
      .add("epsilon", "mu", eps)
      .add("g0", "mu", quad ? q01 : c0)
      .add("g1", "mu", quad ? q12 : c1)
      .add("g00", "mu", q00)
      .add("g11", "mu", q11)
      .add("g22", "mu", q22)
      .add("g0_closed", "mu", c0)
      .add("g1_closed", "mu", c1)
      .add("g01_quadrature", "mu", q01)
      .add("g12_quadrature", "mu", q12)
      .add("quadrature_mode", "", std::vector<double>(ks.size(), quad ? 1.0 : 0.0));
  out.csv("couplings", t);
  out.svg("couplings_interband", {"Interband couplings", "k [1/xi]", "|g| [mu]",
                                  {{"|g0|", ks, quad ? q01 : c0}, {"|g1|", ks, quad ? q12 : c1}},
                                  {}});
  out.svg("couplings_intraband", {"Intraband couplings", "k [1/xi]", "|g| [mu]",
                                  {{"|g00|", ks, q00}, {"|g11|", ks, q11}, {"|g22|", ks, q22}},
                                  {}});

  json s;
  s["mode"] = std::string(coupling::to_string(cfg.coupling_mode));
  s["norm_quadrature"] = states.norm_quadrature();
  json closed = json::array();
  for (double a : states.norm_closed()) closed.push_back(number(a));
  s["norm_closed"] = closed;
  s["raw_overlap_02"] = states.raw_overlap_02();
  s["gram_schmidt_applied"] = states.gram_schmidt_applied();
  const auto spec = qutrit::spectrum(p);
  if (const auto* q = std::get_if<qutrit::QutritSpectrum>(&spec)) {
    json res = json::array();
    for (int i : {0, 1}) {
      const double w = i == 0 ? q->omega0 : q->omega1;
      const double k = bogoliubov::resonant_wavevector(w);
      res.push_back({{"transition", i},
                     {"omega", w},
                     {"k_res", k},
                     {"k_res_closed_form", bogoliubov::closed_form_resonant_wavevector(w)},
                     {"g_closed", std::abs(coupling::interband(i, k, p, coupling::CouplingMode::closed))},
                     {"g_quadrature", std::abs(coupling::interband(
                                          i, k, p, coupling::CouplingMode::quadrature, &states))}});
    }
    s["resonant"] = res;
  }
  return s;
}

json run_susceptibility(const RunRequest& rq, io::OutputSet& out) {
  const auto& cfg = rq.config;
  const auto main = make_medium(cfg, cfg.params);
  const double g0 = main.rates.gamma0;

  std::vector<double> ratios = cfg.compare_coupling_ratios;
  std::vector<Medium> media;
  for (double r : ratios) media.push_back(make_medium(cfg, with_ratio(cfg.params, r)));

  const auto& controls = cfg.control_list;
  std::vector<bloch::ResponseSpectrum> spectra(media.size() * controls.size());
  parallel::for_each_index(spectra.size(), rq.threads, [&](std::size_t idx) {
    const auto& m = media[idx / controls.size()];
    spectra[idx] = bloch::susceptibility(m.model, main.sweep,
                                         controls[idx % controls.size()] * g0, cfg.delta_mode);
  });

  for (std::size_t a = 0; a < media.size(); ++a) {
    io::Table t;
    t.add("delta_p", "gamma0", scaled(main.sweep.grid(), 1.0 / g0));
    io::Plot plot{"Absorption, g12 = " + tag(ratios[a]) + " g11", "Delta_p [gamma0]", "Im chi",
                  {}, {}};
    for (std::size_t c = 0; c < controls.size(); ++c) {
      const auto& s = spectra[a * controls.size() + c];
      std::vector<double> re(s.chi.size()), im(s.chi.size());
      for (std::size_t i = 0; i < s.chi.size(); ++i) {
        re[i] = s.chi[i].real();
        im[i] = s.chi[i].imag();
      }
      t.add("re_chi_omega_c_" + tag(controls[c]), "", re);
      t.add("im_chi_omega_c_" + tag(controls[c]), "", im);
      plot.series.push_back({"Omega_c = " + tag(controls[c]) + " gamma0", t.columns[0].values, im});
    }
    out.csv("susceptibility_g12_" + tag(ratios[a]), t);
    out.svg("susceptibility_g12_" + tag(ratios[a]), plot);
  }

  json per_control = json::array();
  for (double c : controls) {
    const auto s = bloch::susceptibility(main.model, main.sweep, c * g0, cfg.delta_mode);
    per_control.push_back({{"omega_c_gamma0", c},
                           {"im_chi_at_resonance", s.chi[bloch::resonance_index(s)].imag()},
                           {"transparency_width_gamma0", width_json(bloch::transparency_width(s), g0)}});
  }
  const double at_omega = 10.0 * main.rates.gamma1;
  const auto at = bloch::susceptibility(main.model, main.sweep, at_omega, cfg.delta_mode);
  const auto peaks = bloch::absorption_peaks(at);
  const double omega_c = cfg.control_rabi * g0;
  const auto ref = bloch::susceptibility(main.model, main.sweep, omega_c, cfg.delta_mode);
  const auto kk = bloch::kramers_kronig_real(main.model, omega_c, ref.delta_p, cfg.delta_mode);
  std::vector<double> re;
  for (const auto& z : ref.chi) re.push_back(z.real());

  json s;
  s["gamma0"] = g0;
  s["gamma1"] = main.rates.gamma1;
  s["controls"] = per_control;
  s["dip_threshold_gamma0"] = bloch::dip_threshold(main.model, cfg.delta_mode) / g0;
  s["autler_townes"] = {{"omega_c", at_omega},
                        {"peaks_over_omega_c", scaled(peaks, 1.0 / at_omega)},
                        {"separation_over_omega_c",
                         peaks.size() >= 2 ? number((peaks.back() - peaks.front()) / at_omega)
                                           : json(nullptr)}};
  s["kramers_kronig_relative_rms"] = bloch::relative_rms(kk, re);
  return s;
}

json run_dispersion(const RunRequest& rq, io::OutputSet& out) {
  const auto& cfg = rq.config;
  const auto m = make_medium(cfg, cfg.params);
  const double omega_c = cfg.control_rabi * m.rates.gamma0;
  const auto d = bloch::dispersion_curve(m.model, m.sweep, omega_c, cfg.delta_mode);
  io::Table t;
  t.add("omega", "mu/hbar", d.omega).add("q_dressed", "1/xi", d.q_dressed).add("k_bare", "1/xi", d.k_bare);
  out.csv("dispersion", t);

  const double kmax = 2.0 * m.model.k_res;
  const auto ks = linspace(kmax / 400.0, kmax, 400);
  std::vector<double> eps(ks.size());
  for (std::size_t i = 0; i < ks.size(); ++i) eps[i] = bogoliubov::dispersion(ks[i]);
  io::Table tb;
  tb.add("k", "1/xi", ks).add("epsilon", "mu", eps);
  out.csv("bogoliubov", tb);
  out.svg("dispersion", {"Dressed probe branch", "q [1/xi]", "omega [mu/hbar]",
                         {{"dressed", d.q_dressed, d.omega}, {"bare", d.k_bare, d.omega, true}},
                         {}});
  json s;
  s["omega_c_gamma0"] = cfg.control_rabi;
  s["k_res"] = m.model.k_res;
  s["slope_ratio_at_resonance"] = d.slope_ratio_at_resonance;
  return s;
}

json run_groupvel(const RunRequest& rq, io::OutputSet& out) {
  const auto& cfg = rq.config;
  const auto m = make_medium(cfg, cfg.params);
  const double g0 = m.rates.gamma0;
  const double omega_c = cfg.control_rabi * g0;
  const auto s = bloch::group_velocity_curve(m.model, m.sweep, omega_c, cfg.delta_mode);
  const auto sum = bloch::summarize_group_velocity(s);
  std::vector<double> mask(s.masked.size());
  for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = s.masked[i] ? 1.0 : 0.0;
  const auto x = scaled(s.delta_p, 1.0 / g0);
  io::Table t;
  t.add("delta_p", "gamma0", x).add("vg_over_cs", "c_s", s.group_velocity).add("masked", "", mask);
  out.csv("groupvel", t);
  out.svg("groupvel", {"Group velocity", "Delta_p [gamma0]", "v_g / c_s",
                       {{"Omega_c = " + tag(cfg.control_rabi) + " gamma0", x, s.group_velocity}},
                       {}});
  const double cs = cfg.units.sound_speed_m_s;
  json j;
  j["omega_c_gamma0"] = cfg.control_rabi;
  j["min_vg_over_cs"] = sum.at_resonance;
  j["min_vg_m_s"] = sum.at_resonance * cs;
  j["off_resonance_window_minimum"] = sum.window_minimum;
  j["off_resonance_window_minimum_at_gamma0"] = sum.window_minimum_at / g0;
  j["masked_points"] = sum.masked_points;
  j["quoted_vg_over_cs"] = 0.06;
  j["quoted_pulse_regime_vg_m_s"] = 5.0e-6;
  j["sound_speed_m_s"] = cs;
  j["transparency_width_gamma0"] =
      width_json(bloch::transparency_width(bloch::susceptibility(m.model, m.sweep, omega_c,
                                                                 cfg.delta_mode)),
                 g0);
  return j;
}

json run_eigenstates(const RunRequest& rq, io::OutputSet& out) {
  const auto& cfg = rq.config;
  const auto& p = cfg.params;
  qutrit::require_spectrum(p);
  const auto res = gpe::imaginary_time_eigenstates(p, cfg.gpe_states, cfg.gpe);
  const auto& grid = res.front().state.grid;
  const auto sol = gpe::imprint_soliton(grid, p);
  const auto trial = qutrit::ImpurityStates::from_params(p);
  std::vector<double> x(grid.size()), dens(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    x[i] = grid.x(i);
    dens[i] = std::norm(sol.psi[i]) / p.depletion_number;
  }
  io::Table t;
  t.add("x", "xi", x).add("soliton_density", "n0", dens);
  io::Plot plot{"Soliton and impurity states", "x [xi]", "amplitude", {{"|psi|^2 / n0", x, dens}}, {}};
  double peak = 0.0;
  for (const auto& e : res) {
    for (const auto& z : e.state.psi) peak = std::max(peak, std::abs(z));
  }
  for (const auto& e : res) {
    const std::string n = std::to_string(e.n);
    std::vector<double> re(x.size()), im(x.size()), d(x.size()), an(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      re[i] = e.state.psi[i].real();
      im[i] = e.state.psi[i].imag();
      d[i] = std::norm(e.state.psi[i]);
      an[i] = e.n <= 2 ? trial(e.n, x[i]) : kNaN;
    }
    t.add("re_phi" + n, "xi^-1/2", re).add("im_phi" + n, "xi^-1/2", im);
    t.add("abs2_phi" + n, "1/xi", d).add("trial_phi" + n, "xi^-1/2", an);
    plot.series.push_back({"phi" + n, x, scaled(re, 1.0 / peak)});
  }
  t.add("plot_scale", "xi^-1/2", std::vector<double>(x.size(), peak));
  out.csv("eigenstates", t);
  out.svg("eigenstates", plot);

  // Soliton deformation against impurity load.
  const std::vector<double> loads{0.0, 0.005, 0.01, 0.02, 0.05};
  std::vector<std::optional<gpe::CoupledResult>> coupled(loads.size());
  parallel::for_each_index(loads.size(), rq.threads, [&](std::size_t i) {
    coupled[i] = gpe::coupled_ground_state(p, loads[i] * p.depletion_number, cfg.gpe);
  });
  std::vector<double> def(loads.size()), flag(loads.size());
  for (std::size_t i = 0; i < loads.size(); ++i) {
    def[i] = coupled[i]->deformation;
    flag[i] = coupled[i]->condensation ? 1.0 : 0.0;
  }
  io::Table td;
  td.add("impurity_norm", "n0 xi", loads).add("deformation", "", def).add("condensation", "", flag);
  out.csv("soliton_deformation", td);

  json s;
  s["nu"] = p.nu;
  json states = json::array();
  for (const auto& e : res) {
    states.push_back({{"n", e.n},
                      {"energy", e.energy},
                      {"analytic_energy", e.analytic_energy},
                      {"relative_error", number(std::abs(e.energy / e.analytic_energy - 1.0))},
                      {"overlap_trial_form", e.overlap_trial},
                      {"overlap_exact_state", e.overlap_exact},
                      {"residual", e.residual},
                      {"converged", e.converged},
                      {"steps", e.steps}});
  }
  s["states"] = states;
  s["deformation"] = json::array();
  for (std::size_t i = 0; i < loads.size(); ++i) {
    s["deformation"].push_back({{"impurity_norm_over_n0xi", loads[i]},
                                {"deformation", def[i]},
                                {"condensation", coupled[i]->condensation}});
  }
  return s;
}

json run_pulse(const RunRequest& rq, io::OutputSet& out) {
  const auto& cfg = rq.config;
  const auto m = make_medium(cfg, cfg.params);
  const double g0 = m.rates.gamma0;
  const double omega_c = cfg.control_rabi * g0;
  const auto width = bloch::transparency_width(
      bloch::susceptibility(m.model, m.sweep, omega_c, cfg.delta_mode));
  if (!std::holds_alternative<double>(width)) {
    throw DomainError("pulse: no transparency window (" +
                      std::get<bloch::NoTransparency>(width).reason + ")");
  }
  bloch::PulseConfig pc;
  pc.medium_length = cfg.pulse_medium_length;
  pc.bandwidth = cfg.pulse_bandwidth_fraction * std::get<double>(width);
  pc.points = cfg.pulse_points;
  pc.omega_c = omega_c;
  pc.mode = cfg.delta_mode;
  const auto r = bloch::propagate_envelope(m.model, pc);

  io::Table t;
  t.add("t", "hbar/mu", r.time).add("input", "Omega_p(0)", r.input).add("output", "Omega_p(0)", r.output);
  out.csv("pulse_time", t);
  io::Table tx;
  tx.add("t", "hbar/mu", r.time);
  for (std::size_t s = 0; s < r.profiles.size(); ++s) {
    tx.add("x_" + tag(r.snapshot_x[s]), "Omega_p(0)", r.profiles[s]);
  }
  out.csv("pulse_profiles", tx);
  out.svg("pulse", {"Probe envelope", "retarded time [hbar/mu]", "|Omega_p|",
                    {{"entrance", r.time, r.input}, {"exit", r.time, r.output}},
                    {}});
  const double cs = cfg.units.sound_speed_m_s;
  json s;
  s["bandwidth"] = pc.bandwidth;
  s["window_gamma0"] = std::get<double>(width) / g0;
  s["delay"] = r.delay;
  s["delay_s"] = r.delay * cfg.units.time_unit_s();
  s["measured_vg_over_cs"] = r.measured_group_velocity;
  s["analytic_vg_over_cs"] = r.analytic_group_velocity;
  s["measured_vg_m_s"] = r.measured_group_velocity * cs;
  s["transmitted_energy"] = r.transmitted_energy;
  s["bandwidth_warning"] = r.bandwidth_warning;
  return s;
}

// Cross-checks between the two coupling routes and against quoted values.
// Rows with "assert" status take part in the exit code; "report" rows only
// record a known discrepancy.
json cross_checks(const config::RunConfig& cfg, unsigned threads, bool& all_asserts) {
  const auto& p = cfg.params;
  const auto states = qutrit::ImpurityStates::from_params(p);
  json rows = json::array();
  auto row = [&](std::string name, std::string kind, bool ok, json measured, json reference) {
    if (kind == "assert" && !ok) all_asserts = false;
    rows.push_back({{"name", std::move(name)},
                    {"kind", std::move(kind)},
                    {"passed", ok},
                    {"measured", std::move(measured)},
                    {"reference", std::move(reference)}});
  };

  const auto& q = states.norm_quadrature();
  const auto& c = states.norm_closed();
  for (int j = 0; j < 3; ++j) {
    const double rel = std::abs(c[j] - q[j]) / q[j];
    row("norm_A" + std::to_string(j) + "_closed_vs_quadrature", "report", rel < 1e-6, number(c[j]),
        q[j]);
  }

  const auto ks = linspace(0.005, 4.0, 800);
  std::vector<coupling::CouplingSet> sets(ks.size());
  parallel::for_each_index(ks.size(), threads,
                           [&](std::size_t i) { sets[i] = coupling::coupling_set(ks[i], p, states); });
  auto peak_at = [&](auto member) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < sets.size(); ++i) {
      if (std::abs(sets[i].*member) > std::abs(sets[best].*member)) best = i;
    }
    return ks[best];
  };
  using CS = coupling::CouplingSet;
  const double p0c = peak_at(&CS::g0_closed), p0q = peak_at(&CS::g01_quadrature);
  const double p1c = peak_at(&CS::g1_closed), p1q = peak_at(&CS::g12_quadrature);
  row("g0_peak_k_closed_vs_quadrature", "assert", std::abs(p0c - p0q) <= 0.05, p0c, p0q);
  row("g1_peak_k_closed_vs_quadrature", "assert", std::abs(p1c - p1q) <= 0.05, p1c, p1q);

  // Largest intraband amplitude over the smaller interband one, k in [0.6, 1.1].
  double dom_closed = 0.0, dom_quad = 0.0;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (ks[i] < 0.6 - 1e-12 || ks[i] > 1.1 + 1e-12) continue;
    const auto& s = sets[i];
    const double intra = std::max({std::abs(s.g00_quadrature), std::abs(s.g11_quadrature),
                                   std::abs(s.g22_quadrature)});
    dom_closed = std::max(dom_closed, intra / std::min(std::abs(s.g0_closed), std::abs(s.g1_closed)));
    dom_quad = std::max(dom_quad, intra / std::min(std::abs(s.g01_quadrature),
                                                   std::abs(s.g12_quadrature)));
  }
  const bool closed_mode = cfg.coupling_mode == coupling::CouplingMode::closed;
  row("intraband_over_interband_closed", closed_mode ? "assert" : "report", dom_closed < 1.0,
      dom_closed, 1.0);
  row("intraband_over_interband_quadrature", closed_mode ? "report" : "assert", dom_quad < 1.0,
      dom_quad, 1.0);

  const auto spectrum = qutrit::spectrum(p);
  if (const auto* sp = std::get_if<qutrit::QutritSpectrum>(&spectrum)) {
    const double k0 = bogoliubov::resonant_wavevector(sp->omega0);
    row("k_res0_vs_quoted", "report", std::abs(k0 - 0.9) < 0.05, k0, 0.9);
  }
  const double nu_125 = params::nu_of_coupling(1.25, p.mass_ratio);
  row("nu_at_ratio_1.25_vs_quoted", "report", std::abs(nu_125 - 1.13) < 5e-3, nu_125, 1.13);
  return rows;
}

json run_validate(const RunRequest& rq, io::OutputSet& out, RunResult& result) {
  std::vector<double> id, pass, limit;
  json crit = json::array();
  bool all = true;
  for (int c = 1; c <= acceptance::kCriterionCount; ++c) {
    const auto r = acceptance::run_criterion(c, rq.threads);
    result.report_lines.push_back(acceptance::summary_line(r));
    id.push_back(c);
    pass.push_back(r.passed() ? 1.0 : 0.0);
    limit.push_back(r.limit_seconds);
    all = all && r.passed();
    auto j = r.to_json();
    j.erase("seconds");  // keep the document reproducible
    crit.push_back(j);
  }
  io::Table t;
  t.add("criterion", "", id).add("passed", "", pass).add("limit", "s", limit);
  out.csv("validation", t);

  bool checks_ok = true;
  const json checks = cross_checks(rq.config, rq.threads, checks_ok);
  for (const auto& r : checks) {
    char line[256];
    std::snprintf(line, sizeof line, "[%s] %s (%s): measured %s, reference %s",
                  r["passed"].get<bool>() ? "PASS" : "FAIL", r["name"].get<std::string>().c_str(),
                  r["kind"].get<std::string>().c_str(), r["measured"].dump().c_str(),
                  r["reference"].dump().c_str());
    result.report_lines.emplace_back(line);
  }
  if (!all || !checks_ok) result.exit_code = kExitValidation;
  json s;
  s["criteria"] = crit;
  s["cross_checks"] = checks;
  s["cross_checks_passed"] = checks_ok;
  s["all_passed"] = all;
  s["passed"] = std::count(pass.begin(), pass.end(), 1.0);
  return s;
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

const std::vector<std::string>& names() {
  static const std::vector<std::string> n{"spectrum",   "decay",      "couplings",
                                          "susceptibility", "dispersion", "groupvel",
                                          "eigenstates", "pulse",     "validate"};
  return n;
}

RunResult run(const RunRequest& rq) {
  const auto& all = names();
  if (std::find(all.begin(), all.end(), rq.scenario) == all.end()) {
    throw ConfigError("unknown scenario '" + rq.scenario + "'");
  }
  io::OutputSet out(rq.out_dir, rq.formats);
  RunResult result;
  json summary;
  if (rq.scenario == "spectrum") summary = run_spectrum(rq, out);
  else if (rq.scenario == "decay") summary = run_decay(rq, out);
  else if (rq.scenario == "couplings") summary = run_couplings(rq, out);
  else if (rq.scenario == "susceptibility") summary = run_susceptibility(rq, out);
  else if (rq.scenario == "dispersion") summary = run_dispersion(rq, out);
  else if (rq.scenario == "groupvel") summary = run_groupvel(rq, out);
  else if (rq.scenario == "eigenstates") summary = run_eigenstates(rq, out);
  else if (rq.scenario == "pulse") summary = run_pulse(rq, out);
  else summary = run_validate(rq, out, result);

  summary["scenario"] = rq.scenario;
  out.json(rq.scenario + "_summary", summary);

  json manifest;
  manifest["scenario"] = rq.scenario;
  manifest["version"] = SLOWSOUND_VERSION;
  manifest["created_utc"] = utc_timestamp();
  manifest["parameters"] = rq.config.to_json();
  manifest["config_path"] = rq.config_path;
  manifest["overrides"] = rq.overrides;
  manifest["formats"] = io::to_string(rq.formats);
  manifest["threads"] = rq.threads;
  manifest["exit_code"] = result.exit_code;
  manifest["files"] = out.files();
  out.json_always("manifest", manifest);
  out.commit();

  result.summary = std::move(summary);
  result.files = out.files();
  return result;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const ValidationError*>(&e)) {
    return kExitConfig;
  }
  return kExitNumerical;
}

json error_report(const std::exception& e) {
  json j;
  std::string type = "error";
  if (dynamic_cast<const ConfigError*>(&e)) type = "config_error";
  else if (const auto* v = dynamic_cast<const ValidationError*>(&e)) {
    type = "validation_error";
    j["failures"] = v->failures();
  } else if (const auto* c = dynamic_cast<const ConvergenceError*>(&e)) {
    type = "convergence_error";
    j["last_estimate"] = number(c->last_estimate());
  } else if (const auto* r = dynamic_cast<const ResolutionError*>(&e)) {
    type = "resolution_error";
    j["suggested"] = r->suggested();
  } else if (dynamic_cast<const DomainError*>(&e)) type = "domain_error";
  else if (dynamic_cast<const DivergenceError*>(&e)) type = "divergence_error";
  else if (dynamic_cast<const SingularMatrixError*>(&e)) type = "singular_matrix_error";
  else if (dynamic_cast<const BracketError*>(&e)) type = "bracket_error";
  else if (dynamic_cast<const ShapeError*>(&e)) type = "shape_error";
  j["error"] = type;
  j["message"] = e.what();
  j["exit_code"] = exit_code_for(e);
  return j;
}

}  // namespace slowsound::scenarios
