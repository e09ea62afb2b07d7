#include "slowsound/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>

#include "slowsound/bloch.hpp"
#include "slowsound/decay.hpp"
#include "slowsound/errors.hpp"
#include "slowsound/gpe.hpp"
#include "slowsound/io.hpp"
#include "slowsound/parallel.hpp"
#include "slowsound/params.hpp"
#include "slowsound/qutrit.hpp"

namespace slowsound::acceptance {

namespace {

std::string num(double v, const char* spec = "%.4g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

Check check(std::string name, bool ok, std::string detail) {
  return {std::move(name), ok, std::move(detail)};
}

// g12/g11 values strictly inside the qutrit window at the reference mass ratio.
std::vector<double> window_ratios(std::size_t n, double mass_ratio) {
  const double lo = params::coupling_of_nu(0.8, mass_ratio);
  const double hi = params::coupling_of_nu(9.0 / 7.0, mass_ratio);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = lo + (hi - lo) * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
  }
  return out;
}

params::ReducedParams at_ratio(double ratio) {
  const auto ref = params::reference_params();
  auto p = params::make_reduced(ref.mass_ratio, ratio, ref.soliton_concentration,
                                ref.depletion_number, ref.box_length);
  p.units = ref.units;
  return p;
}

void c1(CriterionResult& r, unsigned) {
  r.title = "qutrit window exactness";
  r.limit_seconds = 1.0;
  using qutrit::bound_state_count;
  r.checks.push_back(check("count(4/5) = 3", bound_state_count(4, 5) == 3,
                           "got " + std::to_string(bound_state_count(4, 5))));
  r.checks.push_back(check("count(9/7) = 4", bound_state_count(9, 7) == 4,
                           "got " + std::to_string(bound_state_count(9, 7))));
  // Just outside on the left: 4/5 - 1/10^6.
  r.checks.push_back(check("count(4/5 - 1e-6) = 2", bound_state_count(799999, 1000000) == 2,
                           "got " + std::to_string(bound_state_count(799999, 1000000))));
  // Interior points nu = 4/5 + (9/7 - 4/5) i / 101 = (2828 + 17 i) / 3535.
  int bad_exact = 0;
  int bad_double = 0;
  for (int i = 1; i <= 100; ++i) {
    const std::int64_t numr = 2828 + 17 * i;
    if (bound_state_count(numr, 3535) != 3) ++bad_exact;
    if (bound_state_count(static_cast<double>(numr) / 3535.0) != 3) ++bad_double;
  }
  r.checks.push_back(check("100 interior rationals give 3", bad_exact == 0,
                           std::to_string(bad_exact) + " failures"));
  r.checks.push_back(check("100 interior doubles give 3", bad_double == 0,
                           std::to_string(bad_double) + " failures"));
  r.values = {{"count_at_4_5", bound_state_count(4, 5)}, {"count_at_9_7", bound_state_count(9, 7)}};
}

void c2(CriterionResult& r, unsigned threads) {
  r.title = "RWA validity across the qutrit window";
  r.limit_seconds = 10.0;
  const auto ratios = window_ratios(50, 1.56);
  std::vector<decay::DecayRates> rates(ratios.size());
  parallel::for_each_index(ratios.size(), threads, [&](std::size_t i) {
    rates[i] = decay::compute_rates(at_ratio(ratios[i]));
  });
  double worst0 = 0.0;
  double worst1 = 0.0;
  for (const auto& x : rates) {
    worst0 = std::max(worst0, x.gamma0 / x.omega0);
    worst1 = std::max(worst1, x.gamma1 / x.omega1);
  }
  r.checks.push_back(check("max gamma0/omega0 < 0.1", worst0 < 0.1, num(worst0)));
  r.checks.push_back(check("max gamma1/omega1 < 0.1", worst1 < 0.1, num(worst1)));
  r.values = {{"sweep_points", ratios.size()},
              {"max_gamma0_over_omega0", worst0},
              {"max_gamma1_over_omega1", worst1}};
}

void c3(CriterionResult& r, unsigned threads) {
  r.title = "decay-rate route equivalence";
  r.limit_seconds = 10.0;
  const auto ratios = window_ratios(10, 1.56);
  std::vector<double> err(ratios.size());
  parallel::for_each_index(ratios.size(), threads, [&](std::size_t i) {
    const auto p = at_ratio(ratios[i]);
    const auto s = qutrit::require_spectrum(p);
    double e = 0.0;
    for (int which : {0, 1}) {
      const double w = which == 0 ? s.omega0 : s.omega1;
      const double a = decay::gamma_closed(p, w, which).value;
      const double b = decay::gamma_integral(p, w, which);
      e = std::max(e, std::abs(a - b) / std::abs(b));
    }
    err[i] = e;
  });
  const double worst = *std::max_element(err.begin(), err.end());
  r.checks.push_back(check("closed vs integral within 1e-3", worst < 1e-3,
                           "worst relative " + num(worst)));
  r.values = {{"sweep_points", ratios.size()}, {"max_relative_difference", worst}};
}

void c4(CriterionResult& r, unsigned) {
  r.title = "cascade unitarity";
  r.limit_seconds = 120.0;
  const auto p = params::reference_params();
  const auto rates = decay::compute_rates(p);
  decay::Cascade cascade(rates, decay::make_cascade_grid(p, rates));
  std::vector<double> times;
  for (double f : {0.5, 1.0, 3.0}) times.push_back(f / rates.gamma1);
  const auto ode = decay::cascade_ode_populations(cascade, times);
  double lo = 1e9;
  double hi = -1e9;
  double worst = 0.0;
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < times.size(); ++i) {
    const auto a = cascade.populations(times[i]);
    const auto& b = ode[i];
    lo = std::min(lo, a.total());
    hi = std::max(hi, a.total());
    worst = std::max({worst, std::abs(a.upper - b.upper), std::abs(a.one_phonon - b.one_phonon),
                      std::abs(a.two_phonon - b.two_phonon), std::abs(a.total() - b.total())});
    rows.push_back({{"t_gamma1", times[i] * rates.gamma1},
                    {"total", a.total()},
                    {"upper", a.upper},
                    {"one_phonon", a.one_phonon},
                    {"two_phonon", a.two_phonon},
                    {"ode_total", b.total()}});
  }
  r.checks.push_back(check("total in [0.98, 1.005]", lo >= 0.98 && hi <= 1.005,
                           "range [" + num(lo, "%.5f") + ", " + num(hi, "%.5f") + "]"));
  r.checks.push_back(check("ODE agreement within 0.02 pointwise", worst <= 0.02,
                           "worst " + num(worst)));
  r.values = {{"grid_points", cascade.grid().detuning_k.size()},
              {"snapshots", rows},
              {"max_ode_difference", worst}};
}

void c5(CriterionResult& r, unsigned) {
  r.title = "steady-state equivalence";
  r.limit_seconds = 30.0;
  const auto rates = decay::compute_rates(params::reference_params());
  const bloch::Rates rr{rates.gamma0, rates.gamma1};
  const double omega_c = 2.0 * rates.gamma0;
  double worst = 0.0;
  for (std::size_t i = 0; i < 200; ++i) {
    bloch::DriveConfig d;
    d.omega_c = omega_c;
    d.omega_p = 0.01 * omega_c;
    d.delta_p = rates.gamma0 * (-10.0 + 20.0 * static_cast<double>(i) / 199.0);
    const auto an = bloch::steady_state_analytic(d, rr);
    const auto ss = bloch::steady_state_lindblad(d, rr);
    worst = std::max({worst, std::abs(ss.rho(1, 0) - an.rho21) / std::abs(an.rho21),
                      std::abs(ss.rho(2, 0) - an.rho31) / std::abs(an.rho31)});
  }
  r.checks.push_back(check("coherences within 1% relative", worst < 0.01, "worst " + num(worst)));

  double worst_td = 0.0;
  for (double det : {-1.0, 0.0, 0.5}) {
    bloch::DriveConfig d;
    d.omega_c = omega_c;
    d.omega_p = 0.01 * omega_c;
    d.delta_p = det * rates.gamma0;
    const auto ss = bloch::steady_state_lindblad(d, rr);
    bloch::DensityMatrix3 rho0 = bloch::DensityMatrix3::Zero();
    rho0(0, 0) = 1.0;
    const auto rho = bloch::evolve_density(rho0, d, rr, 20.0 / rates.gamma0, 0.05 / rates.gamma0);
    worst_td = std::max(worst_td, bloch::trace_distance(rho, ss.rho));
  }
  r.checks.push_back(check("rho(20/gamma0) within 1e-4 trace distance", worst_td < 1e-4,
                           "worst " + num(worst_td)));
  r.values = {{"max_relative_coherence_error", worst}, {"max_trace_distance", worst_td}};
}

void c6(CriterionResult& r, unsigned) {
  r.title = "transparency phenomenology";
  r.limit_seconds = 30.0;
  const auto p = params::reference_params();
  const auto rates = decay::compute_rates(p);
  const auto m = bloch::SusceptibilityModel::from_params(p, rates);
  const double g0 = rates.gamma0;
  const double weak = m.chi(0.0, 0.2 * g0).imag();
  const double strong = m.chi(0.0, 2.0 * g0).imag();
  r.checks.push_back(check("Im chi(0) at 2 gamma0 below half of 0.2 gamma0", strong < 0.5 * weak,
                           "ratio " + num(strong / weak)));

  const double threshold = bloch::dip_threshold(m);
  const double below = bloch::dip_curvature(m, 0.5 * threshold);
  const double above = bloch::dip_curvature(m, 2.0 * threshold);
  r.checks.push_back(check("peak below threshold, dip above", below < 0.0 && above > 0.0,
                           "threshold " + num(threshold / g0) + " gamma0"));

  const double omega_c = 10.0 * rates.gamma1;
  const auto s = bloch::susceptibility(m, bloch::SweepSpec::around_resonance(g0), omega_c);
  const auto peaks = bloch::absorption_peaks(s);
  double separation = NAN;
  if (peaks.size() >= 2) separation = peaks.back() - peaks.front();
  const double rel = separation / omega_c;
  r.checks.push_back(check("Autler-Townes separation = Omega_c +- 10%",
                           peaks.size() == 2 && std::abs(rel - 1.0) <= 0.1,
                           std::to_string(peaks.size()) + " peaks, separation/Omega_c " +
                               num(rel)));
  r.values = {{"im_chi0_weak", weak},
              {"im_chi0_strong", strong},
              {"dip_threshold_gamma0", threshold / g0},
              {"autler_townes_separation_over_omega_c", io::number(rel)}};
}

void c7(CriterionResult& r, unsigned) {
  r.title = "slow-sound headline";
  r.limit_seconds = 60.0;
  const auto p = params::reference_params();
  const auto rates = decay::compute_rates(p);
  const auto m = bloch::SusceptibilityModel::from_params(p, rates);
  const auto s = bloch::group_velocity_curve(m, bloch::SweepSpec::around_resonance(rates.gamma0),
                                             2.0 * rates.gamma0);
  const auto sum = bloch::summarize_group_velocity(s);
  const double headline = sum.at_resonance;
  const double cs = p.units->sound_speed_m_s;
  r.checks.push_back(check("min v_g/c_s in [0.03, 0.12]", headline >= 0.03 && headline <= 0.12,
                           "computed " + num(headline) + " vs quoted 0.06"));
  r.values = {{"min_vg_over_cs", headline},
              {"quoted_vg_over_cs", 0.06},
              {"min_vg_m_s", headline * cs},
              {"quoted_pulse_regime_vg_m_s", 5.0e-6},
              {"off_resonance_window_minimum", sum.window_minimum},
              {"off_resonance_window_minimum_at_gamma0", sum.window_minimum_at / rates.gamma0},
              {"masked_points", sum.masked_points}};
}

void c8(CriterionResult& r, unsigned threads) {
  r.title = "envelope-propagation consistency";
  r.limit_seconds = 300.0;
  const auto p = params::reference_params();
  const auto rates = decay::compute_rates(p);
  const auto m = bloch::SusceptibilityModel::from_params(p, rates);
  const double omega_c = 2.0 * rates.gamma0;
  const auto s = bloch::susceptibility(m, bloch::SweepSpec::around_resonance(rates.gamma0), omega_c);
  const auto width = bloch::transparency_width(s);
  if (!std::holds_alternative<double>(width)) {
    r.checks.push_back(check("transparency window exists", false,
                             std::get<bloch::NoTransparency>(width).reason));
    return;
  }
  const double window = std::get<double>(width);
  const std::vector<double> divisors{10.0, 50.0};
  const std::vector<double> tolerances{0.10, 0.02};
  std::vector<bloch::PulseResult> res(divisors.size());
  parallel::for_each_index(divisors.size(), threads, [&](std::size_t i) {
    bloch::PulseConfig pc;
    pc.bandwidth = window / divisors[i];
    pc.omega_c = omega_c;
    pc.points = 8192;
    res[i] = bloch::propagate_envelope(m, pc);
  });
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < divisors.size(); ++i) {
    const double rel =
        std::abs(res[i].measured_group_velocity / res[i].analytic_group_velocity - 1.0);
    r.checks.push_back(check("bandwidth window/" + num(divisors[i], "%g") + " within " +
                                 num(100.0 * tolerances[i], "%g") + "%",
                             rel <= tolerances[i],
                             "measured " + num(res[i].measured_group_velocity) + " vs " +
                                 num(res[i].analytic_group_velocity)));
    rows.push_back({{"bandwidth_over_window", 1.0 / divisors[i]},
                    {"measured_vg_over_cs", res[i].measured_group_velocity},
                    {"analytic_vg_over_cs", res[i].analytic_group_velocity},
                    {"relative_difference", rel},
                    {"transmitted_energy", res[i].transmitted_energy}});
  }
  r.values = {{"window_gamma0", window / rates.gamma0}, {"pulses", rows}};
}

void c9(CriterionResult& r, unsigned threads) {
  r.title = "GPE oracle";
  r.limit_seconds = 300.0;
  const std::vector<double> nus{0.85, 0.95, 1.05, 1.15, 1.25};
  std::vector<std::vector<gpe::EigenResult>> res(nus.size());
  parallel::for_each_index(nus.size(), threads, [&](std::size_t i) {
    const auto p = at_ratio(params::coupling_of_nu(nus[i], 1.56));
    gpe::SolverOptions opt;
    opt.allow_partial = true;
    res[i] = gpe::imaginary_time_eigenstates(p, 3, opt);
  });
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < nus.size(); ++i) {
    for (const auto& e : res[i]) {
      const double rel = std::abs(e.energy - e.analytic_energy) / std::abs(e.analytic_energy);
      r.checks.push_back(check("nu " + num(nus[i], "%g") + " E_" + std::to_string(e.n) +
                                   " within 1e-3",
                               rel < 1e-3,
                               num(e.energy, "%.6f") + " vs " + num(e.analytic_energy, "%.6f")));
      if (e.n < 2) {
        r.checks.push_back(check("nu " + num(nus[i], "%g") + " overlap_" + std::to_string(e.n) +
                                     " >= 0.99",
                                 e.overlap_trial >= 0.99, num(e.overlap_trial)));
      }
      rows.push_back({{"nu", nus[i]},
                      {"n", e.n},
                      {"energy", e.energy},
                      {"analytic_energy", e.analytic_energy},
                      {"relative_error", io::number(rel)},
                      {"overlap_trial_form", e.overlap_trial},
                      {"overlap_exact_state", e.overlap_exact},
                      {"converged", e.converged}});
    }
  }
  r.values = {{"states", rows}};
}

void c10(CriterionResult& r, unsigned) {
  r.title = "Kramers-Kronig";
  r.limit_seconds = 30.0;
  const auto p = params::reference_params();
  const auto rates = decay::compute_rates(p);
  const auto m = bloch::SusceptibilityModel::from_params(p, rates);
  const double omega_c = 2.0 * rates.gamma0;
  const auto s = bloch::susceptibility(m, bloch::SweepSpec::around_resonance(rates.gamma0), omega_c);
  const auto kk = bloch::kramers_kronig_real(m, omega_c, s.delta_p);
  std::vector<double> re;
  for (const auto& c : s.chi) re.push_back(c.real());
  const double rms = bloch::relative_rms(kk, re);
  r.checks.push_back(check("relative RMS below 5%", rms < 0.05, num(rms)));
  r.values = {{"relative_rms", rms}, {"sweep_points", re.size()}};
}

}  // namespace

bool CriterionResult::passed() const {
  if (!error.empty() || checks.empty()) return false;
  if (seconds > limit_seconds) return false;
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

nlohmann::json CriterionResult::to_json() const {
  nlohmann::json j;
  j["id"] = id;
  j["title"] = title;
  j["passed"] = passed();
  j["seconds"] = seconds;
  j["limit_seconds"] = limit_seconds;
  j["values"] = values;
  if (!error.empty()) j["error"] = error;
  j["checks"] = nlohmann::json::array();
  for (const auto& c : checks) {
    j["checks"].push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  }
  return j;
}

CriterionResult run_criterion(int id, unsigned threads) {
  using Fn = void (*)(CriterionResult&, unsigned);
  static constexpr Fn table[kCriterionCount] = {c1, c2, c3, c4, c5, c6, c7, c8, c9, c10};
  if (id < 1 || id > kCriterionCount) throw DomainError("criterion id must be in 1..10");
  CriterionResult r;
  r.id = id;
  const auto start = std::chrono::steady_clock::now();
  try {
    table[id - 1](r, threads);
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::string summary_line(const CriterionResult& r) {
  std::string line = std::string(r.passed() ? "[PASS]" : "[FAIL]") + " C" + std::to_string(r.id) +
                     " " + r.title + " (" + num(r.seconds, "%.2f") + " s / " +
                     num(r.limit_seconds, "%g") + " s)";
  if (!r.error.empty()) return line + ": error: " + r.error;
  if (r.seconds > r.limit_seconds) line += ": over time budget";
  std::string sep = ": ";
  int shown = 0;
  for (const auto& c : r.checks) {
    // Keep the line short: failures first, at most four entries.
    if (c.passed) continue;
    if (shown++ == 4) break;
    line += sep + c.name + " [" + c.detail + "]";
    sep = "; ";
  }
  if (shown == 0) {
    for (const auto& c : r.checks) {
      if (shown++ == 3) break;
      line += sep + c.name + " [" + c.detail + "]";
      sep = "; ";
    }
  }
  return line;
}

}  // namespace slowsound::acceptance
