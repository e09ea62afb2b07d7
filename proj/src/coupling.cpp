#include "slowsound/coupling.hpp"

#include <cmath>
#include <string>

#include "slowsound/bogoliubov.hpp"
#include "slowsound/errors.hpp"
#include "slowsound/numerics.hpp"

namespace slowsound::coupling {

using numerics::kPi;

std::string_view to_string(CouplingMode m) {
  return m == CouplingMode::closed ? "closed" : "quadrature";
}

CouplingMode parse_coupling_mode(std::string_view s) {
  if (s == "closed") return CouplingMode::closed;
  if (s == "quadrature") return CouplingMode::quadrature;
  throw ConfigError("unknown coupling mode '" + std::string(s) + "' (closed|quadrature)");
}

namespace {

void require_positive(double k) {
  if (!(k > 0.0)) throw DomainError("coupling: k must be positive");
}

// k / sinh(k pi / 2) without overflow for large k.
double k_csch(double k) {
  const double y = 0.5 * kPi * k;
  if (y > 30.0) return 2.0 * k * std::exp(-y);
  return k / std::sinh(y);
}

}  // namespace

cplx g0_closed(double k, const params::ReducedParams& p) {
  require_positive(k);
  const double eps = bogoliubov::dispersion(k);
  const double k2 = k * k;
  const double pref = p.coupling_ratio * k / (80.0 * eps) *
                      std::sqrt(kPi / (6.0 * p.depletion_number));
  return {0.0, pref * (2.0 + 8.0 * k2 + 15.0 * eps) * (k2 - 4.0) * k_csch(k)};
}

cplx g1_closed(double k, const params::ReducedParams& p) {
  require_positive(k);
  const double eps = bogoliubov::dispersion(k);
  const double k2 = k * k;
  const double k4 = k2 * k2;
  const double pref = p.coupling_ratio * k / (896.0 * eps) *
                      std::sqrt(kPi / (15.0 * p.depletion_number));
  const double bracket = 28.0 * (2.0 * k4 - 35.0 * k2 + 68.0) * eps +
                         (29.0 * k4 * k2 - 504.0 * k4 + 896.0 * k2 + 64.0);
  return {0.0, pref * bracket * k_csch(k)};
}

cplx g_quadrature(int l, int lp, double k, const params::ReducedParams& p,
                  const qutrit::ImpurityStates& states) {
  require_positive(k);
  if (l < 0 || l > 2 || lp < 0 || lp > 2) {
    throw DomainError("g_quadrature: state indices must be 0, 1 or 2");
  }
  const bogoliubov::BogoliubovMode mode(k);
  // g12 sqrt(n0) in reduced units.
  const double pref = p.coupling_ratio / std::sqrt(p.depletion_number);
  const cplx integral = numerics::integrate_line_complex([&](double x) {
    return states(l, x) * states(lp, x) * std::tanh(x) * mode.u_plus_v(x);
  });
  return pref * integral;
}

cplx interband(int i, double k, const params::ReducedParams& p, CouplingMode mode,
               const qutrit::ImpurityStates* states) {
  if (i != 0 && i != 1) throw DomainError("interband: transition index must be 0 or 1");
  if (mode == CouplingMode::closed) return i == 0 ? g0_closed(k, p) : g1_closed(k, p);
  if (states == nullptr) throw DomainError("interband: quadrature mode needs impurity states");
  return g_quadrature(i, i + 1, k, p, *states);
}

CouplingSet coupling_set(double k, const params::ReducedParams& p,
                         const qutrit::ImpurityStates& states) {
  CouplingSet c;
  c.k = k;
  c.g0_closed = g0_closed(k, p);
  c.g1_closed = g1_closed(k, p);
  c.g01_quadrature = g_quadrature(0, 1, k, p, states);
  c.g12_quadrature = g_quadrature(1, 2, k, p, states);
  c.g00_quadrature = g_quadrature(0, 0, k, p, states);
  c.g11_quadrature = g_quadrature(1, 1, k, p, states);
  c.g22_quadrature = g_quadrature(2, 2, k, p, states);
  return c;
}

}  // namespace slowsound::coupling
