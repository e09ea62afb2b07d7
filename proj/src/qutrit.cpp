#include "slowsound/qutrit.hpp"

#include <cmath>
#include <stdexcept>

#include "slowsound/errors.hpp"
#include "slowsound/numerics.hpp"

namespace slowsound::qutrit {

using numerics::gamma_fn;
using numerics::hyp2f1;

int bound_state_count(double nu) {
  if (!(nu >= 0.0)) throw DomainError("bound_state_count: nu must be non-negative");
  int m = 1;
  while (nu * (2.0 * (m + 1) - 1.0) >= static_cast<double>(m) * m) ++m;
  return m;
}

int bound_state_count(std::int64_t num, std::int64_t den) {
  if (den <= 0) throw DomainError("bound_state_count: denominator must be positive");
  if (num < 0) throw DomainError("bound_state_count: nu must be non-negative");
  std::int64_t m = 1;
  while (num * (2 * (m + 1) - 1) >= m * m * den) ++m;
  return static_cast<int>(m);
}

bool is_qutrit(double nu) {
  if (!(nu >= 0.0)) throw DomainError("is_qutrit: nu must be non-negative");
  return bound_state_count(nu) == 3;
}

bool is_qutrit(std::int64_t num, std::int64_t den) {
  return bound_state_count(num, den) == 3;
}

SpectrumResult spectrum(const params::ReducedParams& p) {
  const int n_bound = bound_state_count(p.nu);
  if (n_bound != 3) return NotAQutrit{p.nu, n_bound};
  QutritSpectrum s;
  s.nu = p.nu;
  s.n_bound = n_bound;
  for (int n = 0; n < 3; ++n) {
    const double d = p.nu - n;
    s.energies[n] = -d * d / (2.0 * p.mass_ratio);
  }
  s.omega0 = (2.0 * p.nu - 1.0) / (2.0 * p.mass_ratio);
  s.omega1 = std::abs(2.0 * p.nu - 3.0) / (2.0 * p.mass_ratio);
  return s;
}

QutritSpectrum require_spectrum(const params::ReducedParams& p) {
  auto r = spectrum(p);
  if (auto* s = std::get_if<QutritSpectrum>(&r)) return *s;
  const auto& bad = std::get<NotAQutrit>(r);
  throw DomainError("not a qutrit: nu = " + std::to_string(bad.nu) + " gives " +
                    std::to_string(bad.n_bound) + " bound states");
}

double log_sech(double x) {
  const double ax = std::abs(x);
  return -ax - std::log1p(std::exp(-2.0 * ax)) + std::log(2.0);
}

std::array<double, 3> closed_form_norms(double a) {
  if (!(a > 0.0)) throw DomainError("closed_form_norms: exponent must be positive");
  const double sqrt_pi = std::sqrt(numerics::kPi);
  const double a0 = std::pow(sqrt_pi * gamma_fn(a) / gamma_fn(0.5 + a), -0.5);

  const double b1 = 2.0 * (1.0 + a);
  const double s1 = hyp2f1(a, b1, 1.0 + a, -1.0) / a -
                    hyp2f1(1.0 + a, b1, 2.0 + a, -1.0) / (1.0 + a) +
                    hyp2f1(2.0 + a, b1, 3.0 + a, -1.0) / (2.0 + a);
  const double a1 = std::pow(std::pow(2.0, 2.0 * (1.0 + a)) * a0 * a0 * s1, -0.5);

  const double b2 = 2.0 * (2.0 + a);
  const double f1 = hyp2f1(1.0 + a, b2, 2.0 + a, -1.0);
  const double f2 = hyp2f1(2.0 + a, b2, 3.0 + a, -1.0);
  const double f3 = hyp2f1(3.0 + a, b2, 4.0 + a, -1.0);
  const double f4 = hyp2f1(4.0 + a, b2, 5.0 + a, -1.0);
  const double a2sq = a * a;
  double s2 = 9.0 * a / (2.0 * (1.0 + a)) + 9.0 * a2sq / (4.0 * (1.0 + a)) +
              9.0 * a2sq * sqrt_pi * (6.0 + 5.0 * a + a2sq) * gamma_fn(a) /
                  (16.0 * gamma_fn(2.5 + a));
  s2 += 3.0 * std::pow(2.0, 2.0 * (1.0 + a)) * a * (2.0 + 3.0 * a) * f1 / (1.0 + a);
  s2 += std::pow(4.0, 2.0 + a) * f2 / (2.0 + a);
  s2 += 3.0 * std::pow(2.0, 2.0 * (2.0 + a)) * a * f2 / (2.0 + a);
  s2 += 27.0 * std::pow(4.0, 1.0 + a) * a2sq * f2 / (2.0 * (2.0 + a));
  s2 += 3.0 * std::pow(2.0, 3.0 + 2.0 * a) * a * f3 / (3.0 + a);
  s2 += 9.0 * std::pow(2.0, 2.0 * (1.0 + a)) * a2sq * f3 / (3.0 + a);
  s2 += 9.0 * std::pow(2.0, 2.0 * a) * a2sq * f4 / (4.0 + a);
  const double a2 = std::pow(2.0 * a0 * a0 * a1 * a1 * s2, -0.5);
  return {a0, a1, a2};
}

ImpurityStates::ImpurityStates(double exponent_alpha) : alpha_(exponent_alpha) {
  if (!(alpha_ > 0.0)) throw DomainError("ImpurityStates: exponent must be positive");
  const double a = alpha_;
  auto sech2a = [a](double x) { return std::exp(2.0 * a * log_sech(x)); };

  const double i0 = numerics::integrate_line(sech2a);
  a_quad_[0] = 1.0 / std::sqrt(i0);
  const double i1 = numerics::integrate_line([&](double x) {
    const double t = std::tanh(x);
    return t * t * sech2a(x);
  });
  a_quad_[1] = 1.0 / (2.0 * a_quad_[0] * std::sqrt(i1));
  const double i2 = numerics::integrate_line([&](double x) {
    const double t = std::tanh(x);
    const double poly = 1.0 - (1.0 + 3.0 * a) * t * t;
    return poly * poly * sech2a(x);
  });
  a_quad_[2] = 1.0 / (std::sqrt(2.0) * a_quad_[0] * std::sqrt(i2));

  try {
    a_closed_ = closed_form_norms(a);
  } catch (const Error&) {
    a_closed_ = {NAN, NAN, NAN};
  }

  raw_overlap_02_ =
      numerics::integrate_line([&](double x) { return (*this)(0, x) * raw2(x); });
  if (std::abs(raw_overlap_02_) > 1e-3) {
    gram_schmidt_ = true;
    phi2_scale_ = 1.0 / std::sqrt(1.0 - raw_overlap_02_ * raw_overlap_02_);
  }
}

ImpurityStates ImpurityStates::from_params(const params::ReducedParams& p) {
  return ImpurityStates(p.exponent_alpha);
}

double ImpurityStates::raw2(double x) const {
  const double t = std::tanh(x);
  const double phi0 = a_quad_[0] * std::exp(alpha_ * log_sech(x));
  return std::sqrt(2.0) * a_quad_[2] * (1.0 - (1.0 + 3.0 * alpha_) * t * t) * phi0;
}

double ImpurityStates::operator()(int l, double x) const {
  const double phi0 = a_quad_[0] * std::exp(alpha_ * log_sech(x));
  switch (l) {
    case 0:
      return phi0;
    case 1:
      return 2.0 * a_quad_[1] * std::tanh(x) * phi0;
    case 2:
      if (!gram_schmidt_) return raw2(x);
      return phi2_scale_ * (raw2(x) - raw_overlap_02_ * phi0);
    default:
      throw DomainError("ImpurityStates: state index must be 0, 1 or 2");
  }
}

double ImpurityStates::overlap(int l, int lp) const {
  return numerics::integrate_line([&](double x) { return (*this)(l, x) * (*this)(lp, x); });
}

}  // namespace slowsound::qutrit
